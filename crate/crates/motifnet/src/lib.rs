//! Files, parallel drivers and the command-line front end for
//! [`motifnet_core`].
//!
//! * [`schema`] – JSON documents and CSV rows,
//! * [`output`] – rendering and atomic file writes,
//! * [`drivers`] – rayon-parallel ensembles, BFS and phase sweeps with
//!   results independent of the thread count,
//! * [`verify`] – the oracle suite behind `motifnet verify`,
//! * [`cli`] – argument parsing and dispatch.

pub mod cli;
pub mod drivers;
pub mod error;
pub mod output;
pub mod schema;
pub mod verify;

pub use crate::error::{CliError, Result};
