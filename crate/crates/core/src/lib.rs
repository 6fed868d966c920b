//! Hierarchical random graphs grown from small network motifs.
//!
//! A graph `Λ_k` is built by gluing `q` copies of `Λ_{k-1}` along their
//! external nodes; the bonds joining the external nodes of every
//! sub-construction are *decorations* that are present independently with
//! probability `p`. This crate provides:
//!
//! * [`motif`] – the five generating motifs,
//! * [`hierarchy`] – deterministic construction of the underlying graph,
//! * [`decoration`] – counter-based sampling of decoration subsets,
//! * [`degree`] – the binomial-mixture degree model and its characteristic
//!   functions,
//! * [`structure`] – clustering, diameters and boundary ratios,
//! * [`ising`] – the annealed Ising recursion on the triangle-motif graph,
//! * [`oracle`] – brute-force enumerations used to check all of the above.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod decoration;
pub mod degree;
mod error;
pub mod hierarchy;
pub mod ising;
pub mod motif;
pub mod oracle;
pub mod structure;

pub use crate::decoration::{ensemble, mix, sample, DecorationRealization, Ensemble};
pub use crate::error::Error;
pub use crate::hierarchy::{build, build_with, BuildOptions, GraphTopology, NodeOrigin, NodeRecord, SlotRecord};
pub use crate::motif::{get_motif, MotifId, MotifSpec};

pub type Result<T> = core::result::Result<T, Error>;
