//! Rendering documents and writing them atomically.

use std::io::Write;
use std::path::Path;

use serde::Serialize;
use tempfile::NamedTempFile;

use crate::error::Result;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

pub fn json_bytes<T: Serialize>(doc: &T) -> Result<Vec<u8>> {
    let mut out = serde_json::to_vec_pretty(doc)?;
    out.push(b'\n');
    Ok(out)
}

/// CSV with a header row taken from the row type's field names. An empty
/// table still gets its header.
pub fn csv_bytes<T: Serialize>(rows: &[T], header: &[&str]) -> Result<Vec<u8>> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.serialize(row)?;
    }
    w.into_inner().map_err(|e| e.into_error().into())
}

/// Writes `bytes` to `path` through a temporary file in the same directory,
/// so readers never observe a partial file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

/// Sends `bytes` to `out`, or to stdout when no path is given.
pub fn emit(out: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match out {
        Some(path) => write_atomic(path, bytes),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(bytes)?;
            stdout.flush()?;
            Ok(())
        }
    }
}

pub const DEGREE_HEADER: &[&str] = &["degree", "empirical_prob", "model_prob"];
pub const STRUCTURE_HEADER: &[&str] = &["k", "Q_k", "diam", "boundary_ratio"];
pub const PHASE_HEADER: &[&str] = &["L", "p", "K", "t", "x1", "x_star1", "x_star2", "K_star", "verdict"];
pub const EDGE_HEADER: &[&str] = &["u", "v", "kind"];
pub const TRAJECTORY_HEADER: &[&str] = &["k", "x", "dobrushin_S", "diameter_Y"];
pub const CHECK_HEADER: &[&str] = &["check", "passed", "detail"];
