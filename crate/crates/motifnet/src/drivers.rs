//! Parallel ensembles, sweeps and BFS. Work is split with rayon, but every
//! result is collected by index and reduced in index order, so outputs do
//! not depend on the number of worker threads.

use std::collections::BTreeMap;

use motifnet_core::decoration::ensemble_member;
use motifnet_core::degree::{fit_from_samples, sample_degree_stats, FitReport};
use motifnet_core::ising::{phase_point, IsingParams};
use motifnet_core::structure::{boundary_ratio_closed, per_level_clustering, Adjacency};
use motifnet_core::{build, DecorationRealization, Error as CoreError, GraphTopology, MotifSpec};
use rayon::prelude::*;

use crate::error::{CliError, Result};
use crate::schema::{PhaseRow, StructureRow};

/// Environment variable overriding the worker-thread count.
pub const THREADS_ENV: &str = "MOTIFNET_THREADS";

/// Thread count requested through [`THREADS_ENV`], if any.
pub fn threads_from_env() -> Result<Option<usize>> {
    match std::env::var(THREADS_ENV) {
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => Err(CliError::Validation(format!("{THREADS_ENV}: {e}"))),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(CliError::Validation(format!("{THREADS_ENV} must be a positive integer, got {v:?}"))),
        },
    }
}

pub fn thread_pool(threads: Option<usize>) -> Result<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        b = b.num_threads(n);
    }
    b.build().map_err(|e| CliError::Validation(format!("cannot start worker threads: {e}")))
}

fn check_samples(n: u64) -> Result<()> {
    if n == 0 {
        return Err(CoreError::InvalidSampleCount.into());
    }
    Ok(())
}

/// Members `0..n` of the ensemble, in index order.
pub fn ensemble_par(g: &GraphTopology, p: f64, seed: u64, n: u64) -> Result<Vec<DecorationRealization>> {
    check_samples(n)?;
    Ok((0..n).into_par_iter().map(|i| ensemble_member(g, p, seed, i)).collect::<std::result::Result<_, CoreError>>()?)
}

/// Same report as the sequential degree fit, with the per-sample degree
/// counts computed in parallel.
pub fn degree_fit_par(g: &GraphTopology, p: f64, n: u64, seed: u64) -> Result<FitReport> {
    check_samples(n)?;
    let stats: Vec<_> = (0..n)
        .into_par_iter()
        .map(|i| ensemble_member(g, p, seed, i).map(|r| sample_degree_stats(g, &r)))
        .collect::<std::result::Result<_, CoreError>>()?;
    Ok(fit_from_samples(g, p, stats)?)
}

/// Exact diameter with one BFS per source node run in parallel.
pub fn diameter_par(adj: &Adjacency) -> Option<u32> {
    let ecc: Vec<Option<u32>> = (0..adj.node_count() as u32).into_par_iter().map(|v| adj.eccentricity(v)).collect();
    ecc.into_iter().try_fold(0, |best, e| e.map(|e| best.max(e)))
}

pub fn clustering_par(adj: &Adjacency) -> f64 {
    let q: Vec<f64> = (0..adj.node_count() as u32).into_par_iter().map(|v| adj.local_clustering(v)).collect();
    q.iter().sum::<f64>() / q.len() as f64
}

/// Structure series for levels `1..=k_max`: mean clustering and the largest
/// diameter over `samples` ensemble members per level, plus the mean
/// per-level-class clustering at `k_max`.
pub fn structure_series(
    motif: &'static MotifSpec,
    k_max: u32,
    p: f64,
    samples: u64,
    seed: u64,
) -> Result<(Vec<StructureRow>, BTreeMap<u32, f64>)> {
    check_samples(samples)?;
    let mut rows = Vec::with_capacity(k_max as usize);
    let mut top_levels = BTreeMap::new();
    for k in 1..=k_max {
        let g = build(motif, k)?;
        let per_sample: Vec<(f64, u32, BTreeMap<u32, f64>)> = (0..samples)
            .into_par_iter()
            .map(|i| {
                let real = ensemble_member(&g, p, seed, i)?;
                let adj = Adjacency::realized(&g, &real);
                let diam = diameter_par(&adj).expect("realized graphs are connected");
                let levels = if k == k_max { per_level_clustering(&g, &adj) } else { BTreeMap::new() };
                Ok((clustering_par(&adj), diam, levels))
            })
            .collect::<std::result::Result<_, CoreError>>()?;
        let q_k = per_sample.iter().map(|s| s.0).sum::<f64>() / samples as f64;
        let diam = per_sample.iter().map(|s| s.1).max().unwrap_or(0);
        if k == k_max {
            for (_, _, levels) in &per_sample {
                for (&l, &q) in levels {
                    *top_levels.entry(l).or_insert(0.0) += q / samples as f64;
                }
            }
        }
        rows.push(StructureRow { k, q_k, diam, boundary_ratio: boundary_ratio_closed(motif, k) });
    }
    Ok((rows, top_levels))
}

/// One row per grid point, ordered by `L`, then `p`, then `K`.
pub fn phase_sweep(ls: &[f64], ps: &[f64], ks: &[f64]) -> Result<Vec<PhaseRow>> {
    let mut params = Vec::with_capacity(ls.len() * ps.len() * ks.len());
    for &l in ls {
        for &p in ps {
            for &k in ks {
                params.push(IsingParams::new(k, l, p)?);
            }
        }
    }
    Ok(params.par_iter().map(|pp| PhaseRow::from(&phase_point(pp))).collect())
}
