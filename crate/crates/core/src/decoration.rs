//! Sampling of decoration subsets.
//!
//! Every slot is switched on independently with probability `p`. The uniform
//! variate for slot `s` under seed `seed` is derived from a fixed 64-bit hash
//! of `(seed, s)`, so a realization does not depend on the order in which
//! slots or ensemble members are generated.
//!
//! The hash is the SplitMix64 output function applied to
//! `a + 0x9E3779B97F4A7C15 * (i + 1)` (wrapping arithmetic). It is fixed
//! and platform independent; changing it changes every published ensemble.

use bitvec::vec::BitVec;

use crate::error::check_probability;
use crate::hierarchy::GraphTopology;
use crate::motif::MotifId;
use crate::Result;

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;
const SLOT_DOMAIN: u64 = 0xD1B5_4A32_D192_ED03;

/// Fixed 64-bit mixing of a seed with an index.
pub fn mix(a: u64, i: u64) -> u64 {
    let mut z = a.wrapping_add(GOLDEN.wrapping_mul(i.wrapping_add(1)));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Uniform variate in `[0, 1)` attached to slot `slot` under `seed`.
fn slot_uniform(seed: u64, slot: u64) -> f64 {
    (mix(seed ^ SLOT_DOMAIN, slot) >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// One random graph of the ensemble: the basic bonds plus the active slots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecorationRealization {
    motif: MotifId,
    k: u32,
    p_bits: u64,
    seed: u64,
    active: BitVec,
}

impl DecorationRealization {
    /// Realization with every slot off (the bare graph).
    pub fn bare(g: &GraphTopology) -> Self {
        Self::constant(g, 0.0, false)
    }

    /// Realization with every slot on (the fully decorated graph).
    pub fn full(g: &GraphTopology) -> Self {
        Self::constant(g, 1.0, true)
    }

    fn constant(g: &GraphTopology, p: f64, on: bool) -> Self {
        DecorationRealization {
            motif: g.motif(),
            k: g.k(),
            p_bits: p.to_bits(),
            seed: 0,
            active: BitVec::repeat(on, g.decoration_slots().len()),
        }
    }

    pub fn p(&self) -> f64 {
        f64::from_bits(self.p_bits)
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// `(motif, k)` of the topology this realization was drawn on.
    pub fn graph_ref(&self) -> (MotifId, u32) {
        (self.motif, self.k)
    }

    pub fn is_active(&self, slot: usize) -> bool {
        self.active[slot]
    }

    pub fn active_count(&self) -> usize {
        self.active.count_ones()
    }

    pub fn active_slots(&self) -> impl Iterator<Item = usize> + '_ {
        self.active.iter_ones()
    }

    pub fn slot_count(&self) -> usize {
        self.active.len()
    }

    /// Whether this realization belongs to `g`.
    pub fn matches(&self, g: &GraphTopology) -> bool {
        self.motif == g.motif() && self.k == g.k() && self.active.len() == g.decoration_slots().len()
    }

    /// Realized bonds: all basic bonds followed by the active slots.
    pub fn realized_edges<'a>(&'a self, g: &'a GraphTopology) -> impl Iterator<Item = (u32, u32)> + 'a {
        debug_assert!(self.matches(g));
        g.basic_edges()
            .iter()
            .copied()
            .chain(self.active.iter_ones().map(move |s| g.decoration_slots()[s].endpoints))
    }
}

pub fn sample(g: &GraphTopology, p: f64, seed: u64) -> Result<DecorationRealization> {
    check_probability(p)?;
    let n = g.decoration_slots().len();
    let active: BitVec = (0..n as u64).map(|s| slot_uniform(seed, s) < p).collect();
    Ok(DecorationRealization { motif: g.motif(), k: g.k(), p_bits: p.to_bits(), seed, active })
}

/// Seed of member `index` of an ensemble with base seed `base_seed`.
pub fn member_seed(base_seed: u64, index: u64) -> u64 {
    mix(base_seed, index)
}

/// Member `index` of the ensemble, independent of any other member.
pub fn ensemble_member(g: &GraphTopology, p: f64, base_seed: u64, index: u64) -> Result<DecorationRealization> {
    sample(g, p, member_seed(base_seed, index))
}

/// Lazily generated ensemble of `n` realizations.
pub struct Ensemble<'a> {
    graph: &'a GraphTopology,
    p: f64,
    base_seed: u64,
    next: u64,
    n: u64,
}

impl Iterator for Ensemble<'_> {
    type Item = DecorationRealization;

    fn next(&mut self) -> Option<Self::Item> {
        if self.next == self.n {
            return None;
        }
        let seed = member_seed(self.base_seed, self.next);
        self.next += 1;
        // p was validated when the ensemble was created.
        sample(self.graph, self.p, seed).ok()
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.n - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for Ensemble<'_> {}

pub fn ensemble(g: &GraphTopology, p: f64, base_seed: u64, n: u64) -> Result<Ensemble<'_>> {
    check_probability(p)?;
    if n == 0 {
        return Err(crate::Error::InvalidSampleCount);
    }
    Ok(Ensemble { graph: g, p, base_seed, next: 0, n })
}
