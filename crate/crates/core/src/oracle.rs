//! Exhaustive enumerations on small graphs.
//!
//! These share nothing with the recursions they check beyond the graph
//! construction itself: the Ising sums run over every spin assignment of the
//! internal nodes of the actual `Λ_2` / `Λ_3`, and degree laws run over every
//! subset of a node's slots.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::check_probability;
use crate::hierarchy::{build, GraphTopology};
use crate::ising::IsingParams;
use crate::motif::{get_motif, MotifId};
use crate::{Error, Result};

/// Spins on the external nodes `a, b, c` of `Λ_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BoundarySpins {
    pub a: i8,
    pub b: i8,
    pub c: i8,
}

impl BoundarySpins {
    pub fn new(a: i8, b: i8, c: i8) -> Option<Self> {
        let ok = |s: i8| s == 1 || s == -1;
        (ok(a) && ok(b) && ok(c)).then_some(BoundarySpins { a, b, c })
    }

    /// All eight boundary conditions.
    pub fn all() -> impl Iterator<Item = BoundarySpins> {
        (0..8u8).map(|bits| {
            let s = |i: u8| if bits >> i & 1 == 1 { -1 } else { 1 };
            BoundarySpins { a: s(2), b: s(1), c: s(0) }
        })
    }

    fn as_array(self) -> [i8; 3] {
        [self.a, self.b, self.c]
    }
}

/// Weighted bonds of the triangle graph `Λ_k` with fixed boundary, prepared
/// once for enumeration.
struct SpinSystem {
    nodes: usize,
    basic: Vec<(usize, usize)>,
    slots: Vec<(usize, usize)>,
    /// Ids of the corner copy of `Λ_1` (external node `a` and its two basic
    /// neighbours).
    corner: [usize; 3],
}

impl SpinSystem {
    fn triangle(k: u32) -> Result<Self> {
        if !(k == 2 || k == 3) {
            return Err(Error::UnsupportedLevel(k));
        }
        let g = build(get_motif(MotifId::M1), k)?;
        let basic: Vec<_> = g.basic_edges().iter().map(|&(u, v)| (u as usize, v as usize)).collect();
        let slots: Vec<_> =
            g.decoration_slots().iter().map(|s| (s.endpoints.0 as usize, s.endpoints.1 as usize)).collect();
        let mut corner_nbrs = basic.iter().filter_map(|&(u, v)| match (u, v) {
            (0, w) | (w, 0) => Some(w),
            _ => None,
        });
        let corner = [0, corner_nbrs.next().expect("corner neighbour"), corner_nbrs.next().expect("corner neighbour")];
        Ok(SpinSystem { nodes: g.node_count(), basic, slots, corner })
    }

    /// Calls `visit(spins, weight)` for every internal configuration.
    fn enumerate(&self, params: &IsingParams, boundary: BoundarySpins, mut visit: impl FnMut(&[i8], f64)) {
        let internal = self.nodes - 3;
        let mut spins = vec![1i8; self.nodes];
        spins[..3].copy_from_slice(&boundary.as_array());
        let (k, l, p) = (params.basic, params.decoration, params.p);
        // Each decoration is present independently, so its average factor is
        // p e^{L s} + 1 - p given the spins.
        let slot_factor = |s: i8| p * libm::exp(l * f64::from(s)) + 1.0 - p;
        for config in 0..(1u32 << internal) {
            for i in 0..internal {
                spins[3 + i] = if config >> i & 1 == 1 { -1 } else { 1 };
            }
            let energy: f64 = self.basic.iter().map(|&(u, v)| f64::from(spins[u] * spins[v])).sum();
            let mut weight = libm::exp(k * energy);
            for &(u, v) in &self.slots {
                weight *= slot_factor(spins[u] * spins[v]);
            }
            visit(&spins, weight);
        }
    }
}

/// Annealed partition function `Z_k(a, b, c)` of the triangle graph by
/// enumerating every internal spin configuration.
pub fn brute_force_partition(params: &IsingParams, k: u32, boundary: BoundarySpins) -> Result<f64> {
    let sys = SpinSystem::triangle(k)?;
    let mut z = 0.0;
    sys.enumerate(params, boundary, |_, w| z += w);
    Ok(z)
}

/// Annealed average `F_k(f | a, b, c)` of an observable of the corner
/// triangle, `f(σ_a, σ_u, σ_v)` with `u, v` the basic neighbours of `a`.
/// `f` must be symmetric in its last two arguments.
pub fn brute_force_f(
    params: &IsingParams,
    k: u32,
    f: impl Fn(i8, i8, i8) -> f64,
    boundary: BoundarySpins,
) -> Result<f64> {
    let sys = SpinSystem::triangle(k)?;
    let [a, u, v] = sys.corner;
    let (mut z, mut num) = (0.0, 0.0);
    sys.enumerate(params, boundary, |s, w| {
        z += w;
        num += w * f(s[a], s[u], s[v]);
    });
    Ok(num / z)
}

/// One step of the partition-function recursion with the disagreeing-boundary
/// line taken literally as `R⁻(A² + 4AB² + 3B³)`. Only used to show that this
/// form disagrees with enumeration.
pub fn ab_step_uncorrected(params: &IsingParams, a: f64, b: f64) -> (f64, f64) {
    let (rp, rm) = crate::ising::decoration_weights(params.decoration, params.p);
    (rp * (a * a * a + 3.0 * a * b * b + 4.0 * b * b * b), rm * (a * a + 4.0 * a * b * b + 3.0 * b * b * b))
}

pub const MAX_ENUMERATED_SLOTS: usize = 20;

/// Exact degree law of one node, as `pmf[n]`, by enumerating every subset of
/// its incident slots.
pub fn brute_force_degree_law(g: &GraphTopology, node: u32, p: f64) -> Result<Vec<f64>> {
    check_probability(p)?;
    if node as usize >= g.node_count() {
        return Err(Error::UnknownNode(node));
    }
    let basic = g.basic_edges().iter().filter(|&&(u, v)| u == node || v == node).count();
    let slots = g.decoration_slots().iter().filter(|s| s.endpoints.0 == node || s.endpoints.1 == node).count();
    if slots > MAX_ENUMERATED_SLOTS {
        return Err(Error::TooManySlots { node, slots, max: MAX_ENUMERATED_SLOTS });
    }
    let mut pmf = vec![0.0; basic + slots + 1];
    for subset in 0..(1u32 << slots) {
        let on = subset.count_ones() as usize;
        let mut prob = 1.0;
        for i in 0..slots {
            prob *= if subset >> i & 1 == 1 { p } else { 1.0 - p };
        }
        pmf[basic + on] += prob;
    }
    Ok(pmf)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat_weights_count_configurations() {
        let params = IsingParams::new(0.0, 0.0, 0.4).unwrap();
        for b in BoundarySpins::all() {
            assert!((brute_force_partition(&params, 2, b).unwrap() - 8.0).abs() < 1e-12);
            assert!((brute_force_partition(&params, 3, b).unwrap() - 4096.0).abs() < 1e-9);
        }
    }

    #[test]
    fn unsupported_levels() {
        let params = IsingParams::new(0.1, 0.1, 0.5).unwrap();
        let b = BoundarySpins::new(1, 1, 1).unwrap();
        assert_eq!(brute_force_partition(&params, 4, b), Err(Error::UnsupportedLevel(4)));
        assert_eq!(brute_force_partition(&params, 1, b), Err(Error::UnsupportedLevel(1)));
        assert!(BoundarySpins::new(0, 1, 1).is_none());
    }

    #[test]
    fn constant_observable_averages_to_one() {
        let params = IsingParams::new(0.4, -0.3, 0.6).unwrap();
        for b in BoundarySpins::all() {
            let f = brute_force_f(&params, 3, |_, _, _| 1.0, b).unwrap();
            assert!((f - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn flat_measure_average() {
        let params = IsingParams::new(0.0, 0.0, 0.5).unwrap();
        let f = |a: i8, b: i8, c: i8| 2.0 + f64::from(a) + 0.5 * f64::from(b * c);
        for bd in BoundarySpins::all() {
            let got = brute_force_f(&params, 2, f, bd).unwrap();
            let mut want = 0.0;
            for u in [-1, 1] {
                for v in [-1, 1] {
                    want += f(bd.a, u, v) / 4.0;
                }
            }
            assert!((got - want).abs() < 1e-14);
        }
    }

    #[test]
    fn degree_law_of_a_triangle_corner() {
        let g = build(get_motif(MotifId::M1), 2).unwrap();
        let p = 0.3;
        let pmf = brute_force_degree_law(&g, 0, p).unwrap();
        let want = [0.0, 0.0, 0.49, 0.42, 0.09];
        for (a, b) in pmf.iter().zip(want) {
            assert!((a - b).abs() < 1e-14);
        }
        // Glued nodes of Λ_2 carry no decorations.
        let glued = brute_force_degree_law(&g, 4, p).unwrap();
        assert_eq!(glued, vec![0.0, 0.0, 0.0, 0.0, 1.0]);
    }

    #[test]
    fn degree_law_slot_limit() {
        let g = build(get_motif(MotifId::M5), 9).unwrap();
        // External nodes of Λ_9 on the complete motif carry 3·8 = 24 slots.
        assert!(matches!(brute_force_degree_law(&g, 0, 0.5), Err(Error::TooManySlots { slots: 24, .. })));
    }
}
