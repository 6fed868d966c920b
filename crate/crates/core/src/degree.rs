//! Node-degree model of `Λ_k` with decorations present with probability `p`.
//!
//! A node picked uniformly from `Λ_k` belongs to a class fixed by the
//! construction (which external node it is, or at which level and from which
//! pair of motif nodes it was glued). Within a class the degree is a basic
//! part plus a `Binomial(slots, p)` number of active decorations, so the
//! degree law is a finite mixture of shifted binomials. [`DegreeMixture`] is
//! the single source of truth for moments and characteristic functions; the
//! closed forms in [`closed`] are kept separate and are only compared against
//! it.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::decoration::{ensemble_member, DecorationRealization};
use crate::error::check_probability;
use crate::hierarchy::GraphTopology;
use crate::motif::{MotifId, MotifSpec};
use crate::{Error, Result};

/// Which nodes of `Λ_k` a mixture component describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ComponentClass {
    External(u8),
    Internal { level: u32, pair: (u8, u8) },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MixtureComponent {
    pub weight: f64,
    pub base: u32,
    pub slots: u32,
    pub class: ComponentClass,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DegreeMixture {
    motif: MotifId,
    k: u32,
    p: f64,
    components: Vec<MixtureComponent>,
}

/// Mixture for `(motif, k, p)`.
///
/// External node `i` has weight `(2/(q^{k-1}+1))/q`, base degree `n⁰(i)` and
/// `n⁰(i)(k-1)` slots. A node glued from motif nodes `(i, j)` in level class
/// `l < k` has weight `(q-1)q^{-l}/(1+q^{1-k})` shared equally among the
/// `q(q-1)/2` pairs, base degree `n⁰(i)+n⁰(j)` and `base·(l-1)` slots.
pub fn mixture_model(motif: &MotifSpec, k: u32, p: f64) -> Result<DegreeMixture> {
    check_probability(p)?;
    if k == 0 {
        return Err(Error::InvalidLevel(k));
    }
    let q = motif.q();
    let qf = q as f64;
    let mut components = Vec::new();
    if k == 1 {
        for i in 0..q as u8 {
            components.push(MixtureComponent {
                weight: 1.0 / qf,
                base: motif.base_degree(i),
                slots: 0,
                class: ComponentClass::External(i),
            });
        }
    } else {
        let qk1 = libm::pow(qf, f64::from(k - 1));
        let external = 2.0 / (qk1 + 1.0) / qf;
        for i in 0..q as u8 {
            let base = motif.base_degree(i);
            components.push(MixtureComponent {
                weight: external,
                base,
                slots: base * (k - 1),
                class: ComponentClass::External(i),
            });
        }
        let pairs = (q * (q - 1) / 2) as f64;
        for level in 1..k {
            let level_weight = (qf - 1.0) * libm::pow(qf, -f64::from(level)) / (1.0 + 1.0 / qk1);
            for i in 0..q as u8 {
                for j in (i + 1)..q as u8 {
                    let base = motif.base_degree(i) + motif.base_degree(j);
                    components.push(MixtureComponent {
                        weight: level_weight / pairs,
                        base,
                        slots: base * (level - 1),
                        class: ComponentClass::Internal { level, pair: (i, j) },
                    });
                }
            }
        }
    }
    Ok(DegreeMixture { motif: motif.id(), k, p, components })
}

/// `C(n, m) p^m (1-p)^{n-m}`.
pub fn binomial_pmf(n: u32, m: u32, p: f64) -> f64 {
    if m > n {
        return 0.0;
    }
    if p == 0.0 {
        return if m == 0 { 1.0 } else { 0.0 };
    }
    if p == 1.0 {
        return if m == n { 1.0 } else { 0.0 };
    }
    let m_small = m.min(n - m);
    let mut c = 1.0;
    for i in 0..m_small {
        c = c * f64::from(n - i) / f64::from(i + 1);
    }
    c * libm::pow(p, f64::from(m)) * libm::pow(1.0 - p, f64::from(n - m))
}

impl DegreeMixture {
    pub fn motif(&self) -> MotifId {
        self.motif
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn components(&self) -> &[MixtureComponent] {
        &self.components
    }

    pub fn component(&self, class: ComponentClass) -> Option<&MixtureComponent> {
        self.components.iter().find(|c| c.class == class)
    }

    /// Components with equal `(base, slots)` merged, as `(weight, base, slots)`
    /// sorted by `(base, slots)`.
    pub fn collapsed(&self) -> Vec<(f64, u32, u32)> {
        let mut merged: BTreeMap<(u32, u32), f64> = BTreeMap::new();
        for c in &self.components {
            *merged.entry((c.base, c.slots)).or_insert(0.0) += c.weight;
        }
        merged.into_iter().map(|((b, s), w)| (w, b, s)).collect()
    }

    pub fn total_weight(&self) -> f64 {
        self.components.iter().map(|c| c.weight).sum()
    }

    /// Largest degree with positive probability.
    pub fn max_degree(&self) -> u32 {
        self.components.iter().map(|c| c.base + c.slots).max().unwrap_or(0)
    }

    pub fn pmf(&self, n: u32) -> f64 {
        self.components
            .iter()
            .filter(|c| n >= c.base)
            .fold(0.0, |acc, c| acc + c.weight * binomial_pmf(c.slots, n - c.base, self.p))
    }

    pub fn mean(&self) -> f64 {
        self.components.iter().map(|c| c.weight * (f64::from(c.base) + f64::from(c.slots) * self.p)).sum()
    }

    pub fn second_moment(&self) -> f64 {
        let p = self.p;
        self.components
            .iter()
            .map(|c| {
                let s = f64::from(c.slots);
                let m = f64::from(c.base) + s * p;
                c.weight * (m * m + s * p * (1.0 - p))
            })
            .sum()
    }

    /// Raw moment `E[n^order]` by summation over the support.
    pub fn moment(&self, order: i32) -> f64 {
        (0..=self.max_degree()).map(|n| libm::pow(f64::from(n), f64::from(order)) * self.pmf(n)).sum()
    }

    /// `φ_k(t) = Σ w e^{i t base} (p e^{it} + 1 - p)^{slots}`.
    pub fn char_fn(&self, t: f64) -> Complex64 {
        let z = decoration_factor(self.p, t);
        self.components
            .iter()
            .map(|c| Complex64::cis(t * f64::from(c.base)) * z.powu(c.slots) * c.weight)
            .sum()
    }
}

/// `p e^{it} + 1 - p`.
fn decoration_factor(p: f64, t: f64) -> Complex64 {
    Complex64::cis(t) * p + (1.0 - p)
}

pub fn mixture_pmf(m: &DegreeMixture, n: u32) -> f64 {
    m.pmf(n)
}

/// Characteristic function of the finite-`k` degree law.
pub fn char_fn_finite(motif: &MotifSpec, k: u32, p: f64, t: f64) -> Result<Complex64> {
    Ok(mixture_model(motif, k, p)?.char_fn(t))
}

/// Closed-form expressions transcribed independently of the mixture engine.
pub mod closed {
    use super::{decoration_factor, Complex64};
    use crate::motif::{MotifId, MotifSpec};

    /// Mean degree of `Λ_k`.
    pub fn mean_degree_closed(motif: &MotifSpec, k: u32, p: f64) -> f64 {
        let q = motif.q() as f64;
        let qk1 = libm::pow(q, f64::from(k - 1));
        match motif.id() {
            MotifId::M1 | MotifId::M5 => (qk1 * (2.0 * q - 2.0 + 2.0 * p) - 2.0 * p) / (qk1 + 1.0),
            MotifId::M2 | MotifId::M3 => 4.0 + 4.0 / 3.0 * (p - (3.0 + 2.0 * p) / (qk1 + 1.0)),
            MotifId::M4 => 5.0 + 5.0 / 3.0 * (p - (3.0 + 2.0 * p) / (qk1 + 1.0)),
        }
    }

    /// `2⟨|E_k|⟩/|V_k|` written out for a generic motif.
    pub fn mean_degree_generic(motif: &MotifSpec, k: u32, p: f64) -> f64 {
        let q = motif.q() as f64;
        let r = motif.r() as f64;
        let qk1 = libm::pow(q, f64::from(k - 1));
        4.0 * r / (q * (q - 1.0)) * (q - 1.0 + p - (q - 1.0 + 2.0 * p) / (qk1 + 1.0))
    }

    pub fn mean_degree_limit(motif: &MotifSpec, p: f64) -> f64 {
        match motif.id() {
            MotifId::M1 | MotifId::M5 => 2.0 * (motif.q() as f64 - 1.0) + 2.0 * p,
            MotifId::M2 | MotifId::M3 => 4.0 + 4.0 / 3.0 * p,
            MotifId::M4 => 5.0 + 5.0 / 3.0 * p,
        }
    }

    /// `lim_k E[n²]`.
    pub fn second_moment_limit(motif: &MotifSpec, p: f64) -> f64 {
        let p2 = p * p;
        match motif.id() {
            MotifId::M1 | MotifId::M5 => {
                let q = motif.q() as f64;
                4.0 * (q - 1.0) * (q - 1.0) + (8.0 * q - 6.0) * p + (4.0 * q + 2.0) * p2
            }
            MotifId::M3 => 16.0 + 12.0 * p + 68.0 / 9.0 * p2,
            MotifId::M2 => 50.0 / 3.0 + 112.0 / 9.0 * p + 214.0 / 27.0 * p2,
            MotifId::M4 => 76.0 / 3.0 + 167.0 / 9.0 * p + 335.0 / 27.0 * p2,
        }
    }

    /// Limiting characteristic function as `k → ∞`.
    pub fn char_fn_limit(motif: &MotifSpec, p: f64, t: f64) -> Complex64 {
        let z = decoration_factor(p, t);
        let e = |n: u32| Complex64::cis(f64::from(n) * t);
        let four_minus = |n: u32| Complex64::from(4.0) - z.powu(n);
        match motif.id() {
            MotifId::M1 | MotifId::M5 => {
                let q = motif.q() as u32;
                let m = 2 * (q - 1);
                e(m) * f64::from(q - 1) / (Complex64::from(f64::from(q)) - z.powu(m))
            }
            MotifId::M3 => e(4) * 3.0 / four_minus(4),
            MotifId::M2 => e(3) / four_minus(3) + e(4) / four_minus(4) + e(5) / four_minus(5),
            MotifId::M4 => e(4) / (four_minus(4) * 2.0) + e(5) * 2.0 / four_minus(5) + e(6) / (four_minus(6) * 2.0),
        }
    }

    /// Finite-`k` characteristic function of the square motif.
    pub fn char_fn_m3_finite(k: u32, p: f64, t: f64) -> Complex64 {
        let z = decoration_factor(p, t);
        let kk = k - 1;
        let four_k = libm::pow(4.0, f64::from(kk));
        let inv = 1.0 / four_k;
        let internal = Complex64::cis(4.0 * t) * 3.0 / (1.0 + inv) * (Complex64::from(1.0) - z.powu(4 * kk) * inv)
            / (Complex64::from(4.0) - z.powu(4));
        let external = Complex64::cis(2.0 * t) * 2.0 / (four_k + 1.0) * z.powu(2 * kk);
        internal + external
    }

    /// Finite-`k` characteristic function of the triangle-with-pendant motif.
    pub fn char_fn_m2_finite(k: u32, p: f64, t: f64) -> Complex64 {
        let z = decoration_factor(p, t);
        let kk = k - 1;
        let inv = libm::pow(4.0, -f64::from(kk));
        let term = |b: u32| {
            Complex64::cis(f64::from(b) * t) * (Complex64::from(1.0) - z.powu(b * kk) * inv)
                / (Complex64::from(4.0) - z.powu(b))
        };
        let internal = (term(3) + term(4) + term(5)) / (1.0 + inv);
        let external = (Complex64::cis(2.0 * t) * 2.0 * z.powu(2 * kk)
            + Complex64::cis(3.0 * t) * z.powu(3 * kk)
            + Complex64::cis(t) * z.powu(kk))
            * (2.0 / (libm::pow(4.0, f64::from(k)) + 4.0));
        internal + external
    }
}

pub use closed::{char_fn_limit, mean_degree_closed, second_moment_limit};

/// Degree counts of one realization.
#[derive(Clone, Debug, PartialEq)]
pub struct SampleDegreeStats {
    /// `counts[n]` nodes have degree `n`.
    pub counts: Vec<u64>,
    pub mean: f64,
}

pub fn realized_degrees(g: &GraphTopology, real: &DecorationRealization) -> Vec<u32> {
    let mut deg = vec![0u32; g.node_count()];
    for (u, v) in real.realized_edges(g) {
        deg[u as usize] += 1;
        deg[v as usize] += 1;
    }
    deg
}

pub fn sample_degree_stats(g: &GraphTopology, real: &DecorationRealization) -> SampleDegreeStats {
    let deg = realized_degrees(g, real);
    let max = deg.iter().copied().max().unwrap_or(0) as usize;
    let mut counts = vec![0u64; max + 1];
    let mut total = 0u64;
    for &d in &deg {
        counts[d as usize] += 1;
        total += u64::from(d);
    }
    SampleDegreeStats { counts, mean: total as f64 / deg.len() as f64 }
}

#[derive(Clone, Debug, PartialEq)]
pub struct HistogramRow {
    pub degree: u32,
    pub empirical: f64,
    pub model: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CharFnPoint {
    pub t: f64,
    pub empirical: Complex64,
    pub model: Complex64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FitReport {
    pub motif: MotifId,
    pub k: u32,
    pub p: f64,
    pub n_samples: u64,
    pub histogram: Vec<HistogramRow>,
    pub total_variation: f64,
    pub empirical_mean: f64,
    /// Standard error of the per-sample mean degree.
    pub mean_standard_error: f64,
    pub closed_mean: f64,
    pub char_fn: Vec<CharFnPoint>,
}

/// `t` values at which empirical and model characteristic functions are
/// compared.
pub const FIT_T_GRID: [f64; 8] = [0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0];

/// Aggregates per-sample statistics in the order given.
pub fn fit_from_samples<I>(g: &GraphTopology, p: f64, samples: I) -> Result<FitReport>
where
    I: IntoIterator<Item = SampleDegreeStats>,
{
    let motif = g.motif_spec();
    let mixture = mixture_model(motif, g.k(), p)?;
    let mut pooled: Vec<u64> = Vec::new();
    let mut means = Vec::new();
    for s in samples {
        if pooled.len() < s.counts.len() {
            pooled.resize(s.counts.len(), 0);
        }
        for (acc, c) in pooled.iter_mut().zip(&s.counts) {
            *acc += c;
        }
        means.push(s.mean);
    }
    if means.is_empty() {
        return Err(Error::InvalidSampleCount);
    }
    let n_samples = means.len() as u64;
    let total: u64 = pooled.iter().sum();
    let top = (pooled.len() as u32).max(mixture.max_degree() + 1);
    let mut histogram = Vec::with_capacity(top as usize);
    let mut tv = 0.0;
    for degree in 0..top {
        let empirical = pooled.get(degree as usize).map_or(0.0, |&c| c as f64 / total as f64);
        let model = mixture.pmf(degree);
        tv += (empirical - model).abs();
        histogram.push(HistogramRow { degree, empirical, model });
    }
    let empirical_mean = means.iter().sum::<f64>() / n_samples as f64;
    let mean_standard_error = if n_samples > 1 {
        let var = means.iter().map(|m| (m - empirical_mean) * (m - empirical_mean)).sum::<f64>() / (n_samples - 1) as f64;
        libm::sqrt(var / n_samples as f64)
    } else {
        0.0
    };
    let char_fn = FIT_T_GRID
        .iter()
        .map(|&t| {
            let empirical: Complex64 = pooled
                .iter()
                .enumerate()
                .map(|(n, &c)| Complex64::cis(t * n as f64) * (c as f64 / total as f64))
                .sum();
            CharFnPoint { t, empirical, model: mixture.char_fn(t) }
        })
        .collect();
    Ok(FitReport {
        motif: g.motif(),
        k: g.k(),
        p,
        n_samples,
        histogram,
        total_variation: 0.5 * tv,
        empirical_mean,
        mean_standard_error,
        closed_mean: mean_degree_closed(motif, g.k(), p),
        char_fn,
    })
}

/// Samples `n_samples` ensemble members and compares their pooled degree
/// histogram with the mixture model.
pub fn degree_fit(g: &GraphTopology, p: f64, n_samples: u64, seed: u64) -> Result<FitReport> {
    check_probability(p)?;
    if n_samples == 0 {
        return Err(Error::InvalidSampleCount);
    }
    let stats = (0..n_samples)
        .map(|i| ensemble_member(g, p, seed, i).map(|r| sample_degree_stats(g, &r)))
        .collect::<Result<Vec<_>>>()?;
    fit_from_samples(g, p, stats)
}
