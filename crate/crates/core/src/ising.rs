//! Annealed Ising model on the triangle-motif graph at zero field.
//!
//! With boundary spins `(a, b, c)` on the external nodes of `Λ_k`, the
//! annealed partition function only depends on whether the three boundary
//! spins agree (`A_k`) or not (`B_k`). Their ratio `x_k = A_k/B_k` obeys the
//! one-dimensional map `x_{k+1} = t φ(x_k)`, and local averages of an
//! observable attached to the corner copy of `Λ_1` evolve through the
//! stochastic matrices `T(x_k)`. Whether the products of these matrices
//! forget their initial rows decides between the unordered and the ordered
//! state.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Mul;

use crate::error::check_probability;
use crate::{Error, Result};

/// Couplings of the basic bonds (`K`) and of the decorations (`L`), both
/// including the inverse temperature, and the decoration probability.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IsingParams {
    pub basic: f64,
    pub decoration: f64,
    pub p: f64,
}

impl IsingParams {
    pub fn new(basic: f64, decoration: f64, p: f64) -> Result<Self> {
        check_probability(p)?;
        if !basic.is_finite() {
            return Err(Error::Domain { what: "basic coupling", value: basic });
        }
        if !decoration.is_finite() {
            return Err(Error::Domain { what: "decoration coupling", value: decoration });
        }
        Ok(IsingParams { basic, decoration, p })
    }

    pub fn t(&self) -> f64 {
        t_param(self.decoration, self.p)
    }

    /// `x_1 = e^{4K}`.
    pub fn x1(&self) -> f64 {
        libm::exp(4.0 * self.basic)
    }
}

/// Upper end of the window `1 < t < 9/5` in which two fixed points exist.
pub const T_DEGENERATE: f64 = 9.0 / 5.0;

/// Absolute tolerance used to decide `x_1 = x*⁽²⁾` and `t = 9/5`.
pub const CRITICAL_TOLERANCE: f64 = 1e-12;

/// `x_k` above this value is treated as having escaped to `+∞`.
pub const DIVERGENCE_GUARD: f64 = 1e100;

/// Averaged decoration weights `(R⁺, R⁻)`:
/// `R⁺ = (p e^L + 1 - p)³`, `R⁻ = (p e^L + 1 - p)(p e^{-L} + 1 - p)²`.
pub fn decoration_weights(decoration: f64, p: f64) -> (f64, f64) {
    let up = p * libm::exp(decoration) + 1.0 - p;
    let down = p * libm::exp(-decoration) + 1.0 - p;
    (up * up * up, up * down * down)
}

/// `t = R⁺/R⁻ = ((p e^L + 1 - p)/(p e^{-L} + 1 - p))²`.
pub fn t_param(decoration: f64, p: f64) -> f64 {
    let ratio = (p * libm::exp(decoration) + 1.0 - p) / (p * libm::exp(-decoration) + 1.0 - p);
    ratio * ratio
}

/// `φ(x) = (x² - x + 4)/(x + 3)`.
pub fn phi(x: f64) -> Result<f64> {
    if x.is_nan() || x <= 0.0 {
        return Err(Error::Domain { what: "phi", value: x });
    }
    Ok((x * x - x + 4.0) / (x + 3.0))
}

/// `φ'(x) = 1 - (4/(x + 3))²`.
pub fn phi_prime(x: f64) -> f64 {
    let r = 4.0 / (x + 3.0);
    1.0 - r * r
}

/// Positive solutions of `x = t φ(x)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum FixedPointSet {
    /// `t <= 1`: one attracting fixed point.
    Single(f64),
    /// `1 < t < 9/5`: a stable and an unstable fixed point.
    Pair { stable: f64, unstable: f64 },
    /// `t = 9/5`: the two fixed points merge at `x = 3`.
    Degenerate(f64),
    /// `t > 9/5`: `t φ(x) > x` everywhere.
    Empty,
}

impl FixedPointSet {
    pub fn stable(&self) -> Option<f64> {
        match *self {
            FixedPointSet::Single(x) | FixedPointSet::Degenerate(x) => Some(x),
            FixedPointSet::Pair { stable, .. } => Some(stable),
            FixedPointSet::Empty => None,
        }
    }

    pub fn unstable(&self) -> Option<f64> {
        match *self {
            FixedPointSet::Degenerate(x) => Some(x),
            FixedPointSet::Pair { unstable, .. } => Some(unstable),
            _ => None,
        }
    }
}

fn discriminant(t: f64) -> f64 {
    9.0 + 22.0 * t - 15.0 * t * t
}

pub fn fixed_points(t: f64) -> Result<FixedPointSet> {
    if t.is_nan() || t <= 0.0 {
        return Err(Error::Domain { what: "fixed_points", value: t });
    }
    if (t - T_DEGENERATE).abs() <= CRITICAL_TOLERANCE {
        return Ok(FixedPointSet::Degenerate(3.0));
    }
    if t > T_DEGENERATE {
        return Ok(FixedPointSet::Empty);
    }
    let root = libm::sqrt(discriminant(t));
    // Smaller root of (t-1)x² - (3+t)x + 4t = 0 in a form without
    // cancellation at t = 1.
    let small = 8.0 * t / (3.0 + t + root);
    if t <= 1.0 {
        Ok(FixedPointSet::Single(small))
    } else {
        Ok(FixedPointSet::Pair { stable: small, unstable: (3.0 + t + root) / (2.0 * (t - 1.0)) })
    }
}

/// The sequence `x_1 = e^{4K}`, `x_{j+1} = t φ(x_j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct XSequence {
    /// Finite iterates `x_1, x_2, ...`; shorter than requested when the
    /// sequence escaped.
    pub values: Vec<f64>,
    /// Set once an iterate exceeded [`DIVERGENCE_GUARD`].
    pub diverged: bool,
}

impl XSequence {
    /// `x_k` (1-based), with `+∞` after divergence.
    pub fn get(&self, k: usize) -> f64 {
        match self.values.get(k - 1) {
            Some(&x) => x,
            None => f64::INFINITY,
        }
    }
}

pub fn iterate_x(params: &IsingParams, k_max: usize) -> XSequence {
    let t = params.t();
    let mut values = Vec::with_capacity(k_max);
    let mut x = params.x1();
    let mut diverged = false;
    for _ in 0..k_max {
        if !(x <= DIVERGENCE_GUARD) {
            diverged = true;
            break;
        }
        values.push(x);
        x = t * (x * x - x + 4.0) / (x + 3.0);
    }
    XSequence { values, diverged }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Matrix3(pub [[f64; 3]; 3]);

impl Matrix3 {
    pub const IDENTITY: Matrix3 = Matrix3([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]);

    pub fn row_sums(&self) -> [f64; 3] {
        self.0.map(|r| r[0] + r[1] + r[2])
    }

    pub fn apply(&self, v: [f64; 3]) -> [f64; 3] {
        self.0.map(|r| r[0] * v[0] + r[1] * v[1] + r[2] * v[2])
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.0[i][j]
    }
}

impl Mul for Matrix3 {
    type Output = Matrix3;

    fn mul(self, rhs: Matrix3) -> Matrix3 {
        let mut out = [[0.0; 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = (0..3).map(|l| self.0[i][l] * rhs.0[l][j]).sum();
            }
        }
        Matrix3(out)
    }
}

/// Transfer matrix `T(x)` carrying `Y_k` to `Y_{k+1}`.
pub fn transfer_matrix(x: f64) -> Result<Matrix3> {
    if x.is_nan() || x <= 0.0 {
        return Err(Error::Domain { what: "transfer_matrix", value: x });
    }
    if x.is_infinite() {
        return Ok(transfer_matrix_limit());
    }
    let d1 = x * x * x + 3.0 * x + 4.0;
    let d2 = x * x + 4.0 * x + 3.0;
    Ok(Matrix3([
        [x * (x * x + 1.0) / d1, 2.0 * (x + 1.0) / d1, 2.0 / d1],
        [x * (x + 1.0) / d2, 2.0 * (x + 1.0) / d2, (x + 1.0) / d2],
        [2.0 * x / d2, 2.0 * (x + 1.0) / d2, (x * x + 1.0) / d2],
    ]))
}

/// Entry-wise limit of `T(x)` as `x → ∞`.
pub fn transfer_matrix_limit() -> Matrix3 {
    Matrix3([[1.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]])
}

/// `T₂₃(x) + T₃₂(x) = 3/(x + 3)`.
pub fn off_diagonal_flow(x: f64) -> f64 {
    3.0 / (x + 3.0)
}

/// Dobrushin ergodicity coefficient: the largest half-L¹ distance between
/// two rows.
pub fn dobrushin(m: &Matrix3) -> Result<f64> {
    for (row, sum) in m.row_sums().into_iter().enumerate() {
        if !((sum - 1.0).abs() <= 1e-9) {
            return Err(Error::MalformedMatrix { row, sum });
        }
    }
    let mut worst: f64 = 0.0;
    for i in 0..3 {
        for j in (i + 1)..3 {
            let d: f64 = (0..3).map(|l| (m.0[i][l] - m.0[j][l]).abs()).sum();
            worst = worst.max(0.5 * d);
        }
    }
    Ok(worst)
}

/// `max_i Y^i - min_i Y^i`.
pub fn vector_diameter(y: &[f64; 3]) -> f64 {
    let max = y[0].max(y[1]).max(y[2]);
    let min = y[0].min(y[1]).min(y[2]);
    max - min
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PhaseLabel {
    Unordered,
    Ordered,
    Critical,
}

impl PhaseLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            PhaseLabel::Unordered => "unordered",
            PhaseLabel::Ordered => "ordered",
            PhaseLabel::Critical => "critical",
        }
    }
}

impl fmt::Display for PhaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct IsingTrajectory {
    pub params: IsingParams,
    /// `x_1 ..= x_{k_max}`, `+∞` after divergence.
    pub x: Vec<f64>,
    /// `Y_1 ..= Y_{k_max+1}`.
    pub y: Vec<[f64; 3]>,
    /// `S_{k_max} = T(x_{k_max}) ··· T(x_1)`.
    pub s: Matrix3,
    /// `D(S_1) ..= D(S_{k_max})`.
    pub dobrushin_s: Vec<f64>,
    /// `d(Y_1) ..= d(Y_{k_max+1})`.
    pub diameter_y: Vec<f64>,
    pub verdict: PhaseLabel,
}

pub fn evolve_y(params: &IsingParams, y1: [f64; 3], k_max: usize) -> Result<IsingTrajectory> {
    if let Some(&bad) = y1.iter().find(|v| !(**v > 0.0)) {
        return Err(Error::Domain { what: "evolve_y initial vector", value: bad });
    }
    let xs = iterate_x(params, k_max);
    let mut x = Vec::with_capacity(k_max);
    let mut y = Vec::with_capacity(k_max + 1);
    let mut dobrushin_s = Vec::with_capacity(k_max);
    let mut diameter_y = Vec::with_capacity(k_max + 1);
    let mut s = Matrix3::IDENTITY;
    let mut current = y1;
    y.push(current);
    diameter_y.push(vector_diameter(&current));
    for k in 1..=k_max {
        let xk = xs.get(k);
        let tk = transfer_matrix(xk)?;
        s = tk * s;
        current = tk.apply(current);
        x.push(xk);
        dobrushin_s.push(dobrushin(&s)?);
        y.push(current);
        diameter_y.push(vector_diameter(&current));
    }
    Ok(IsingTrajectory { params: *params, x, y, s, dobrushin_s, diameter_y, verdict: classify_phase(params) })
}

/// `ln A_k` and `ln B_k`, with the ratio carried separately.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogAB {
    pub log_b: f64,
    /// `ln(A_k/B_k)`.
    pub log_ratio: f64,
}

impl LogAB {
    pub fn log_a(&self) -> f64 {
        self.log_b + self.log_ratio
    }
}

/// `ln Σ_i c_i x^i` for `x > 0` given `ln x`, without overflow for large `x`.
fn ln_poly(coeffs: &[f64], log_x: f64) -> f64 {
    let deg = (coeffs.len() - 1) as f64;
    if log_x > 0.0 {
        let scaled: f64 = coeffs.iter().enumerate().map(|(i, c)| c * libm::exp((i as f64 - deg) * log_x)).sum();
        deg * log_x + libm::log(scaled)
    } else {
        let x = libm::exp(log_x);
        let mut acc = 0.0;
        for c in coeffs.iter().rev() {
            acc = acc * x + c;
        }
        libm::log(acc)
    }
}

/// Partition-function recursion
/// `A_{k+1} = R⁺(A³ + 3AB² + 4B³)`, `B_{k+1} = R⁻(A²B + 4AB² + 3B³)` from
/// `A_1 = e^{3K}`, `B_1 = e^{-K}`, in log form. Entry `k-1` holds level `k`.
pub fn recursion_ab(params: &IsingParams, k_max: usize) -> Vec<LogAB> {
    let (r_plus, r_minus) = decoration_weights(params.decoration, params.p);
    let (ln_rp, ln_rm) = (libm::log(r_plus), libm::log(r_minus));
    let mut out = Vec::with_capacity(k_max);
    let mut cur = LogAB { log_b: -params.basic, log_ratio: 4.0 * params.basic };
    for _ in 0..k_max {
        out.push(cur);
        // Divide both sums by B³: A³+3AB²+4B³ → x³+3x+4, A²B+4AB²+3B³ → x²+4x+3.
        let ln_a_sum = ln_poly(&[4.0, 3.0, 0.0, 1.0], cur.log_ratio);
        let ln_b_sum = ln_poly(&[3.0, 4.0, 1.0], cur.log_ratio);
        let log_b = ln_rm + 3.0 * cur.log_b + ln_b_sum;
        let log_ratio = (ln_rp + ln_a_sum) - (ln_rm + ln_b_sum);
        cur = LogAB { log_b, log_ratio };
    }
    out
}

/// `K*` with `e^{4K*} = x*⁽²⁾`, defined for `1 < t ≤ 9/5`.
pub fn critical_k(decoration: f64, p: f64) -> Option<f64> {
    let t = t_param(decoration, p);
    if t <= 1.0 {
        return None;
    }
    match fixed_points(t).ok()? {
        FixedPointSet::Pair { unstable, .. } | FixedPointSet::Degenerate(unstable) => Some(libm::log(unstable) / 4.0),
        _ => None,
    }
}

pub fn classify_phase(params: &IsingParams) -> PhaseLabel {
    let t = params.t();
    if t <= 1.0 {
        return PhaseLabel::Unordered;
    }
    let threshold = match fixed_points(t) {
        Ok(FixedPointSet::Pair { unstable, .. }) | Ok(FixedPointSet::Degenerate(unstable)) => unstable,
        _ => return PhaseLabel::Ordered,
    };
    let x1 = params.x1();
    if (x1 - threshold).abs() <= CRITICAL_TOLERANCE {
        PhaseLabel::Critical
    } else if x1 < threshold {
        PhaseLabel::Unordered
    } else {
        PhaseLabel::Ordered
    }
}

/// Everything needed to place a parameter point on the phase diagram.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhasePoint {
    pub params: IsingParams,
    pub t: f64,
    pub x1: f64,
    pub x_star1: Option<f64>,
    pub x_star2: Option<f64>,
    pub k_star: Option<f64>,
    pub verdict: PhaseLabel,
}

pub fn phase_point(params: &IsingParams) -> PhasePoint {
    let t = params.t();
    let fp = fixed_points(t).unwrap_or(FixedPointSet::Empty);
    PhasePoint {
        params: *params,
        t,
        x1: params.x1(),
        x_star1: fp.stable(),
        x_star2: fp.unstable(),
        k_star: critical_k(params.decoration, params.p),
        verdict: classify_phase(params),
    }
}

/// `L* = ¼ ln(9/5)`, the decoration coupling above which `t` can exceed 9/5.
pub fn critical_decoration_coupling() -> f64 {
    0.25 * libm::log(9.0 / 5.0)
}

/// `ψ(L) = (3-√5)/(√5 e^L - 3e^{-L} + 3 - √5)`: for `L ≥ L*`, `t < 9/5`
/// exactly when `p < ψ(L)`. Fails when the value would not be a
/// probability, i.e. below `L*`.
pub fn psi(decoration: f64) -> Result<f64> {
    let s5 = libm::sqrt(5.0);
    let denom = s5 * libm::exp(decoration) - 3.0 * libm::exp(-decoration) + 3.0 - s5;
    let value = (3.0 - s5) / denom;
    if !(denom > 0.0) || value > 1.0 + 1e-12 {
        return Err(Error::Domain { what: "psi exceeds one", value: decoration });
    }
    Ok(value.min(1.0))
}

/// `(L*, ψ)`.
pub fn critical_curves() -> (f64, fn(f64) -> Result<f64>) {
    (critical_decoration_coupling(), psi)
}

/// Partial sums of `3/(x_k + 3)` along the trajectory.
pub fn flow_partial_sums(xs: &[f64]) -> Vec<f64> {
    let mut acc = 0.0;
    xs.iter()
        .map(|&x| {
            acc += if x.is_infinite() { 0.0 } else { off_diagonal_flow(x) };
            acc
        })
        .collect()
}

/// Verdict recomputed from an actual run of the Y recursion: ordered when
/// the spread of `Y` does not shrink below `tolerance`.
pub fn empirical_verdict(traj: &IsingTrajectory, tolerance: f64) -> PhaseLabel {
    match traj.diameter_y.last() {
        Some(&d) if d > tolerance => PhaseLabel::Ordered,
        _ => PhaseLabel::Unordered,
    }
}

/// Uniform grid `min, min + step, ...` up to `max` inclusive (with a small
/// tolerance on the last point).
pub fn grid(min: f64, max: f64, step: f64) -> Vec<f64> {
    if !(step > 0.0) || max < min {
        return vec![min];
    }
    let n = libm::floor((max - min) / step + 1e-9) as usize;
    (0..=n).map(|i| min + step * i as f64).collect()
}
