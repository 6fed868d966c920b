//! The `verify` suite: every oracle comparison the library relies on, as a
//! deterministic pass/fail table.

use motifnet_core::decoration::DecorationRealization;
use motifnet_core::degree::closed::{char_fn_m2_finite, char_fn_m3_finite, mean_degree_closed};
use motifnet_core::degree::{binomial_pmf, mixture_model, ComponentClass};
use motifnet_core::hierarchy::{
    basic_edge_count_closed, level_partition, level_size_closed, node_count_closed, slot_count_closed,
};
use motifnet_core::ising::{
    evolve_y, fixed_points, iterate_x, phi_prime, recursion_ab, FixedPointSet, IsingParams,
};
use motifnet_core::oracle::{ab_step_uncorrected, brute_force_degree_law, brute_force_f, brute_force_partition, BoundarySpins};
use motifnet_core::structure::{clustering_m1_bare_closed, clustering_m1_decorated_exact, Adjacency};
use motifnet_core::{build, get_motif, mix, MotifId, NodeOrigin};
use rayon::prelude::*;

use crate::drivers::{clustering_par, diameter_par};
use crate::schema::{CheckRow, VerifyDoc, SCHEMA_VERSION};

const PLUS: BoundarySpins = BoundarySpins { a: 1, b: 1, c: 1 };
const MIXED: BoundarySpins = BoundarySpins { a: 1, b: 1, c: -1 };
const SPLIT: BoundarySpins = BoundarySpins { a: 1, b: -1, c: -1 };

/// Fixed parameter draws with `K, L ∈ [-1.5, 1.5]` and `p` cycling through
/// `{0, 0.3, 0.7, 1}`.
pub fn oracle_draws(n: usize) -> Vec<IsingParams> {
    const PS: [f64; 4] = [0.0, 0.3, 0.7, 1.0];
    (0..n)
        .map(|i| {
            let u = mix(0x5EED_0A11, i as u64);
            let unit = |shift: u32| ((u >> shift) & 0xFFFF_FFFF) as f64 / u32::MAX as f64;
            IsingParams::new(-1.5 + 3.0 * unit(0), -1.5 + 3.0 * unit(32), PS[i % 4]).expect("valid draw")
        })
        .collect()
}

fn rel_err(got: f64, want: f64) -> f64 {
    (got - want).abs() / want.abs()
}

fn row(check: &str, passed: bool, detail: String) -> CheckRow {
    CheckRow { check: check.to_string(), passed, detail }
}

fn counts() -> CheckRow {
    let mut bad = Vec::new();
    for id in MotifId::ALL {
        let m = get_motif(id);
        let k_max = if m.q() == 3 { 10 } else { 8 };
        for k in 1..=k_max {
            let g = match build(m, k) {
                Ok(g) => g,
                Err(e) => {
                    bad.push(format!("{id} k={k}: {e}"));
                    continue;
                }
            };
            let ok = Some(g.node_count() as u128) == node_count_closed(m.q(), k)
                && g.basic_edges().len() as u128 == basic_edge_count_closed(m, k)
                && g.decoration_slots().len() as u128 == slot_count_closed(m, k)
                && level_partition(&g).iter().all(|(&l, &n)| n as u128 == level_size_closed(m.q(), k, l));
            if !ok {
                bad.push(format!("{id} k={k}"));
            }
        }
    }
    row("graph counts", bad.is_empty(), if bad.is_empty() { "all motifs, k<=10 (q=3) / k<=8 (q=4)".into() } else { bad.join("; ") })
}

fn class_of(origin: NodeOrigin, level_class: u32) -> ComponentClass {
    match origin {
        NodeOrigin::External(i) => ComponentClass::External(i),
        NodeOrigin::Glued(i, j) => ComponentClass::Internal { level: level_class, pair: (i, j) },
    }
}

fn degree_structure() -> CheckRow {
    let mut mismatches = 0usize;
    let mut nodes = 0usize;
    for id in MotifId::ALL {
        let m = get_motif(id);
        for k in 1..=6 {
            let g = build(m, k).expect("small graph");
            let mixture = mixture_model(m, k, 0.5).expect("valid p");
            let basic = g.basic_degrees();
            let slots = g.slot_incidence();
            for node in g.nodes() {
                nodes += 1;
                match mixture.component(class_of(node.origin, node.level_class)) {
                    Some(c) if c.base == basic[node.id as usize] && c.slots == slots[node.id as usize] => {}
                    _ => mismatches += 1,
                }
            }
        }
    }
    row("degree classes", mismatches == 0, format!("{mismatches} mismatches over {nodes} nodes"))
}

fn mean_degree() -> CheckRow {
    let mut worst: f64 = 0.0;
    for id in MotifId::ALL {
        let m = get_motif(id);
        for k in 1..=40 {
            for i in 0..=10 {
                let p = f64::from(i) / 10.0;
                let mixture = mixture_model(m, k, p).expect("valid p").mean();
                worst = worst.max((mixture - mean_degree_closed(m, k, p)).abs());
            }
        }
    }
    row("mean degree closed forms", worst < 1e-10, format!("max abs err {worst:.2e}"))
}

fn char_fn_forms() -> CheckRow {
    let mut worst: f64 = 0.0;
    for k in 1..=12 {
        for p in [0.0, 0.25, 0.5, 0.9] {
            for j in 0..20 {
                let t = -3.0 + 0.3 * f64::from(j);
                let m3 = mixture_model(get_motif(MotifId::M3), k, p).expect("valid p").char_fn(t);
                let m2 = mixture_model(get_motif(MotifId::M2), k, p).expect("valid p").char_fn(t);
                worst = worst.max((m3 - char_fn_m3_finite(k, p, t)).norm());
                worst = worst.max((m2 - char_fn_m2_finite(k, p, t)).norm());
            }
        }
    }
    row("characteristic functions", worst < 1e-10, format!("max abs err {worst:.2e}"))
}

fn partition_oracle(draws: &[IsingParams]) -> CheckRow {
    let errs: Vec<f64> = draws
        .par_iter()
        .map(|params| {
            let ab = recursion_ab(params, 3);
            let mut worst: f64 = 0.0;
            for k in [2u32, 3] {
                let lv = ab[k as usize - 1];
                let a = brute_force_partition(params, k, PLUS).expect("k in range");
                let b = brute_force_partition(params, k, MIXED).expect("k in range");
                worst = worst.max(rel_err(lv.log_a().exp(), a)).max(rel_err(lv.log_b.exp(), b));
            }
            worst
        })
        .collect();
    let worst = errs.iter().copied().fold(0.0, f64::max);
    row("partition recursion vs enumeration", worst < 1e-10, format!("{} draws, max rel err {worst:.2e}", draws.len()))
}

fn observable(a: i8, b: i8, c: i8) -> f64 {
    2.0 + f64::from(a) + 0.5 * f64::from(b * c)
}

fn local_average_oracle(draws: &[IsingParams]) -> CheckRow {
    let errs: Vec<f64> = draws
        .par_iter()
        .map(|params| {
            let y1 = [observable(1, 1, 1), observable(1, 1, -1), observable(1, -1, -1)];
            let traj = evolve_y(params, y1, 2).expect("positive start");
            let mut worst: f64 = 0.0;
            for k in [2u32, 3] {
                for (i, bd) in [PLUS, MIXED, SPLIT].into_iter().enumerate() {
                    let want = brute_force_f(params, k, observable, bd).expect("k in range");
                    worst = worst.max(rel_err(traj.y[k as usize - 1][i], want));
                }
            }
            worst
        })
        .collect();
    let worst = errs.iter().copied().fold(0.0, f64::max);
    row("local averages vs enumeration", worst < 1e-10, format!("{} draws, max rel err {worst:.2e}", draws.len()))
}

fn negative_control() -> CheckRow {
    let params = IsingParams::new(0.5, 0.3, 0.5).expect("valid");
    let (_, b2) = ab_step_uncorrected(&params, (3.0 * params.basic).exp(), (-params.basic).exp());
    let truth = brute_force_partition(&params, 2, MIXED).expect("k in range");
    let err = rel_err(b2, truth);
    row("literal B recursion rejected", err > 0.1, format!("rel err {err:.3}"))
}

fn degree_law_oracle() -> CheckRow {
    let p = 0.37;
    let mut worst: f64 = 0.0;
    for id in MotifId::ALL {
        let m = get_motif(id);
        let g = build(m, 3).expect("small graph");
        let mixture = mixture_model(m, 3, p).expect("valid p");
        for node in g.nodes() {
            let Some(c) = mixture.component(class_of(node.origin, node.level_class)) else {
                worst = f64::INFINITY;
                continue;
            };
            let law = brute_force_degree_law(&g, node.id, p).expect("few slots");
            for (n, &prob) in law.iter().enumerate() {
                let n = n as u32;
                let want = if n < c.base { 0.0 } else { binomial_pmf(c.slots, n - c.base, p) };
                worst = worst.max((prob - want).abs());
            }
        }
    }
    row("degree laws vs enumeration", worst < 1e-12, format!("max abs err {worst:.2e}"))
}

fn fixed_point_stability() -> CheckRow {
    let mut bad = 0;
    for i in 1..=20 {
        let t = 1.0 + 0.8 * f64::from(i) / 21.0;
        match fixed_points(t) {
            Ok(FixedPointSet::Pair { stable, unstable })
                if t * phi_prime(stable) < 1.0 && t * phi_prime(unstable) > 1.0 => {}
            _ => bad += 1,
        }
    }
    let degenerate = matches!(fixed_points(1.8), Ok(FixedPointSet::Degenerate(x)) if (x - 3.0).abs() < 1e-12);
    row("fixed point stability", bad == 0 && degenerate, format!("{bad} of 20 t-values wrong, t=9/5 merged: {degenerate}"))
}

fn log_ratio_consistency(draws: &[IsingParams]) -> CheckRow {
    let mut worst: f64 = 0.0;
    for params in draws {
        let ab = recursion_ab(params, 30);
        for (i, &x) in iterate_x(params, 30).values.iter().enumerate() {
            worst = worst.max(rel_err(ab[i].log_ratio.exp(), x));
        }
    }
    row("A/B ratio vs x map", worst < 1e-10, format!("max rel err {worst:.2e}"))
}

fn clustering() -> CheckRow {
    let m1 = get_motif(MotifId::M1);
    let mut worst: f64 = 0.0;
    for k in 2..=7 {
        let g = build(m1, k).expect("small graph");
        let bare = clustering_par(&Adjacency::realized(&g, &DecorationRealization::bare(&g)));
        let full = clustering_par(&Adjacency::realized(&g, &DecorationRealization::full(&g)));
        worst = worst.max((bare - clustering_m1_bare_closed(k)).abs());
        worst = worst.max((full - clustering_m1_decorated_exact(k)).abs());
    }
    row("triangle clustering", worst < 1e-12, format!("max abs err {worst:.2e}"))
}

fn diameters() -> CheckRow {
    let mut bad = Vec::new();
    for id in MotifId::ALL {
        let k_max = if id == MotifId::M1 { 6 } else { 5 };
        for k in 1..=k_max {
            let g = build(get_motif(id), k).expect("small graph");
            let d = diameter_par(&Adjacency::realized(&g, &DecorationRealization::bare(&g)));
            let want = match id {
                MotifId::M1 | MotifId::M5 => 1 << (k - 1),
                _ => 1 << k,
            };
            if d != Some(want) {
                bad.push(format!("{id} k={k}: {d:?}"));
            }
        }
    }
    row("bare diameters", bad.is_empty(), if bad.is_empty() { "2^(k-1) for m1, m5; 2^k otherwise".into() } else { bad.join("; ") })
}

/// Runs every check. The result depends on nothing but the code.
pub fn run_suite() -> VerifyDoc {
    let draws = oracle_draws(24);
    let checks: Vec<CheckRow> = vec![
        counts(),
        degree_structure(),
        mean_degree(),
        char_fn_forms(),
        partition_oracle(&draws),
        local_average_oracle(&draws),
        negative_control(),
        degree_law_oracle(),
        fixed_point_stability(),
        log_ratio_consistency(&draws),
        clustering(),
        diameters(),
    ];
    let passed = checks.iter().filter(|c| c.passed).count();
    VerifyDoc { schema_version: SCHEMA_VERSION, passed, failed: checks.len() - passed, checks }
}

/// Plain-text table, one line per check.
pub fn render_table(doc: &VerifyDoc) -> String {
    let width = doc.checks.iter().map(|c| c.check.len()).max().unwrap_or(0);
    let mut out = String::new();
    for c in &doc.checks {
        let mark = if c.passed { "PASS" } else { "FAIL" };
        out.push_str(&format!("{mark}  {:width$}  {}\n", c.check, c.detail));
    }
    out.push_str(&format!("{} passed, {} failed\n", doc.passed, doc.failed));
    out
}
