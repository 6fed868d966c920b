//! Recursions and closed forms checked against exhaustive enumeration.

use motifnet_core::decoration::DecorationRealization;
use motifnet_core::degree::{binomial_pmf, mixture_model, ComponentClass};
use motifnet_core::ising::{evolve_y, recursion_ab, transfer_matrix, IsingParams};
use motifnet_core::oracle::{ab_step_uncorrected, brute_force_degree_law, brute_force_f, brute_force_partition, BoundarySpins};
use motifnet_core::structure::{
    clustering_average, clustering_limit_m1_decorated_exact, clustering_m1_bare_closed, clustering_m1_decorated_exact, clustering_m5_bare_closed, diameter, per_level_clustering,
    small_world_bound_holds, Adjacency,
};
use motifnet_core::{build, get_motif, MotifId, NodeOrigin};

/// Deterministic parameter draws covering both signs of both couplings.
fn draws(n: usize) -> Vec<IsingParams> {
    let ps = [0.0, 0.3, 0.7, 1.0];
    (0..n)
        .map(|i| {
            let u = motifnet_core::mix(2024, i as u64);
            let unit = |shift: u32| ((u >> shift) & 0xFFFF) as f64 / 65535.0;
            IsingParams::new(-1.5 + 3.0 * unit(0), -1.5 + 3.0 * unit(16), ps[i % 4]).unwrap()
        })
        .collect()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

const PLUS: BoundarySpins = BoundarySpins { a: 1, b: 1, c: 1 };
const MIXED: BoundarySpins = BoundarySpins { a: 1, b: 1, c: -1 };

#[test]
fn partition_recursion_matches_enumeration() {
    for params in draws(24) {
        let ab = recursion_ab(&params, 3);
        for k in [2u32, 3] {
            let lv = ab[k as usize - 1];
            let a = brute_force_partition(&params, k, PLUS).unwrap();
            let b = brute_force_partition(&params, k, MIXED).unwrap();
            assert!(rel(lv.log_a().exp(), a) < 1e-10, "{params:?} k={k}: A {} vs {a}", lv.log_a().exp());
            assert!(rel(lv.log_b.exp(), b) < 1e-10, "{params:?} k={k}: B {} vs {b}", lv.log_b.exp());
        }
    }
}

#[test]
fn partition_depends_only_on_agreement() {
    let params = IsingParams::new(0.37, -0.8, 0.6).unwrap();
    let a = brute_force_partition(&params, 3, PLUS).unwrap();
    let b = brute_force_partition(&params, 3, MIXED).unwrap();
    for bd in BoundarySpins::all() {
        let z = brute_force_partition(&params, 3, bd).unwrap();
        let want = if bd.a == bd.b && bd.b == bd.c { a } else { b };
        assert!(rel(z, want) < 1e-12, "{bd:?}");
    }
}

#[test]
fn literal_disagreeing_line_is_wrong() {
    let params = IsingParams::new(0.5, 0.3, 0.5).unwrap();
    let (a1, b1) = ((3.0 * params.basic).exp(), (-params.basic).exp());
    let (_, b2) = ab_step_uncorrected(&params, a1, b1);
    let truth = brute_force_partition(&params, 2, MIXED).unwrap();
    assert!(rel(b2, truth) > 0.1, "{b2} vs {truth}");
}

fn y_from_oracle(params: &IsingParams, k: u32, f: &impl Fn(i8, i8, i8) -> f64) -> [f64; 3] {
    let bds = [PLUS, MIXED, BoundarySpins { a: 1, b: -1, c: -1 }];
    bds.map(|bd| brute_force_f(params, k, f, bd).unwrap())
}

#[test]
fn local_average_recursion_matches_enumeration() {
    let observables: [fn(i8, i8, i8) -> f64; 3] = [
        |a, b, c| 2.0 + f64::from(a) + 0.5 * f64::from(b * c),
        |a, b, c| (f64::from(a) * 0.7 + f64::from(b + c)).exp(),
        |a, b, c| 1.0 + f64::from(a * b + a * c) * 0.25,
    ];
    for params in draws(24) {
        for f in observables {
            let y1 = [f(1, 1, 1), f(1, 1, -1), f(1, -1, -1)];
            let traj = evolve_y(&params, y1, 2).unwrap();
            for k in [2u32, 3] {
                let want = y_from_oracle(&params, k, &f);
                let got = traj.y[k as usize - 1];
                for i in 0..3 {
                    assert!(rel(got[i], want[i]) < 1e-10, "{params:?} k={k} Y{}: {} vs {}", i + 1, got[i], want[i]);
                }
            }
        }
    }
}

#[test]
fn single_step_transfer_matches_enumeration_for_every_start() {
    let params = IsingParams::new(0.21, 0.9, 0.3).unwrap();
    let f = |a: i8, b: i8, c: i8| 3.0 + f64::from(a) - f64::from(b + c) * 0.4;
    let t1 = transfer_matrix(params.x1()).unwrap();
    let y2 = t1.apply([f(1, 1, 1), f(1, 1, -1), f(1, -1, -1)]);
    let want = y_from_oracle(&params, 2, &f);
    for i in 0..3 {
        assert!(rel(y2[i], want[i]) < 1e-12);
    }
}

#[test]
fn degree_law_per_class_matches_enumeration() {
    let p = 0.37;
    for id in MotifId::ALL {
        let m = get_motif(id);
        let g = build(m, 3).unwrap();
        let mix = mixture_model(m, 3, p).unwrap();
        for node in g.nodes() {
            let class = match node.origin {
                NodeOrigin::External(i) => ComponentClass::External(i),
                NodeOrigin::Glued(i, j) => ComponentClass::Internal { level: node.level_class, pair: (i, j) },
            };
            let c = mix.component(class).unwrap();
            let law = brute_force_degree_law(&g, node.id, p).unwrap();
            for (n, &prob) in law.iter().enumerate() {
                let n = n as u32;
                let want = if n < c.base { 0.0 } else { binomial_pmf(c.slots, n - c.base, p) };
                assert!((prob - want).abs() < 1e-12, "{id} node {} n={n}", node.id);
            }
        }
    }
}

#[test]
fn triangle_level_two_all_decoration_subsets() {
    let g = build(get_motif(MotifId::M1), 2).unwrap();
    assert_eq!(g.decoration_slots().len(), 3);
    let p: f64 = 0.25;
    let mut mean = 0.0;
    for subset in 0..8u32 {
        let on = subset.count_ones();
        let prob = p.powi(on as i32) * (1.0 - p).powi(3 - on as i32);
        mean += prob * 2.0 * (g.basic_edges().len() + on as usize) as f64 / g.node_count() as f64;
    }
    let model = mixture_model(get_motif(MotifId::M1), 2, p).unwrap().mean();
    assert!((mean - model).abs() < 1e-14);
}

#[test]
fn bare_diameters() {
    for id in MotifId::ALL {
        let g_max = if id == MotifId::M1 { 7 } else { 5 };
        for k in 1..=g_max {
            let g = build(get_motif(id), k).unwrap();
            let d = diameter(&g, &DecorationRealization::bare(&g));
            let want = match id {
                MotifId::M1 | MotifId::M5 => 1u32 << (k - 1),
                _ => 1u32 << k,
            };
            assert_eq!(d, want, "{id} k={k}");
        }
    }
}

#[test]
fn decorated_triangle_per_level_degrees_and_links() {
    let m = get_motif(MotifId::M1);
    for k in 2..=6 {
        let g = build(m, k).unwrap();
        let full = DecorationRealization::full(&g);
        let adj = Adjacency::realized(&g, &full);
        for node in g.nodes() {
            let (n, links) = if node.is_external() {
                (2 * k as usize, 3 * k as usize - 2)
            } else {
                let l = node.level_class as usize;
                (4 * l, 6 * l - 2)
            };
            assert_eq!(adj.degree(node.id), n, "k={k} node {}", node.id);
            assert_eq!(adj.neighbor_links(node.id), links, "k={k} node {}", node.id);
        }
    }
}

#[test]
fn decorated_triangle_clustering() {
    for k in 1..=7 {
        let g = build(get_motif(MotifId::M1), k).unwrap();
        let q = clustering_average(&g, &DecorationRealization::full(&g));
        assert!((q - clustering_m1_decorated_exact(k)).abs() < 1e-12, "k={k}");
    }
    let lim = clustering_limit_m1_decorated_exact(40);
    assert!((clustering_m1_decorated_exact(30) - lim).abs() < 1e-9);
}

#[test]
fn bare_clustering_closed_forms() {
    for k in 2..=7 {
        let g = build(get_motif(MotifId::M1), k).unwrap();
        let q = clustering_average(&g, &DecorationRealization::bare(&g));
        assert!((q - clustering_m1_bare_closed(k)).abs() < 1e-12, "k={k}");
    }
    for k in 2..=6 {
        let g = build(get_motif(MotifId::M5), k).unwrap();
        let q = clustering_average(&g, &DecorationRealization::bare(&g));
        assert!((q - clustering_m5_bare_closed(k)).abs() < 1e-12, "k={k}");
    }
}

/// Every class of the decorated complete-motif graph has the same local
/// clustering across `k`, and the average is the weighted sum of them.
#[test]
fn decorated_m5_clustering_is_self_consistent() {
    let m = get_motif(MotifId::M5);
    let mut previous: Option<std::collections::BTreeMap<u32, f64>> = None;
    for k in 3..=6 {
        let g = build(m, k).unwrap();
        let full = DecorationRealization::full(&g);
        let adj = Adjacency::realized(&g, &full);
        let levels = per_level_clustering(&g, &adj);
        let avg = clustering_average(&g, &full);
        let n = g.node_count() as f64;
        let sizes = motifnet_core::hierarchy::level_partition(&g);
        let weighted: f64 = levels.iter().map(|(l, q)| q * sizes[l] as f64 / n).sum();
        assert!((avg - weighted).abs() < 1e-12);
        if let Some(prev) = &previous {
            for l in 1..(k - 1) {
                assert!((prev[&l] - levels[&l]).abs() < 1e-12, "k={k} l={l}");
            }
        }
        previous = Some(levels);
    }
}

#[test]
fn small_world_bound() {
    for id in MotifId::ALL {
        for k in 2..=if id == MotifId::M1 { 8 } else { 6 } {
            let g = build(get_motif(id), k).unwrap();
            let full = DecorationRealization::full(&g);
            let adj = Adjacency::realized(&g, &full);
            let d = adj.diameter().unwrap();
            assert!(small_world_bound_holds(&adj, d, 4.0), "{id} k={k} diam {d}");
        }
    }
    for k in 6..=8 {
        let g = build(get_motif(MotifId::M1), k).unwrap();
        let bare = DecorationRealization::bare(&g);
        let adj = Adjacency::realized(&g, &bare);
        let d = adj.diameter().unwrap();
        assert!(!small_world_bound_holds(&adj, d, 4.0), "k={k} diam {d}");
    }
}
