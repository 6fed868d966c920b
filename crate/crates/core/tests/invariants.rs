use std::collections::BTreeMap;

use motifnet_core::decoration::ensemble_member;
use motifnet_core::degree::closed::{mean_degree_closed, mean_degree_generic};
use motifnet_core::degree::{mixture_model, realized_degrees, ComponentClass};
use motifnet_core::hierarchy::{
    basic_edge_count_closed, level_partition, level_size_closed, node_count_closed, slot_count_closed,
};
use motifnet_core::ising::{
    dobrushin, evolve_y, fixed_points, iterate_x, phi, phi_prime, recursion_ab, transfer_matrix, vector_diameter,
    FixedPointSet, IsingParams,
};
use motifnet_core::{build, get_motif, sample, MotifId, NodeOrigin};
use proptest::prelude::*;

fn motif_strategy() -> impl Strategy<Value = MotifId> {
    prop::sample::select(MotifId::ALL.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn counts_follow_closed_forms(id in motif_strategy(), k in 1u32..=6) {
        let m = get_motif(id);
        let g = build(m, k).unwrap();
        prop_assert_eq!(g.node_count() as u128, node_count_closed(m.q(), k).unwrap());
        prop_assert_eq!(g.basic_edges().len() as u128, basic_edge_count_closed(m, k));
        prop_assert_eq!(g.decoration_slots().len() as u128, slot_count_closed(m, k));
        for (level, size) in level_partition(&g) {
            prop_assert_eq!(size as u128, level_size_closed(m.q(), k, level));
        }
    }

    #[test]
    fn externals_are_the_first_ids(id in motif_strategy(), k in 1u32..=6) {
        let g = build(get_motif(id), k).unwrap();
        for (i, node) in g.nodes().iter().enumerate() {
            prop_assert_eq!(node.id as usize, i);
            let external = i < get_motif(id).q();
            prop_assert_eq!(node.is_external(), external);
            prop_assert_eq!(node.level_class == k, external);
        }
    }

    #[test]
    fn realization_is_a_function_of_seed(id in motif_strategy(), k in 1u32..=5, p in 0.0f64..=1.0, seed in any::<u64>()) {
        let g = build(get_motif(id), k).unwrap();
        let a = sample(&g, p, seed).unwrap();
        let b = sample(&g, p, seed).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert!(a.matches(&g));
        let edges: Vec<_> = a.realized_edges(&g).collect();
        prop_assert_eq!(edges.len(), g.basic_edges().len() + a.active_count());
    }

    #[test]
    fn degree_sum_is_twice_edge_count(id in motif_strategy(), k in 1u32..=5, p in 0.0f64..=1.0, seed in any::<u64>()) {
        let g = build(get_motif(id), k).unwrap();
        let real = sample(&g, p, seed).unwrap();
        let total: u64 = realized_degrees(&g, &real).iter().map(|&d| u64::from(d)).sum();
        prop_assert_eq!(total, 2 * (g.basic_edges().len() + real.active_count()) as u64);
    }

    #[test]
    fn mixture_is_normalized(id in motif_strategy(), k in 1u32..=30, p in 0.0f64..=1.0) {
        let mix = mixture_model(get_motif(id), k, p).unwrap();
        prop_assert!((mix.total_weight() - 1.0).abs() < 1e-12);
        let pmf_sum: f64 = (0..=mix.max_degree()).map(|n| mix.pmf(n)).sum();
        prop_assert!((pmf_sum - 1.0).abs() < 1e-12);
        prop_assert!(mix.char_fn(0.0).re - 1.0 < 1e-12);
    }

    #[test]
    fn mean_degree_forms_agree(id in motif_strategy(), k in 1u32..=30, p in 0.0f64..=1.0) {
        let m = get_motif(id);
        let mix = mixture_model(m, k, p).unwrap().mean();
        let closed = mean_degree_closed(m, k, p);
        let generic = mean_degree_generic(m, k, p);
        prop_assert!((mix - closed).abs() < 1e-10 * closed.max(1.0), "{} vs {}", mix, closed);
        prop_assert!((generic - closed).abs() < 1e-10 * closed.max(1.0));
    }

    #[test]
    fn phi_is_positive_and_increasing_above_one(x in 1e-6f64..1e6) {
        let y = phi(x).unwrap();
        prop_assert!(y > 0.0);
        if x > 1.0 {
            prop_assert!(phi_prime(x) > 0.0);
        }
    }

    #[test]
    fn transfer_matrices_are_stochastic(x in 1e-6f64..1e12) {
        let t = transfer_matrix(x).unwrap();
        for s in t.row_sums() {
            prop_assert!((s - 1.0).abs() < 1e-12);
        }
        for i in 0..3 {
            for j in 0..3 {
                prop_assert!(t.entry(i, j) >= 0.0);
            }
        }
        let d = dobrushin(&t).unwrap();
        prop_assert!((0.0..=1.0).contains(&d));
    }

    #[test]
    fn contraction_bound(kk in -1.5f64..1.5, l in -1.5f64..1.5, p in 0.0f64..=1.0,
                         y in prop::array::uniform3(0.01f64..10.0)) {
        let params = IsingParams::new(kk, l, p).unwrap();
        let traj = evolve_y(&params, y, 25).unwrap();
        let d1 = vector_diameter(&y);
        for k in 0..25 {
            prop_assert!(traj.diameter_y[k + 1] <= traj.dobrushin_s[k] * d1 + 1e-12 * d1.max(1.0));
        }
    }

    #[test]
    fn log_ratio_matches_x_sequence(kk in -1.5f64..1.5, l in -1.5f64..1.5, p in 0.0f64..=1.0) {
        let params = IsingParams::new(kk, l, p).unwrap();
        let ab = recursion_ab(&params, 30);
        let xs = iterate_x(&params, 30);
        for (i, &x) in xs.values.iter().enumerate() {
            let got = ab[i].log_ratio.exp();
            prop_assert!((got - x).abs() <= 1e-10 * x, "k={} {} vs {}", i + 1, got, x);
        }
    }
}

#[test]
fn stability_dichotomy() {
    for i in 1..=20 {
        let t = 1.0 + 0.8 * f64::from(i) / 21.0;
        match fixed_points(t).unwrap() {
            FixedPointSet::Pair { stable, unstable } => {
                assert!(t * phi_prime(stable) < 1.0, "t={t}");
                assert!(t * phi_prime(unstable) > 1.0, "t={t}");
                assert!((t * phi(stable).unwrap() - stable).abs() < 1e-12 * stable);
                assert!((t * phi(unstable).unwrap() - unstable).abs() < 1e-10 * unstable);
            }
            other => panic!("t={t}: {other:?}"),
        }
    }
}

/// Each node's basic and slot degree, as read off the built graph, matches the
/// class it is assigned to in the mixture, and the class sizes match the
/// mixture weights.
#[test]
fn structural_degree_truth() {
    for id in MotifId::ALL {
        let m = get_motif(id);
        for k in 1..=6 {
            let g = build(m, k).unwrap();
            let basic = g.basic_degrees();
            let slots = g.slot_incidence();
            let mix = mixture_model(m, k, 0.5).unwrap();
            let mut counts: BTreeMap<ComponentClass, usize> = BTreeMap::new();
            for node in g.nodes() {
                let class = match node.origin {
                    NodeOrigin::External(i) => ComponentClass::External(i),
                    NodeOrigin::Glued(i, j) => ComponentClass::Internal { level: node.level_class, pair: (i, j) },
                };
                let c = mix.component(class).unwrap_or_else(|| panic!("{id} k={k}: no component {class:?}"));
                assert_eq!(basic[node.id as usize], c.base, "{id} k={k} node {}", node.id);
                assert_eq!(slots[node.id as usize], c.slots, "{id} k={k} node {}", node.id);
                assert_eq!(node.basic_degree(m), c.base);
                assert_eq!(node.slot_count(m, k), c.slots);
                *counts.entry(class).or_default() += 1;
            }
            let n = g.node_count() as f64;
            for c in mix.components() {
                let have = counts.get(&c.class).copied().unwrap_or(0) as f64;
                assert!((have - c.weight * n).abs() < 1e-9, "{id} k={k} {:?}: {have} vs {}", c.class, c.weight * n);
            }
        }
    }
}

#[test]
fn empirical_mean_degree_within_three_standard_errors() {
    for id in MotifId::ALL {
        let m = get_motif(id);
        let g = build(m, 5).unwrap();
        let p = 0.4;
        let n = 400u64;
        let means: Vec<f64> = (0..n)
            .map(|i| {
                let r = ensemble_member(&g, p, 11, i).unwrap();
                2.0 * (g.basic_edges().len() + r.active_count()) as f64 / g.node_count() as f64
            })
            .collect();
        let avg = means.iter().sum::<f64>() / n as f64;
        let var = means.iter().map(|x| (x - avg) * (x - avg)).sum::<f64>() / (n - 1) as f64;
        let se = (var / n as f64).sqrt();
        let want = mean_degree_closed(m, 5, p);
        assert!((avg - want).abs() < 3.0 * se, "{id}: {avg} vs {want} (se {se})");
    }
}
