use proptest::prelude::*;

use gamma_cone::cone::{full_cone, partial_cone, verify_cone_lemmas};
use gamma_cone::curvature::{cric, kc_max, poincare_check, ric_pointwise, DimensionParam};
use gamma_cone::gamma::{divergence_check, gamma1, gamma2, laplacian};
use gamma_cone::graph::{encode_edge_list, encode_graph6, parse_edge_list, parse_graph6};
use gamma_cone::spectral::{ccd_from_gap, cheeger, laplacian_spectrum};
use gamma_cone::Graph;

fn any_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            Graph::from_edges(n, pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e)).unwrap()
        })
    })
}

/// A random spanning tree plus random extra edges.
fn connected_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(|n| {
        (
            proptest::collection::vec(any::<usize>(), n - 1),
            proptest::collection::vec(any::<bool>(), n * (n - 1) / 2),
        )
            .prop_map(move |(parents, bits)| {
                let tree = (1..n).map(|v| (parents[v - 1] % v, v));
                let extra = (0..n)
                    .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                    .zip(bits)
                    .filter(|(_, b)| *b)
                    .map(|(e, _)| e);
                let mut edges: Vec<_> = tree.chain(extra).collect();
                edges.sort_unstable();
                edges.dedup();
                Graph::from_edges(n, edges).unwrap()
            })
    })
}

fn values(n: usize) -> impl Strategy<Value = Vec<f64>> {
    proptest::collection::vec(-1.0f64..1.0, n)
}

fn graph_and_function(max_n: usize) -> impl Strategy<Value = (Graph, Vec<f64>)> {
    connected_graph(max_n).prop_flat_map(|g| {
        let n = g.vertex_count();
        (Just(g), values(n))
    })
}

fn dimension() -> impl Strategy<Value = DimensionParam> {
    prop_oneof![
        (1.01f64..50.0).prop_map(DimensionParam::Finite),
        Just(DimensionParam::Infinity),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 96, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn graph6_round_trip(g in any_graph(12)) {
        let text = encode_graph6(&g).unwrap();
        prop_assert_eq!(parse_graph6(&text).unwrap(), g);
    }

    #[test]
    fn edge_list_round_trip(g in any_graph(12)) {
        prop_assert_eq!(parse_edge_list(&encode_edge_list(&g)).unwrap(), g);
    }

    #[test]
    fn gamma_operators_kill_constants((g, f) in graph_and_function(8), c in -3.0f64..3.0) {
        let shifted: Vec<f64> = f.iter().map(|v| v + c).collect();
        for x in 0..g.vertex_count() {
            prop_assert!((laplacian(&g, &shifted, x) - laplacian(&g, &f, x)).abs() < 1e-12);
            prop_assert!((gamma1(&g, &shifted, &shifted, x) - gamma1(&g, &f, &f, x)).abs() < 1e-10);
            prop_assert!((gamma2(&g, &shifted, &shifted, x) - gamma2(&g, &f, &f, x)).abs() < 1e-9);
        }
    }

    #[test]
    fn divergence_theorem((g, f) in graph_and_function(9)) {
        let (lhs, rhs) = divergence_check(&g, &f);
        prop_assert!((lhs - rhs).abs() < 1e-10);
        let lap_sum: f64 = (0..g.vertex_count()).map(|x| laplacian(&g, &f, x)).sum();
        prop_assert!(lap_sum.abs() < 1e-10);
    }

    #[test]
    fn cone_lemmas_hold((g, f) in graph_and_function(8), mask in any::<u16>()) {
        let n = g.vertex_count();
        let mut set: Vec<usize> = (0..n).filter(|v| mask >> v & 1 == 1).collect();
        if set.is_empty() {
            set.push(0);
        }
        for cone in [partial_cone(&g, &set).unwrap(), full_cone(&g)] {
            for check in verify_cone_lemmas(&cone, &f).unwrap() {
                prop_assert!(check.abs_diff() < 1e-9, "{:?}", check);
            }
        }
    }

    #[test]
    fn curvature_decreases_as_dimension_shrinks(g in connected_graph(7), x in any::<usize>(), a in 1.01f64..20.0, b in 1.01f64..20.0) {
        let x = x % g.vertex_count();
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let k_lo = ric_pointwise(&g, x, DimensionParam::Finite(lo)).unwrap().value.as_f64();
        let k_hi = ric_pointwise(&g, x, DimensionParam::Finite(hi)).unwrap().value.as_f64();
        let k_inf = ric_pointwise(&g, x, DimensionParam::Infinity).unwrap().value.as_f64();
        prop_assert!(k_lo <= k_hi + 1e-9);
        prop_assert!(k_hi <= k_inf + 1e-9);
    }

    #[test]
    fn cric_decreases_as_dimension_shrinks(g in connected_graph(9), a in 1.01f64..20.0, b in 1.01f64..20.0) {
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let k_lo = cric(&g, DimensionParam::Finite(lo)).unwrap().value.as_f64();
        let k_hi = cric(&g, DimensionParam::Finite(hi)).unwrap().value.as_f64();
        prop_assert!(k_lo <= k_hi + 1e-9);
    }

    #[test]
    fn cric_never_exceeds_ceiling(g in connected_graph(9), n_param in dimension()) {
        let r = cric(&g, n_param).unwrap();
        prop_assert!(r.value.as_f64() <= kc_max(g.vertex_count(), n_param) + 1e-9);
        prop_assert!(!r.eigenspace.is_empty());
    }

    /// The Poincaré-type inequality at K = CRic holds for every f.
    #[test]
    fn poincare_holds_at_cric((g, f) in graph_and_function(9), n_param in dimension()) {
        let k = cric(&g, n_param).unwrap().value.as_f64();
        prop_assert!(poincare_check(&g, k, n_param, &f).holds);
    }

    /// Eigenspace witnesses make the inequality tight: no larger K survives.
    #[test]
    fn poincare_is_sharp_on_witnesses(g in connected_graph(9), n_param in dimension()) {
        let r = cric(&g, n_param).unwrap();
        let k = r.value.as_f64();
        for w in &r.eigenspace {
            prop_assert!(!poincare_check(&g, k + 1e-4, n_param, w.values()).holds);
        }
    }

    #[test]
    fn cric_is_invariant_under_relabelling(g in connected_graph(8), seed in any::<u64>(), n_param in dimension()) {
        let n = g.vertex_count();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut rng = gamma_cone::rng::XorShift64::new(seed);
        for i in (1..n).rev() {
            perm.swap(i, rng.below(i + 1));
        }
        let h = Graph::from_edges(n, g.edges().map(|(u, v)| (perm[u], perm[v]))).unwrap();
        let a = cric(&g, n_param).unwrap().value.as_f64();
        let b = cric(&h, n_param).unwrap().value.as_f64();
        prop_assert!((a - b).abs() < 1e-9);
        prop_assert_eq!(cheeger(&g).unwrap().h(), cheeger(&h).unwrap().h());
    }

    #[test]
    fn cheeger_witness_recounts(g in connected_graph(10)) {
        let r = cheeger(&g).unwrap();
        let cut = g.edges().filter(|&(u, v)| r.witness.contains(&u) != r.witness.contains(&v)).count();
        prop_assert_eq!(cut as u64, r.h_num);
        prop_assert_eq!(r.witness.len() as u64, r.h_den);
        // Lower half of the Cheeger sandwich on λ1.
        let l1 = laplacian_spectrum(&g).unwrap().lambda1;
        prop_assert!(l1 <= 2.0 * r.h() + 1e-9);
    }

    /// A gap λ ≤ λ1 yields a dimension threshold at which CRic clears the derived K.
    #[test]
    fn gap_threshold_is_sufficient(g in connected_graph(9), t in 0.01f64..1.0) {
        let l1 = laplacian_spectrum(&g).unwrap().lambda1;
        let report = ccd_from_gap(&g, t * l1).unwrap();
        if report.n_threshold.is_some() {
            prop_assert!(report.cric.unwrap() >= report.k_derived - 1e-9);
        }
    }
}
