use std::collections::BTreeSet;

use itertools::Itertools;
use motifclust::engine::{build_motif_graph_exact, enumerate_instances};
use motifclust::motif::symmetry_profile;
use motifclust::quantum::{algorithm_costs, CostInputs, NoisyCounter};
use motifclust::spectral::{canonical_labels, laplacian, quadratic_form, smallest_k_eigenpairs};
use motifclust::{emit_graph, parse_graph, Graph, Motif};
use proptest::prelude::*;

fn graph_strategy(max_n: usize, directed: bool) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(move |n| {
        let pairs: Vec<(usize, usize)> = if directed {
            (0..n).flat_map(|u| (0..n).map(move |v| (u, v))).filter(|(u, v)| u != v).collect()
        } else {
            (0..n).tuple_combinations().collect()
        };
        let len = pairs.len();
        proptest::collection::vec((any::<bool>(), 1u32..=8), len).prop_map(move |picks| {
            let edges = pairs
                .iter()
                .zip(picks)
                .filter(|(_, (keep, _))| *keep)
                .map(|(&(u, v), (_, w))| (u, v, w as f64 * 0.5))
                .collect::<Vec<_>>();
            Graph::from_edges(n, directed, edges).unwrap()
        })
    })
}

fn motif_strategy() -> impl Strategy<Value = Motif> {
    (3usize..=5).prop_flat_map(|s| {
        let pairs: Vec<(usize, usize)> = (0..s).tuple_combinations().collect();
        let len = pairs.len();
        (proptest::collection::vec(any::<bool>(), len), proptest::sample::subsequence((0..s).collect::<Vec<_>>(), 2..=s))
            .prop_filter_map("connected motif", move |(picks, anchors)| {
                let edges: Vec<(usize, usize)> =
                    pairs.iter().zip(picks).filter(|(_, k)| *k).map(|(&e, _)| e).collect();
                Motif::new(s, false, &edges, &anchors).ok()
            })
    })
}

fn oracle_automorphisms(m: &Motif) -> usize {
    let s = m.s();
    let anchors: BTreeSet<usize> = m.anchors().iter().copied().collect();
    (0..s)
        .permutations(s)
        .filter(|p| (0..s).all(|i| (0..s).all(|j| m.has_edge(i, j) == m.has_edge(p[i], p[j]))))
        .filter(|p| anchors.iter().all(|a| anchors.contains(&p[*a])))
        .count()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn graph_text_round_trips(g in prop_oneof![graph_strategy(9, false), graph_strategy(7, true)]) {
        let parsed = parse_graph(&emit_graph(&g)).unwrap();
        prop_assert!(parsed.is_identity());
        prop_assert_eq!(parsed.graph, g);
    }

    #[test]
    fn undirected_adjacency_is_symmetric(g in graph_strategy(10, false)) {
        for u in 0..g.n() {
            for v in 0..g.n() {
                prop_assert_eq!(g.has_edge(u, v).unwrap(), g.has_edge(v, u).unwrap());
            }
        }
        prop_assert!(g.has_edge(0, g.n()).is_err());
    }

    #[test]
    fn laplacian_matches_quadratic_form(
        g in graph_strategy(9, false),
        xs in proptest::collection::vec(-3.0f64..3.0, 9),
    ) {
        let l = laplacian(&g).unwrap();
        let x = nalgebra::DVector::from_column_slice(&xs[..g.n()]);
        let dense = (x.transpose() * &l * &x)[(0, 0)];
        prop_assert!((dense - quadratic_form(&g, &xs[..g.n()])).abs() < 1e-9);
        for r in 0..g.n() {
            prop_assert!(l.row(r).sum().abs() < 1e-12);
        }
        let pairs = smallest_k_eigenpairs(&l, g.n()).unwrap();
        prop_assert!(pairs.values[0].abs() < 1e-9);
        let zero = pairs.values.iter().filter(|v| v.abs() < 1e-8).count();
        prop_assert_eq!(zero, g.components().len());
    }

    #[test]
    fn symmetry_factor_matches_permutation_oracle(m in motif_strategy()) {
        let profile = symmetry_profile(&m).unwrap();
        prop_assert_eq!(profile.automorphisms, oracle_automorphisms(&m));
        if m.anchors().len() == 2 {
            let (a, b) = (m.anchors()[0], m.anchors()[1]);
            let fixed = profile.pair(a, b).unwrap();
            prop_assert!(profile.automorphisms == fixed || profile.automorphisms == 2 * fixed);
        }
    }

    #[test]
    fn motif_graph_weights_count_shared_instances(m in motif_strategy(), g in graph_strategy(8, false)) {
        let instances = enumerate_instances(&m, &g);
        let mg = build_motif_graph_exact(&m, &g);
        for (u, v) in (0..g.n()).tuple_combinations() {
            let shared = instances.iter().filter(|i| i.anchors().contains(&u) && i.anchors().contains(&v)).count();
            prop_assert_eq!(mg.graph().weight(u, v).unwrap_or(0.0), shared as f64);
        }
    }

    #[test]
    fn noisy_counts_stay_in_band(
        seed in any::<u64>(),
        t in 1u64..10_000,
        eps in 0.01f64..0.9,
        key in (0usize..100, 0usize..100),
    ) {
        let c = NoisyCounter::new(seed);
        let est = c.noisy_count(t, eps, 0.1, 1e6, key);
        prop_assert!(est >= (1.0 - eps) * t as f64 && est <= (1.0 + eps) * t as f64);
        prop_assert_eq!(est, NoisyCounter::new(seed).noisy_count(t, eps, 0.1, 1e6, key));
        let failing = NoisyCounter::new(seed).with_failure_mode(true).noisy_count(t, eps, 0.1, 1e6, key);
        prop_assert!((0.0..=2.0 * t as f64).contains(&failing));
    }

    #[test]
    fn costs_grow_with_graph_size(
        n in 10.0f64..1e6,
        d in 1.0f64..50.0,
        s in 3u32..7,
        fill in 0.0f64..1.0,
        preprocess in any::<bool>(),
    ) {
        let l = 1;
        let motifs = fill * n * d.powi(s as i32 - 1);
        let small = algorithm_costs(CostInputs { n, d, s, l, motifs, preprocess }).unwrap();
        let large = algorithm_costs(CostInputs { n: 2.0 * n, d, s, l, motifs: 2.0 * motifs, preprocess }).unwrap();
        for (a, b) in small.costs.iter().zip(&large.costs) {
            prop_assert_eq!(a.algorithm, b.algorithm);
            prop_assert!(b.dominant_term >= a.dominant_term * (1.0 - 1e-12));
        }
        let best = small.costs.iter().map(|c| c.dominant_term).fold(f64::INFINITY, f64::min);
        prop_assert_eq!(small.cost(small.selected), best);
    }

    #[test]
    fn canonical_labels_are_first_seen_order(labels in proptest::collection::vec(0usize..6, 1..30)) {
        let canon = canonical_labels(&labels);
        let mut seen = 0;
        for (i, &c) in canon.iter().enumerate() {
            prop_assert!(c <= seen);
            if c == seen {
                seen += 1;
            }
            for j in 0..i {
                prop_assert_eq!(labels[i] == labels[j], canon[i] == canon[j]);
            }
        }
    }
}
