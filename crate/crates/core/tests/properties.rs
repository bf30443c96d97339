use corecut::dangling::{enumerate_dangling, is_g_dangling};
use corecut::experiments::{brute_force_min_conductance, split_edges};
use corecut::generators::{plant_dangling, sample_inhomogeneous, InhomogeneousSpec};
use corecut::graph::conductance;
use corecut::spectral::{dense_spectrum, smallest_eigenpairs_by_component, sweep_cut, LanczosOptions};
use corecut::{BuildOptions, Graph, Regularization, Scoring, Variant};
use proptest::prelude::*;

fn connected_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (3usize..=max_n).prop_flat_map(|n| {
        (
            proptest::collection::vec((0..n, 0..n, 0.5f64..2.0), n..(3 * n)),
            Just(n),
        )
            .prop_map(|(mut e, n)| {
                // A spanning path keeps the graph connected.
                e.extend((1..n).map(|i| (i - 1, i, 1.0)));
                Graph::from_edges(n, &e, BuildOptions::default()).unwrap()
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sweep_never_beats_the_exhaustive_minimum(g in connected_graph(14)) {
        let (best, h) = brute_force_min_conductance(&g, None).unwrap();
        prop_assert!((conductance(&g, &best).unwrap() - h).abs() < 1e-12);
        let spec = dense_spectrum(&g, Regularization::vanilla()).unwrap();
        let part = sweep_cut(&g, Scoring::Raw, &spec.eigenvectors[1]).unwrap();
        prop_assert!(part.stats.conductance >= h - 1e-12);
        let l2 = spec.eigenvalues[1];
        prop_assert!(h * h / 2.0 <= l2 + 1e-12 && l2 <= 2.0 * h + 1e-12);
    }

    #[test]
    fn regularized_sweep_scores_are_corecut(g in connected_graph(14), tau in 0.1f64..10.0) {
        let (_, h_tau) = brute_force_min_conductance(&g, Some(tau)).unwrap();
        let spec = dense_spectrum(&g, Regularization::new(tau, Variant::EdgeWise).unwrap()).unwrap();
        let part = sweep_cut(&g, Scoring::Regularized { tau }, &spec.eigenvectors[1]).unwrap();
        prop_assert!(part.score >= h_tau - 1e-12);
        prop_assert!((part.score - part.corecut_value).abs() < 1e-12);
    }

    #[test]
    fn componentwise_spectrum_matches_dense(seed in 0u64..1000, k in 1usize..6) {
        // Sparse ER graphs are usually disconnected.
        let g = sample_inhomogeneous(&InhomogeneousSpec::erdos_renyi(60, 0.05), seed).unwrap();
        let keep: Vec<usize> = (0..60).filter(|&v| g.degree(v) > 0.0).collect();
        prop_assume!(keep.len() > k);
        let g = corecut::graph::induced_subgraph(&g, &corecut::NodeSet::new(keep, 60).unwrap()).unwrap();
        for reg in [Regularization::vanilla(), Regularization::new(2.0, Variant::DegreeOnly).unwrap(), Regularization::new(2.0, Variant::EdgeWise).unwrap()] {
            let it = smallest_eigenpairs_by_component(&g, reg, LanczosOptions::new(k)).unwrap();
            let dense = dense_spectrum(&g, reg).unwrap();
            for i in 0..k {
                prop_assert!((it.eigenvalues[i] - dense.eigenvalues[i]).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn split_conserves_edges(seed in 0u64..1000, fraction in 0.1f64..0.9) {
        let g = sample_inhomogeneous(&InhomogeneousSpec::erdos_renyi(80, 0.1), seed).unwrap();
        prop_assume!(g.edge_count() > 10);
        let s = split_edges(&g, fraction, seed).unwrap();
        prop_assert_eq!(s.train_edges.len() + s.test_edges.len(), g.edge_count());
        prop_assert_eq!(s.train_edges.len(), (fraction * g.edge_count() as f64).round() as usize);
        prop_assert!(s.train.is_connected());
    }

    #[test]
    fn planted_sets_survive_enumeration(seed in 0u64..1000, g in 2usize..9, count in 1usize..6) {
        let host = sample_inhomogeneous(&InhomogeneousSpec::erdos_renyi(300, 0.02), seed).unwrap();
        let (graph, records) = plant_dangling(&host, g, count, seed).unwrap();
        let census = enumerate_dangling(&graph, 8, true).unwrap();
        for r in &records {
            prop_assert!(is_g_dangling(&graph, &r.members, g, true));
            prop_assert!(census.sets_of_size(g).any(|s| s.members == r.members));
        }
    }
}
