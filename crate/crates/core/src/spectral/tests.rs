use rand::Rng as _;

use super::*;
use crate::graph::fixtures::*;
use crate::graph::{largest_connected_component, BuildOptions, NodeSet};
use crate::rng;

fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
    let mut r = rng::stream(seed, 99);
    let mut e = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if r.random::<f64>() < p {
                e.push((i, j, r.random_range(0.5..2.0)));
            }
        }
    }
    let g = Graph::from_edges(n, &e, BuildOptions::default()).unwrap();
    largest_connected_component(&g).unwrap().0
}

fn regs(g: &Graph) -> Vec<Regularization> {
    let avg = g.total_volume() / g.node_count() as f64;
    vec![
        Regularization::vanilla(),
        Regularization::new(avg, Variant::EdgeWise).unwrap(),
        Regularization::new(avg, Variant::DegreeOnly).unwrap(),
    ]
}

#[test]
fn vanilla_kernel() {
    let g = barbell();
    let op = LaplacianOperator::new(&g, Regularization::vanilla()).unwrap();
    let k = op.kernel_vector().unwrap();
    let y = laplacian_matvec(&op, &k).unwrap();
    assert!(y.iter().all(|a| a.abs() < 1e-14));
}

#[test]
fn edgewise_kernel() {
    let g = barbell();
    let op = LaplacianOperator::new(&g, Regularization::new(1.7, Variant::EdgeWise).unwrap()).unwrap();
    let k = op.kernel_vector().unwrap();
    let y = laplacian_matvec(&op, &k).unwrap();
    assert!(y.iter().all(|a| a.abs() < 1e-14));
    let deg = LaplacianOperator::new(&g, Regularization::new(1.7, Variant::DegreeOnly).unwrap()).unwrap();
    assert!(deg.kernel_vector().is_none());
}

#[test]
fn zero_degree_signalled() {
    let g = Graph::from_unweighted(3, &[(0, 1)]).unwrap();
    assert!(matches!(
        LaplacianOperator::new(&g, Regularization::vanilla()),
        Err(Error::ZeroDegree { node: 2 })
    ));
    assert!(LaplacianOperator::new(&g, Regularization::new(0.5, Variant::DegreeOnly).unwrap()).is_ok());
}

#[test]
fn matvec_matches_dense() {
    for seed in 0..6 {
        let g = random_graph(40, 0.15, seed);
        let n = g.node_count();
        for reg in regs(&g) {
            let op = LaplacianOperator::new(&g, reg).unwrap();
            let l = dense_laplacian(&g, reg).unwrap();
            let mut r = rng::stream(seed, 7);
            for _ in 0..100 {
                let x: Vec<f64> = (0..n).map(|_| r.random::<f64>() - 0.5).collect();
                let y = laplacian_matvec(&op, &x).unwrap();
                for i in 0..n {
                    let d: f64 = (0..n).map(|j| l[(i, j)] * x[j]).sum();
                    assert!((d - y[i]).abs() < 1e-12);
                }
            }
        }
    }
}

#[test]
fn operator_symmetric_with_spectrum_in_range() {
    for seed in 0..5 {
        let g = random_graph(60, 0.08, seed);
        for reg in regs(&g) {
            let l = dense_laplacian(&g, reg).unwrap();
            assert!((&l - l.transpose()).abs().max() < 1e-14);
            let vals = dense_eigenvalues(&g, reg).unwrap();
            assert!(vals[0] > -1e-12 && *vals.last().unwrap() < 2.0 + 1e-12);
        }
    }
}

#[test]
fn small_dense_spectra() {
    let vals = dense_eigenvalues(&complete(2), Regularization::vanilla()).unwrap();
    assert!((vals[0]).abs() < 1e-14 && (vals[1] - 2.0).abs() < 1e-14);
    let p3 = dense_spectrum(&path(3), Regularization::vanilla()).unwrap();
    for (a, b) in p3.eigenvalues.iter().zip([0.0, 1.0, 2.0]) {
        assert!((a - b).abs() < 1e-12);
    }
    assert!(p3.residuals.iter().all(|&r| r < 1e-12));
}

#[test]
fn lanczos_first_pair_is_kernel() {
    let g = random_graph(150, 0.05, 3);
    let op = LaplacianOperator::new(&g, Regularization::vanilla()).unwrap();
    let res = smallest_eigenpairs(&op, LanczosOptions::new(1)).unwrap();
    assert!(res.converged);
    assert!(res.eigenvalues[0].abs() < 1e-10);
    let k = op.kernel_vector().unwrap();
    let overlap: f64 = k.iter().zip(&res.eigenvectors[0]).map(|(a, b)| a * b).sum();
    assert!((overlap.abs() - 1.0).abs() < 1e-10);
}

#[test]
fn lanczos_agrees_with_dense() {
    for seed in 0..4 {
        let g = random_graph(120, 0.06, seed);
        for reg in regs(&g) {
            let op = LaplacianOperator::new(&g, reg).unwrap();
            let res = smallest_eigenpairs(&op, LanczosOptions::new(3).seed(seed)).unwrap();
            let dense = dense_eigenvalues(&g, reg).unwrap();
            assert!(res.converged);
            for i in 0..3 {
                assert!((res.eigenvalues[i] - dense[i]).abs() < 1e-8, "{reg:?}");
            }
            for i in 0..3 {
                for j in 0..i {
                    let d: f64 = res.eigenvectors[i]
                        .iter()
                        .zip(&res.eigenvectors[j])
                        .map(|(a, b)| a * b)
                        .sum();
                    assert!(d.abs() < 1e-8);
                }
            }
        }
    }
}

#[test]
fn lanczos_reproducible() {
    let g = random_graph(200, 0.03, 11);
    let op = LaplacianOperator::new(&g, Regularization::vanilla()).unwrap();
    let a = smallest_eigenpairs(&op, LanczosOptions::new(2).seed(5)).unwrap();
    let b = smallest_eigenpairs(&op, LanczosOptions::new(2).seed(5)).unwrap();
    assert_eq!(a, b);
}

#[test]
fn lanczos_reports_nonconvergence() {
    let g = random_graph(200, 0.03, 2);
    let op = LaplacianOperator::new(&g, Regularization::vanilla()).unwrap();
    let res = smallest_eigenpairs(&op, LanczosOptions::new(2).max_iterations(4)).unwrap();
    assert!(!res.converged);
    assert_eq!(res.iterations, 4);
    assert_eq!(res.eigenvalues.len(), 2);
}

#[test]
fn lanczos_rejects_bad_k() {
    let g = complete(3);
    let op = LaplacianOperator::new(&g, Regularization::vanilla()).unwrap();
    assert!(smallest_eigenpairs(&op, LanczosOptions::new(3)).is_err());
    assert!(smallest_eigenpairs(&op, LanczosOptions::new(0)).is_err());
}

#[test]
fn componentwise_counts_components() {
    // Two triangles and a path of four, disconnected.
    let g = Graph::from_unweighted(
        10,
        &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (6, 7), (7, 8), (8, 9)],
    )
    .unwrap();
    let res = smallest_eigenpairs_by_component(&g, Regularization::vanilla(), LanczosOptions::new(4)).unwrap();
    assert_eq!(&res.eigenvalues[..3], &[0.0, 0.0, 0.0]);
    // The first kernel vector lives on the largest component (the path).
    assert!(res.eigenvectors[0][6..].iter().all(|&a| a > 0.0));
    let dense = dense_eigenvalues(&g, Regularization::vanilla()).unwrap();
    assert!((res.eigenvalues[3] - dense[3]).abs() < 1e-10);
}

#[test]
fn sweep_on_barbell_finds_triangle() {
    let g = barbell();
    let spec = dense_spectrum(&g, Regularization::vanilla()).unwrap();
    let p = sweep_cut(&g, Scoring::Raw, &spec.eigenvectors[1]).unwrap();
    assert_eq!(p.stats.conductance, 1.0 / 7.0);
    assert!(p.set == set(&[0, 1, 2], 6) || p.set == set(&[3, 4, 5], 6));
    assert!(!p.degenerate);
}

#[test]
fn sweep_on_dangling_indicator() {
    // 6-node path dangling from a K8.
    let mut e: Vec<(usize, usize)> = (1..6).map(|i| (i - 1, i)).collect();
    e.push((5, 6));
    for i in 6..14 {
        for j in i + 1..14 {
            e.push((i, j));
        }
    }
    let g = Graph::from_unweighted(14, &e).unwrap();
    let v: Vec<f64> = (0..14).map(|i| if i < 6 { 1.0 } else { -1.0 }).collect();
    let p = sweep_cut(&g, Scoring::Raw, &v).unwrap();
    assert_eq!(p.set, NodeSet::new((0..6).collect(), 14).unwrap());
    assert_eq!(p.stats.conductance, 1.0 / 11.0);
}

#[test]
fn sweep_two_nodes_and_degenerate() {
    let g = complete(2);
    let p = sweep_cut(&g, Scoring::Raw, &[0.3, -0.1]).unwrap();
    assert_eq!(p.set.len(), 1);
    assert_eq!(p.stats.conductance, 1.0);
    let q = sweep_cut(&barbell(), Scoring::Raw, &[1.0; 6]).unwrap();
    assert!(q.degenerate);
    assert_eq!(q.set, set(&[0], 6));
}

#[test]
fn sweep_regularized_scores_corecut() {
    let g = barbell();
    let spec = dense_spectrum(&g, Regularization::new(2.0, Variant::EdgeWise).unwrap()).unwrap();
    let p = sweep_cut(&g, Scoring::Regularized { tau: 2.0 }, &spec.eigenvectors[1]).unwrap();
    let direct = crate::regularization::corecut(&g, 2.0, &p.set).unwrap().value;
    assert!((p.score - direct).abs() < 1e-14);
}
