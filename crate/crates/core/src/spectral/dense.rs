use nalgebra::DMatrix;

use super::operator::LaplacianOperator;
use super::SpectrumResult;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::regularization::{regularized_weight, Regularization};

/// Largest graph the dense routines accept.
pub const DENSE_LIMIT: usize = 2000;

/// Materialized `L_tau`.
pub fn dense_laplacian(g: &Graph, reg: Regularization) -> Result<DMatrix<f64>> {
    let n = g.node_count();
    if n > DENSE_LIMIT {
        return Err(Error::TooLarge {
            what: "dense Laplacian",
            n,
            limit: DENSE_LIMIT,
        });
    }
    let op = LaplacianOperator::new(g, reg)?;
    let s = op.inv_sqrt_degrees();
    let mut l = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let m = s[i] * regularized_weight(g, reg, i, j) * s[j];
            l[(i, j)] = if i == j { 1.0 - m } else { -m };
        }
    }
    Ok(l)
}

/// Full spectrum of the materialized `L_tau`, ascending.
pub fn dense_spectrum(g: &Graph, reg: Regularization) -> Result<SpectrumResult> {
    let l = dense_laplacian(g, reg)?;
    let n = l.nrows();
    let eig = l.symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let op = LaplacianOperator::new(g, reg)?;
    let mut eigenvalues = Vec::with_capacity(n);
    let mut eigenvectors = Vec::with_capacity(n);
    let mut residuals = Vec::with_capacity(n);
    let mut y = vec![0.0; n];
    for &c in &order {
        let lambda = eig.eigenvalues[c];
        let v: Vec<f64> = eig.eigenvectors.column(c).iter().copied().collect();
        op.apply(&v, &mut y);
        residuals.push(
            y.iter()
                .zip(&v)
                .map(|(a, b)| (a - lambda * b).powi(2))
                .sum::<f64>()
                .sqrt(),
        );
        eigenvalues.push(lambda);
        eigenvectors.push(v);
    }
    Ok(SpectrumResult {
        eigenvalues,
        eigenvectors,
        matvec_count: 0,
        iterations: 0,
        converged: true,
        residuals,
    })
}

/// Eigenvalues only, ascending. Much cheaper than [`dense_spectrum`].
pub fn dense_eigenvalues(g: &Graph, reg: Regularization) -> Result<Vec<f64>> {
    let l = dense_laplacian(g, reg)?;
    let mut v: Vec<f64> = l.symmetric_eigenvalues().iter().copied().collect();
    v.sort_by(f64::total_cmp);
    Ok(v)
}
