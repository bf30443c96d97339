//! Lanczos iteration with full reorthogonalization for the smallest
//! eigenpairs of a normalized Laplacian.
//!
//! The iteration runs on `M = I - L_tau`, whose largest eigenvalues are the
//! smallest of `L_tau`. No restarts: the Krylov basis grows until all `k`
//! Ritz residual estimates `|beta_m s_{m,i}|` drop below `tol` or the
//! iteration budget runs out. On an invariant-subspace breakdown the basis is
//! continued with a fresh random vector orthogonal to it.

use rand::Rng as _;

use super::operator::{dot, norm, LaplacianOperator};
use super::tridiagonal::tridiagonal_eigen;
use super::SpectrumResult;
use crate::error::{Error, Result};
use crate::rng::{self, streams};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LanczosOptions {
    pub k: usize,
    pub tol: f64,
    /// Defaults to `min(n, 10 k + 300)`.
    pub max_iterations: Option<usize>,
    pub seed: u64,
}

impl LanczosOptions {
    pub fn new(k: usize) -> Self {
        Self {
            k,
            tol: 1e-10,
            max_iterations: None,
            seed: 0,
        }
    }

    pub fn tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn max_iterations(mut self, m: usize) -> Self {
        self.max_iterations = Some(m);
        self
    }

    fn budget(&self, n: usize) -> usize {
        self.max_iterations
            .unwrap_or(10 * self.k + 300)
            .min(n)
            .max(self.k)
    }
}

fn random_unit(rng: &mut rng::Rng, n: usize) -> Vec<f64> {
    let mut v: Vec<f64> = (0..n).map(|_| rng.random::<f64>() - 0.5).collect();
    let nv = norm(&v);
    v.iter_mut().for_each(|a| *a /= nv);
    v
}

/// Subtracts the projection onto every basis vector, twice.
fn reorthogonalize(basis: &[Vec<f64>], w: &mut [f64]) {
    for _ in 0..2 {
        for q in basis {
            let c = dot(q, w);
            for (a, b) in w.iter_mut().zip(q) {
                *a -= c * b;
            }
        }
    }
}

/// The `k` smallest eigenpairs of `op`, ascending.
///
/// Non-convergence is not an error: the best Ritz pairs are returned with
/// `converged = false`.
pub fn smallest_eigenpairs(op: &LaplacianOperator<'_>, opts: LanczosOptions) -> Result<SpectrumResult> {
    let n = op.dim();
    let k = opts.k;
    if k == 0 || k >= n {
        return Err(Error::InvalidArgument(format!(
            "need 0 < k < n for the iterative solver (k = {k}, n = {n})"
        )));
    }
    if !(opts.tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {}", opts.tol)));
    }
    let budget = opts.budget(n);
    let mut rng = rng::stream(opts.seed, streams::LANCZOS_START);

    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(budget);
    let mut alphas: Vec<f64> = Vec::with_capacity(budget);
    let mut betas: Vec<f64> = Vec::with_capacity(budget);
    let mut matvecs = 0usize;
    let mut q = random_unit(&mut rng, n);
    let mut w = vec![0.0; n];
    let mut estimated = false;

    while basis.len() < budget {
        op.apply_normalized(&q, &mut w);
        matvecs += 1;
        let alpha = dot(&q, &w);
        basis.push(q);
        alphas.push(alpha);
        reorthogonalize(&basis, &mut w);
        let beta = norm(&w);
        let m = basis.len();

        let breakdown = beta <= 1e-12 * alphas.iter().fold(1.0f64, |acc, a| acc.max(a.abs()));
        if m >= k {
            let (vals, last) = tridiagonal_eigen(&alphas, &betas, &[m - 1]);
            let worst = (0..k)
                .map(|i| (beta * last[0][m - 1 - i]).abs())
                .fold(0.0, f64::max);
            let _ = vals;
            if worst <= opts.tol || breakdown {
                estimated = true;
                break;
            }
        }
        if m == budget {
            break;
        }
        if breakdown {
            let mut fresh = random_unit(&mut rng, n);
            reorthogonalize(&basis, &mut fresh);
            let nf = norm(&fresh);
            fresh.iter_mut().for_each(|a| *a /= nf);
            betas.push(0.0);
            q = fresh;
        } else {
            betas.push(beta);
            q = w.iter().map(|a| a / beta).collect();
        }
    }

    let m = basis.len();
    let rows: Vec<usize> = (0..m).collect();
    let (vals, z) = tridiagonal_eigen(&alphas, &betas, &rows);
    let mut eigenvalues = Vec::with_capacity(k);
    let mut eigenvectors = Vec::with_capacity(k);
    let mut residuals = Vec::with_capacity(k);
    let mut mv = vec![0.0; n];
    for i in 0..k {
        let col = m - 1 - i;
        let theta = vals[col];
        let mut y = vec![0.0; n];
        for (j, qj) in basis.iter().enumerate() {
            let c = z[j][col];
            if c != 0.0 {
                for (a, b) in y.iter_mut().zip(qj) {
                    *a += c * b;
                }
            }
        }
        let ny = norm(&y);
        y.iter_mut().for_each(|a| *a /= ny);
        op.apply_normalized(&y, &mut mv);
        matvecs += 1;
        let r = mv
            .iter()
            .zip(&y)
            .map(|(a, b)| (a - theta * b).powi(2))
            .sum::<f64>()
            .sqrt();
        eigenvalues.push(1.0 - theta);
        eigenvectors.push(y);
        residuals.push(r);
    }
    let converged = estimated && residuals.iter().all(|&r| r <= opts.tol);
    Ok(SpectrumResult {
        eigenvalues,
        eigenvectors,
        matvec_count: matvecs,
        iterations: m,
        converged,
        residuals,
    })
}
