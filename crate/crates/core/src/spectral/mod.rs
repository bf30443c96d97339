//! Laplacian operators, eigensolvers, sweep cuts, and eigenvector diagnostics.

mod dense;
mod diagnostics;
mod lanczos;
mod operator;
mod sweep;
mod tridiagonal;

pub use dense::{dense_eigenvalues, dense_laplacian, dense_spectrum, DENSE_LIMIT};
pub use diagnostics::{eigengap, inverse_participation_ratio};
pub use lanczos::{smallest_eigenpairs, LanczosOptions};
pub use operator::{laplacian_matvec, LaplacianOperator};
pub use sweep::{sweep_cut, PartitionResult, Scoring};

use crate::error::{Error, Result};
use crate::graph::{component_sets, induced_subgraph, Graph};
use crate::regularization::{Regularization, Variant};

/// Eigenpairs of a Laplacian, eigenvalues ascending.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumResult {
    pub eigenvalues: Vec<f64>,
    /// Unit-norm eigenvectors, one per eigenvalue.
    pub eigenvectors: Vec<Vec<f64>>,
    pub matvec_count: usize,
    pub iterations: usize,
    pub converged: bool,
    /// `||L v - lambda v||` per pair.
    pub residuals: Vec<f64>,
}

/// Components at or below this size are solved densely by
/// [`smallest_eigenpairs_by_component`].
const SMALL_COMPONENT: usize = 200;

/// The `k` smallest eigenpairs of `L_tau` on a possibly disconnected graph.
///
/// When the operator is block diagonal (vanilla, or degree-only
/// regularization) each component is solved on its own and the results are
/// merged, which resolves the multiplicity of eigenvalue 0 that a single
/// Krylov sequence cannot see. For the vanilla Laplacian each component's
/// kernel pair is set exactly to `(0, D^{1/2} 1 / ||.||)`; equal eigenvalues
/// are ordered by component, largest component first. Edge-wise
/// regularization couples all nodes and is solved on the whole graph.
pub fn smallest_eigenpairs_by_component(
    g: &Graph,
    reg: Regularization,
    opts: LanczosOptions,
) -> Result<SpectrumResult> {
    let n = g.node_count();
    if opts.k == 0 || opts.k > n {
        return Err(Error::InvalidArgument(format!("need 0 < k <= n (k = {}, n = {n})", opts.k)));
    }
    let coupled = reg.variant() == Variant::EdgeWise && !reg.is_vanilla();
    if coupled {
        let op = LaplacianOperator::new(g, reg)?;
        if n <= SMALL_COMPONENT || opts.k >= n {
            return truncate(dense_spectrum(g, reg)?, opts.k);
        }
        return smallest_eigenpairs(&op, opts);
    }

    struct Pair {
        value: f64,
        component: usize,
        rank: usize,
        vector: Vec<f64>,
        residual: f64,
    }
    let mut pairs = Vec::new();
    let mut matvecs = 0;
    let mut iterations = 0;
    let mut converged = true;
    for (c, members) in component_sets(g).iter().enumerate() {
        let sub = induced_subgraph(g, members)?;
        let size = sub.node_count();
        let want = opts.k.min(size);
        let mut res = if size <= SMALL_COMPONENT || want >= size {
            truncate(dense_spectrum(&sub, reg)?, want)?
        } else {
            let op = LaplacianOperator::new(&sub, reg)?;
            smallest_eigenpairs(&op, LanczosOptions { k: want, ..opts })?
        };
        if reg.is_vanilla() {
            let op = LaplacianOperator::new(&sub, reg)?;
            res.eigenvalues[0] = 0.0;
            res.eigenvectors[0] = op.kernel_vector().expect("vanilla operator has a kernel");
            res.residuals[0] = 0.0;
        }
        matvecs += res.matvec_count;
        iterations += res.iterations;
        converged &= res.converged;
        for (rank, ((value, vector), residual)) in res
            .eigenvalues
            .into_iter()
            .zip(res.eigenvectors)
            .zip(res.residuals)
            .enumerate()
        {
            let mut full = vec![0.0; n];
            for (local, v) in members.iter().enumerate() {
                full[v] = vector[local];
            }
            pairs.push(Pair {
                value,
                component: c,
                rank,
                vector: full,
                residual,
            });
        }
    }
    pairs.sort_by(|a, b| {
        a.value
            .total_cmp(&b.value)
            .then(a.component.cmp(&b.component))
            .then(a.rank.cmp(&b.rank))
    });
    pairs.truncate(opts.k);
    Ok(SpectrumResult {
        eigenvalues: pairs.iter().map(|p| p.value).collect(),
        residuals: pairs.iter().map(|p| p.residual).collect(),
        eigenvectors: pairs.into_iter().map(|p| p.vector).collect(),
        matvec_count: matvecs,
        iterations,
        converged,
    })
}

fn truncate(mut res: SpectrumResult, k: usize) -> Result<SpectrumResult> {
    res.eigenvalues.truncate(k);
    res.eigenvectors.truncate(k);
    res.residuals.truncate(k);
    Ok(res)
}

#[cfg(test)]
mod tests;
