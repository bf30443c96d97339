use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::regularization::{Regularization, Variant};

/// Implicit normalized Laplacian `L_tau = I - M` with
/// `M = D_tau^{-1/2} A_tau D_tau^{-1/2}`. Never densifies.
///
/// For the edge-wise variant the all-ones block contributes the rank-one
/// term `(tau/n) u u^T` with `u = D_tau^{-1/2} 1`.
#[derive(Clone, Debug)]
pub struct LaplacianOperator<'g> {
    graph: &'g Graph,
    reg: Regularization,
    inv_sqrt: Vec<f64>,
    rank_one: f64,
}

impl<'g> LaplacianOperator<'g> {
    pub fn new(graph: &'g Graph, reg: Regularization) -> Result<Self> {
        let n = graph.node_count();
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut inv_sqrt = Vec::with_capacity(n);
        for v in 0..n {
            let d = graph.degree(v) + reg.tau();
            if d <= 0.0 {
                return Err(Error::ZeroDegree { node: v });
            }
            inv_sqrt.push(1.0 / d.sqrt());
        }
        let rank_one = match reg.variant() {
            Variant::EdgeWise => reg.tau() / n as f64,
            Variant::DegreeOnly => 0.0,
        };
        Ok(Self {
            graph,
            reg,
            inv_sqrt,
            rank_one,
        })
    }

    pub fn dim(&self) -> usize {
        self.inv_sqrt.len()
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn regularization(&self) -> Regularization {
        self.reg
    }

    /// `D_tau^{-1/2}` diagonal.
    pub fn inv_sqrt_degrees(&self) -> &[f64] {
        &self.inv_sqrt
    }

    /// `y = M x`.
    pub fn apply_normalized(&self, x: &[f64], y: &mut [f64]) {
        let scaled: Vec<f64> = x.iter().zip(&self.inv_sqrt).map(|(a, s)| a * s).collect();
        self.graph.adjacency_matvec(&scaled, y);
        for (out, s) in y.iter_mut().zip(&self.inv_sqrt) {
            *out *= s;
        }
        if self.rank_one != 0.0 {
            let ux: f64 = scaled.iter().sum();
            let c = self.rank_one * ux;
            for (out, s) in y.iter_mut().zip(&self.inv_sqrt) {
                *out += c * s;
            }
        }
    }

    /// `y = L_tau x`.
    pub fn apply(&self, x: &[f64], y: &mut [f64]) {
        self.apply_normalized(x, y);
        for (out, a) in y.iter_mut().zip(x) {
            *out = a - *out;
        }
    }

    /// Unit vector spanning the kernel of `L_tau` (`D_tau^{1/2} 1`), when the
    /// operator has one: vanilla and edge-wise regularization on a connected
    /// graph. `None` for the degree-only regularizer.
    pub fn kernel_vector(&self) -> Option<Vec<f64>> {
        if self.reg.variant() == Variant::DegreeOnly && !self.reg.is_vanilla() {
            return None;
        }
        let mut v: Vec<f64> = self.inv_sqrt.iter().map(|s| 1.0 / s).collect();
        let norm = v.iter().map(|a| a * a).sum::<f64>().sqrt();
        v.iter_mut().for_each(|a| *a /= norm);
        Some(v)
    }

    /// Rayleigh quotient `x^T L x / x^T x`.
    pub fn rayleigh_quotient(&self, x: &[f64]) -> f64 {
        let mut y = vec![0.0; x.len()];
        self.apply(x, &mut y);
        dot(x, &y) / dot(x, x)
    }
}

/// `L_tau x` as a fresh vector.
pub fn laplacian_matvec(op: &LaplacianOperator<'_>, x: &[f64]) -> Result<Vec<f64>> {
    if x.len() != op.dim() {
        return Err(Error::InvalidArgument(format!(
            "vector length {} does not match operator dimension {}",
            x.len(),
            op.dim()
        )));
    }
    let mut y = vec![0.0; x.len()];
    op.apply(x, &mut y);
    Ok(y)
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}
