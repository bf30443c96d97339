use crate::error::{Error, Result};
use crate::graph::{cut_stats, CutStats, Graph, NodeSet};
use crate::regularization::{corecut, corecut_from_parts};

/// Which graph scores the sweep.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Scoring {
    /// Conductance on the unregularized graph.
    Raw,
    /// Conductance on the edge-wise regularized graph, i.e. CoreCut.
    Regularized { tau: f64 },
}

impl Scoring {
    fn tau(self) -> f64 {
        match self {
            Scoring::Raw => 0.0,
            Scoring::Regularized { tau } => tau,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PartitionResult {
    /// The smaller-volume side under the scoring graph.
    pub set: NodeSet,
    /// Cut statistics on the unregularized graph.
    pub stats: CutStats,
    /// Objective value on the scoring graph.
    pub score: f64,
    /// CoreCut of `set` at the scoring `tau` (equals conductance for `Raw`).
    pub corecut_value: f64,
    pub smaller_side_size: usize,
    pub scoring: Scoring,
    /// `v` was constant, so every prefix tied.
    pub degenerate: bool,
}

/// Best threshold set `{j : v_j >= v_i}` over all `i`.
///
/// Nodes are ordered by `v` descending, ties by ascending id, and all `n - 1`
/// proper prefixes are scored incrementally. The first minimizing prefix wins.
pub fn sweep_cut(g: &Graph, scoring: Scoring, v: &[f64]) -> Result<PartitionResult> {
    let n = g.node_count();
    if v.len() != n {
        return Err(Error::InvalidArgument(format!(
            "vector length {} does not match {n} nodes",
            v.len()
        )));
    }
    if n < 2 {
        return Err(Error::InvalidArgument("sweep needs at least two nodes".into()));
    }
    let tau = scoring.tau();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| v[b].total_cmp(&v[a]).then(a.cmp(&b)));
    let degenerate = v.iter().all(|&x| x == v[0]);

    let total = g.total_volume();
    let mut in_prefix = vec![false; n];
    let mut cut = 0.0;
    let mut vol = 0.0;
    let mut best = (f64::INFINITY, 1usize);
    let scanned = if degenerate { 0 } else { n - 1 };
    for (t, &node) in order[..scanned].iter().enumerate() {
        let inside: f64 = g
            .neighbors(node)
            .filter(|&(u, _)| in_prefix[u])
            .map(|(_, w)| w)
            .sum();
        cut += g.degree(node) - 2.0 * inside;
        vol += g.degree(node);
        in_prefix[node] = true;
        let size = (t + 1) as f64;
        let (score, _) = corecut_from_parts(cut.max(0.0), vol, total - vol, size, n as f64 - size, n, tau);
        if score < best.0 {
            best = (score, t + 1);
        }
    }

    let prefix = NodeSet::new(order[..best.1].to_vec(), n)?;
    let rest = prefix.complement(n);
    let reg_vol = |s: &NodeSet| g.volume(s) + tau * s.len() as f64;
    let set = if reg_vol(&rest) < reg_vol(&prefix) { rest } else { prefix };
    let stats = cut_stats(g, &set)?;
    let cc = corecut(g, tau, &set)?.value;
    let smaller_side_size = set.len().min(n - set.len());
    Ok(PartitionResult {
        set,
        stats,
        score: match scoring {
            Scoring::Raw => stats.conductance,
            Scoring::Regularized { .. } => cc,
        },
        corecut_value: cc,
        smaller_side_size,
        scoring,
        degenerate,
    })
}
