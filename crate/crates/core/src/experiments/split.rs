use rand::seq::SliceRandom;

use crate::error::{Error, Result};
use crate::graph::{cut_stats, largest_connected_component, BuildOptions, Graph, NodeMap, NodeSet};
use crate::rng::{self, streams};

/// An exact random partition of the edges into train and test halves.
#[derive(Clone, Debug, PartialEq)]
pub struct EdgeSplit {
    /// Largest component of the kept edges, reindexed.
    pub train: Graph,
    /// Original ids to train ids.
    pub train_map: NodeMap,
    /// Kept edges in original ids, before trimming.
    pub train_edges: Vec<(usize, usize, f64)>,
    /// Held-out edges in original ids.
    pub test_edges: Vec<(usize, usize, f64)>,
    pub seed: u64,
    pub kept_fraction: f64,
}

impl EdgeSplit {
    /// Test edges with both endpoints in the train graph, on train ids.
    pub fn test_graph(&self) -> Result<Graph> {
        let map = &self.train_map.old_to_new;
        let edges: Vec<(usize, usize, f64)> = self
            .test_edges
            .iter()
            .filter_map(|&(i, j, w)| Some((map[i]?, map[j]?, w)))
            .collect();
        Graph::from_edges(self.train.node_count(), &edges, BuildOptions::default())
    }
}

/// Keeps `round(fraction * m)` uniformly chosen edges for training.
pub fn split_edges(g: &Graph, fraction: f64, seed: u64) -> Result<EdgeSplit> {
    if !(fraction > 0.0 && fraction < 1.0) {
        return Err(Error::InvalidArgument(format!("split fraction must lie in (0, 1), got {fraction}")));
    }
    let mut edges: Vec<(usize, usize, f64)> = g.edges().collect();
    let mut rng = rng::stream(seed, streams::EDGE_SPLIT);
    edges.shuffle(&mut rng);
    let keep = (fraction * edges.len() as f64).round() as usize;
    let test_edges = edges.split_off(keep);
    let mut train_edges = edges;
    train_edges.sort_by_key(|a| (a.0, a.1));
    let kept = Graph::from_edges(g.node_count(), &train_edges, BuildOptions::default())?;
    if kept.edge_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    let (train, train_map) = largest_connected_component(&kept)?;
    Ok(EdgeSplit {
        train,
        train_map,
        train_edges,
        test_edges,
        seed,
        kept_fraction: fraction,
    })
}

/// Conductance of `s` (train ids) on the held-out edges; 1 when the smaller
/// side has no test volume.
pub fn test_conductance(test_graph: &Graph, s: &NodeSet) -> Result<f64> {
    Ok(cut_stats(test_graph, s)?.conductance)
}
