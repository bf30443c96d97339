//! Immutable sparse undirected weighted graphs and the cut, volume and
//! conductance primitives the rest of the crate is built on.
//!
//! Adjacency is stored in compressed sparse row form with sorted rows, so a
//! graph can be shared freely across threads once built.

use std::collections::VecDeque;

use crate::error::{Error, Result};

/// A sparse undirected weighted graph without self-loops.
#[derive(Clone, Debug, PartialEq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<usize>,
    weights: Vec<f64>,
    degrees: Vec<f64>,
    total_volume: f64,
}

/// Options for [`Graph::from_edges`].
#[derive(Clone, Copy, Debug)]
pub struct BuildOptions {
    /// Treat each triple as a directed arc and take the symmetric closure.
    /// Arcs `(i, j)` and `(j, i)` collapse onto one undirected edge whose weight
    /// is the larger of the two directions.
    pub symmetrize: bool,
    /// Silently discard `(i, i, w)` triples instead of rejecting them.
    pub drop_self_loops: bool,
}

impl Default for BuildOptions {
    fn default() -> Self {
        Self {
            symmetrize: false,
            drop_self_loops: true,
        }
    }
}

impl Graph {
    /// Builds a graph on `n` nodes from `(i, j, weight)` triples.
    ///
    /// Repeated triples for the same pair (and, without `symmetrize`, the same
    /// unordered pair) are merged by summing their weights.
    pub fn from_edges(n: usize, edges: &[(usize, usize, f64)], opts: BuildOptions) -> Result<Self> {
        let mut arcs: Vec<(usize, usize, f64)> = Vec::with_capacity(edges.len());
        for &(i, j, w) in edges {
            for id in [i, j] {
                if id >= n {
                    return Err(Error::NodeOutOfRange { id, n });
                }
            }
            if !(w >= 0.0) || !w.is_finite() {
                return Err(Error::InvalidWeight { i, j, weight: w });
            }
            if i == j {
                if opts.drop_self_loops {
                    continue;
                }
                return Err(Error::InvalidArgument(format!(
                    "self-loop on node {i} (self-loops are not stored)"
                )));
            }
            arcs.push((i, j, w));
        }

        let undirected: Vec<(usize, usize, f64)> = if opts.symmetrize {
            // Merge duplicate arcs per direction, then collapse the two
            // directions of each pair with max.
            arcs.sort_by_key(|a| (a.0, a.1));
            let mut merged: Vec<(usize, usize, f64)> = Vec::with_capacity(arcs.len());
            for (i, j, w) in arcs {
                match merged.last_mut() {
                    Some(last) if last.0 == i && last.1 == j => last.2 += w,
                    _ => merged.push((i, j, w)),
                }
            }
            let mut pairs: Vec<(usize, usize, f64)> = merged
                .into_iter()
                .map(|(i, j, w)| (i.min(j), i.max(j), w))
                .collect();
            pairs.sort_by_key(|a| (a.0, a.1));
            let mut out: Vec<(usize, usize, f64)> = Vec::with_capacity(pairs.len());
            for (i, j, w) in pairs {
                match out.last_mut() {
                    Some(last) if last.0 == i && last.1 == j => last.2 = last.2.max(w),
                    _ => out.push((i, j, w)),
                }
            }
            out
        } else {
            let mut pairs: Vec<(usize, usize, f64)> = arcs
                .into_iter()
                .map(|(i, j, w)| (i.min(j), i.max(j), w))
                .collect();
            pairs.sort_by_key(|a| (a.0, a.1));
            let mut out: Vec<(usize, usize, f64)> = Vec::with_capacity(pairs.len());
            for (i, j, w) in pairs {
                match out.last_mut() {
                    Some(last) if last.0 == i && last.1 == j => last.2 += w,
                    _ => out.push((i, j, w)),
                }
            }
            out
        };

        Ok(Self::from_unique_pairs(n, &undirected))
    }

    /// Builds from pairs `(i, j, w)` with `i < j`, already deduplicated.
    fn from_unique_pairs(n: usize, pairs: &[(usize, usize, f64)]) -> Self {
        let mut counts = vec![0usize; n];
        for &(i, j, _) in pairs {
            counts[i] += 1;
            counts[j] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for c in &counts {
            offsets.push(offsets.last().unwrap() + c);
        }
        let nnz = *offsets.last().unwrap();
        let mut targets = vec![0usize; nnz];
        let mut weights = vec![0.0; nnz];
        let mut cursor = offsets[..n].to_vec();
        // Pairs are sorted by (i, j); filling both directions in this order
        // leaves every row sorted by neighbor id.
        for &(i, j, w) in pairs {
            targets[cursor[j]] = i;
            weights[cursor[j]] = w;
            cursor[j] += 1;
        }
        for &(i, j, w) in pairs {
            targets[cursor[i]] = j;
            weights[cursor[i]] = w;
            cursor[i] += 1;
        }
        for v in 0..n {
            let row = offsets[v]..offsets[v + 1];
            let mut idx: Vec<usize> = row.clone().collect();
            idx.sort_by_key(|&k| targets[k]);
            let t: Vec<usize> = idx.iter().map(|&k| targets[k]).collect();
            let w: Vec<f64> = idx.iter().map(|&k| weights[k]).collect();
            targets[row.clone()].copy_from_slice(&t);
            weights[row].copy_from_slice(&w);
        }
        let degrees: Vec<f64> = (0..n)
            .map(|v| weights[offsets[v]..offsets[v + 1]].iter().sum())
            .collect();
        let total_volume = degrees.iter().sum();
        Self {
            offsets,
            targets,
            weights,
            degrees,
            total_volume,
        }
    }

    /// Unweighted convenience constructor: every pair gets weight 1.
    pub fn from_unweighted(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let triples: Vec<_> = edges.iter().map(|&(i, j)| (i, j, 1.0)).collect();
        Self::from_edges(n, &triples, BuildOptions::default())
    }

    pub fn node_count(&self) -> usize {
        self.degrees.len()
    }

    /// Number of undirected edges.
    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    pub fn degree(&self, v: usize) -> f64 {
        self.degrees[v]
    }

    pub fn degrees(&self) -> &[f64] {
        &self.degrees
    }

    /// Number of neighbors of `v`, ignoring weights.
    pub fn neighbor_count(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn total_volume(&self) -> f64 {
        self.total_volume
    }

    /// Neighbors of `v` in increasing id order, with weights.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let row = self.offsets[v]..self.offsets[v + 1];
        self.targets[row.clone()]
            .iter()
            .copied()
            .zip(self.weights[row].iter().copied())
    }

    /// Weight of the edge `{i, j}`, zero when absent.
    pub fn weight(&self, i: usize, j: usize) -> f64 {
        let row = self.offsets[i]..self.offsets[i + 1];
        match self.targets[row.clone()].binary_search(&j) {
            Ok(k) => self.weights[row.start + k],
            Err(_) => 0.0,
        }
    }

    /// Each undirected edge once, as `(i, j, w)` with `i < j`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.node_count()).flat_map(move |i| {
            self.neighbors(i)
                .filter(move |&(j, _)| j > i)
                .map(move |(j, w)| (i, j, w))
        })
    }

    /// `y = A x` for the stored adjacency.
    pub fn adjacency_matvec(&self, x: &[f64], y: &mut [f64]) {
        for (v, out) in y.iter_mut().enumerate() {
            let row = self.offsets[v]..self.offsets[v + 1];
            *out = self.targets[row.clone()]
                .iter()
                .zip(&self.weights[row])
                .map(|(&t, &w)| w * x[t])
                .sum();
        }
    }

    pub fn volume(&self, s: &NodeSet) -> f64 {
        s.iter().map(|v| self.degrees[v]).sum()
    }

    pub fn is_connected(&self) -> bool {
        let n = self.node_count();
        n > 0 && components(self).1 == 1
    }
}

/// A sorted, duplicate-free set of node ids.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeSet {
    members: Vec<usize>,
}

impl NodeSet {
    /// Sorts and deduplicates `members`; every id must be `< n`.
    pub fn new(mut members: Vec<usize>, n: usize) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        if let Some(&id) = members.last() {
            if id >= n {
                return Err(Error::NodeOutOfRange { id, n });
            }
        }
        Ok(Self { members })
    }

    pub fn from_mask(mask: &[bool]) -> Self {
        Self {
            members: mask
                .iter()
                .enumerate()
                .filter_map(|(i, &m)| m.then_some(i))
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.members
    }

    pub fn complement(&self, n: usize) -> Self {
        let mask = self.mask(n);
        Self::from_mask(&mask.iter().map(|m| !m).collect::<Vec<_>>())
    }

    pub fn mask(&self, n: usize) -> Vec<bool> {
        let mut mask = vec![false; n];
        for v in self.iter() {
            mask[v] = true;
        }
        mask
    }

    /// Errors unless the set is non-empty and proper in a graph of `n` nodes.
    pub fn ensure_proper(&self, n: usize) -> Result<()> {
        if self.is_empty() || self.len() >= n {
            return Err(Error::ImproperSet {
                size: self.len(),
                n,
            });
        }
        Ok(())
    }
}

/// Cut, volumes and conductance of a bipartition `(S, S^c)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CutStats {
    /// Total weight of edges with exactly one endpoint in `S`.
    pub cut: f64,
    pub vol_s: f64,
    pub vol_sc: f64,
    /// `cut / min(vol_s, vol_sc)`; 1 when the smaller side has zero volume.
    pub conductance: f64,
}

impl CutStats {
    pub(crate) fn from_parts(cut: f64, vol_s: f64, vol_sc: f64) -> Self {
        let small = vol_s.min(vol_sc);
        let conductance = if small > 0.0 { cut / small } else { 1.0 };
        Self {
            cut,
            vol_s,
            vol_sc,
            conductance,
        }
    }
}

/// Cut statistics for `s`. Each crossing edge is counted once.
pub fn cut_stats(g: &Graph, s: &NodeSet) -> Result<CutStats> {
    let n = g.node_count();
    s.ensure_proper(n)?;
    let mask = s.mask(n);
    let mut cut = 0.0;
    let mut vol_s = 0.0;
    let mut vol_sc = 0.0;
    for v in 0..n {
        if mask[v] {
            vol_s += g.degree(v);
            cut += g
                .neighbors(v)
                .filter(|&(u, _)| !mask[u])
                .map(|(_, w)| w)
                .sum::<f64>();
        } else {
            vol_sc += g.degree(v);
        }
    }
    Ok(CutStats::from_parts(cut, vol_s, vol_sc))
}

/// Shorthand for `cut_stats(g, s)?.conductance`.
pub fn conductance(g: &Graph, s: &NodeSet) -> Result<f64> {
    Ok(cut_stats(g, s)?.conductance)
}

/// Bidirectional id map between a graph and a graph derived from it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeMap {
    pub old_to_new: Vec<Option<usize>>,
    pub new_to_old: Vec<usize>,
}

impl NodeMap {
    pub fn from_kept(old_n: usize, kept: &[usize]) -> Self {
        let mut old_to_new = vec![None; old_n];
        for (new, &old) in kept.iter().enumerate() {
            old_to_new[old] = Some(new);
        }
        Self {
            old_to_new,
            new_to_old: kept.to_vec(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.old_to_new.len() == self.new_to_old.len()
            && self.new_to_old.iter().enumerate().all(|(i, &o)| i == o)
    }
}

/// Component label per node and the number of components. Components are
/// labelled in order of their smallest node id.
pub fn components(g: &Graph) -> (Vec<usize>, usize) {
    let n = g.node_count();
    let mut label = vec![usize::MAX; n];
    let mut count = 0;
    let mut queue = VecDeque::new();
    for start in 0..n {
        if label[start] != usize::MAX {
            continue;
        }
        label[start] = count;
        queue.push_back(start);
        while let Some(v) = queue.pop_front() {
            for (u, _) in g.neighbors(v) {
                if label[u] == usize::MAX {
                    label[u] = count;
                    queue.push_back(u);
                }
            }
        }
        count += 1;
    }
    (label, count)
}

/// Node sets of all connected components, largest first; equal sizes are
/// ordered by smallest contained node id.
pub fn component_sets(g: &Graph) -> Vec<NodeSet> {
    let (label, count) = components(g);
    let mut sets = vec![Vec::new(); count];
    for (v, &c) in label.iter().enumerate() {
        sets[c].push(v);
    }
    // Stable sort keeps the smallest-id order among ties.
    sets.sort_by_key(|s| std::cmp::Reverse(s.len()));
    sets.into_iter().map(|members| NodeSet { members }).collect()
}

/// The largest connected component, reindexed densely in original id order.
pub fn largest_connected_component(g: &Graph) -> Result<(Graph, NodeMap)> {
    if g.node_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    let largest = component_sets(g).swap_remove(0);
    let sub = induced_subgraph(g, &largest)?;
    Ok((sub, NodeMap::from_kept(g.node_count(), largest.as_slice())))
}

/// Subgraph induced by `s`, with node `s[k]` renamed to `k`.
pub fn induced_subgraph(g: &Graph, s: &NodeSet) -> Result<Graph> {
    let n = g.node_count();
    if let Some(&id) = s.as_slice().last() {
        if id >= n {
            return Err(Error::NodeOutOfRange { id, n });
        }
    }
    let mut new_id = vec![usize::MAX; n];
    for (k, v) in s.iter().enumerate() {
        new_id[v] = k;
    }
    let pairs: Vec<(usize, usize, f64)> = g
        .edges()
        .filter(|&(i, j, _)| new_id[i] != usize::MAX && new_id[j] != usize::MAX)
        .map(|(i, j, w)| (new_id[i], new_id[j], w))
        .collect();
    // new ids are monotone in old ids, so pairs stay sorted with i < j.
    Ok(Graph::from_unique_pairs(s.len(), &pairs))
}
