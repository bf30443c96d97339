//! g-dangling sets: trees of `g` nodes attached to the rest of the graph by a
//! single edge.
//!
//! Such a set hangs off a bridge, so enumeration is one bridge-finding DFS
//! followed by constant-time checks per bridge.

use std::collections::BTreeMap;
use std::io::Write;

use crate::error::{Error, Result};
use crate::graph::{components, induced_subgraph, Graph, NodeSet};
use crate::spectral::SpectrumResult;

/// One enumerated dangling set.
#[derive(Clone, Debug, PartialEq)]
pub struct DanglingSet {
    pub g: usize,
    pub members: NodeSet,
    /// The bridge, as `(inside, outside)`.
    pub bridge: (usize, usize),
}

#[derive(Clone, Debug, PartialEq)]
pub struct DanglingCensus {
    /// Count per `g` in `2..=g_max`.
    pub counts: BTreeMap<usize, usize>,
    pub sets: Vec<DanglingSet>,
    pub n: usize,
    pub seed: Option<u64>,
    pub component_clause: bool,
}

impl DanglingCensus {
    pub fn count(&self, g: usize) -> usize {
        self.counts.get(&g).copied().unwrap_or(0)
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn sets_of_size(&self, g: usize) -> impl Iterator<Item = &DanglingSet> + '_ {
        self.sets.iter().filter(move |s| s.g == g)
    }

    /// Columns `g,count,n,seed`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["g", "count", "n", "seed"])?;
        let seed = self.seed.map(|s| s.to_string()).unwrap_or_default();
        for (g, c) in &self.counts {
            w.write_record([g.to_string(), c.to_string(), self.n.to_string(), seed.clone()])?;
        }
        w.flush()?;
        Ok(())
    }
}

fn component_sizes(g: &Graph) -> (Vec<usize>, Vec<usize>) {
    let (label, count) = components(g);
    let mut size = vec![0; count];
    for &c in &label {
        size[c] += 1;
    }
    (label, size)
}

/// Whether `s` is a g-dangling set: `|S| = g`, the induced subgraph is a tree,
/// exactly one edge leaves `S`, and (when `enforce_component_clause`) the
/// component containing `S` has at least `10 g` nodes.
pub fn is_g_dangling(graph: &Graph, s: &NodeSet, g: usize, enforce_component_clause: bool) -> bool {
    let n = graph.node_count();
    if s.len() != g || g == 0 || s.as_slice().last().is_some_and(|&v| v >= n) {
        return false;
    }
    let mask = s.mask(n);
    let mut internal = 0usize;
    let mut crossing = 0usize;
    for v in s.iter() {
        for (u, _) in graph.neighbors(v) {
            if mask[u] {
                internal += 1;
            } else {
                crossing += 1;
            }
        }
    }
    if crossing != 1 || internal != 2 * (g - 1) {
        return false;
    }
    if !induced_subgraph(graph, s).is_ok_and(|t| t.is_connected()) {
        return false;
    }
    if enforce_component_clause {
        let (label, size) = component_sizes(graph);
        return size[label[s.as_slice()[0]]] >= 10 * g;
    }
    true
}

/// All g-dangling sets for `g` in `2..=g_max`.
pub fn enumerate_dangling(graph: &Graph, g_max: usize, enforce_component_clause: bool) -> Result<DanglingCensus> {
    if g_max < 2 {
        return Err(Error::InvalidArgument(format!("g_max must be at least 2, got {g_max}")));
    }
    let n = graph.node_count();
    let (label, comp_size) = component_sizes(graph);
    let mut comp_edges = vec![0usize; comp_size.len()];
    for v in 0..n {
        comp_edges[label[v]] += graph.neighbor_count(v);
    }
    comp_edges.iter_mut().for_each(|e| *e /= 2);

    // Iterative DFS computing discovery times, low links, subtree sizes and
    // subtree half-edge counts.
    const NONE: usize = usize::MAX;
    let mut disc = vec![NONE; n];
    let mut low = vec![0usize; n];
    let mut parent = vec![NONE; n];
    let mut sub_size = vec![1usize; n];
    let mut sub_half_edges = vec![0usize; n];
    let mut cursor = vec![0usize; n];
    let mut time = 0;
    // (child, parent) pairs for tree edges that are bridges.
    let mut bridges = Vec::new();
    let adj: Vec<Vec<usize>> = (0..n).map(|v| graph.neighbors(v).map(|(u, _)| u).collect()).collect();
    for root in 0..n {
        if disc[root] != NONE {
            continue;
        }
        let mut stack = vec![root];
        disc[root] = time;
        low[root] = time;
        time += 1;
        while let Some(&v) = stack.last() {
            if cursor[v] < adj[v].len() {
                let u = adj[v][cursor[v]];
                cursor[v] += 1;
                if disc[u] == NONE {
                    parent[u] = v;
                    disc[u] = time;
                    low[u] = time;
                    time += 1;
                    stack.push(u);
                } else if u != parent[v] {
                    low[v] = low[v].min(disc[u]);
                }
            } else {
                stack.pop();
                sub_half_edges[v] += adj[v].len();
                let p = parent[v];
                if p != NONE {
                    low[p] = low[p].min(low[v]);
                    sub_size[p] += sub_size[v];
                    sub_half_edges[p] += sub_half_edges[v];
                    if low[v] > disc[p] {
                        bridges.push((v, p));
                    }
                }
            }
        }
    }

    let mut counts: BTreeMap<usize, usize> = (2..=g_max).map(|g| (g, 0)).collect();
    let mut sets = Vec::new();
    let collect_subtree = |root: usize| -> Vec<usize> {
        let mut out = vec![root];
        let mut i = 0;
        while i < out.len() {
            let v = out[i];
            out.extend(adj[v].iter().copied().filter(|&u| parent[u] == v && u != root && disc[u] > disc[v]));
            i += 1;
        }
        out
    };
    for &(child, p) in &bridges {
        let c = label[child];
        let size_c = comp_size[c];
        // The subtree side's only outside edge is the bridge itself.
        let inner = sub_size[child];
        let inner_edges = (sub_half_edges[child] - 1) / 2;
        let outer = size_c - inner;
        let outer_edges = comp_edges[c] - inner_edges - 1;
        let clause = |g: usize| !enforce_component_clause || size_c >= 10 * g;
        if (2..=g_max).contains(&inner) && inner_edges == inner - 1 && clause(inner) {
            let members = NodeSet::new(collect_subtree(child), n)?;
            *counts.get_mut(&inner).expect("g in range") += 1;
            sets.push(DanglingSet {
                g: inner,
                members,
                bridge: (child, p),
            });
        }
        if (2..=g_max).contains(&outer) && outer_edges == outer - 1 && clause(outer) {
            let inside = NodeSet::new(collect_subtree(child), n)?;
            let members: Vec<usize> = (0..n).filter(|&v| label[v] == c && !inside.contains(v)).collect();
            *counts.get_mut(&outer).expect("g in range") += 1;
            sets.push(DanglingSet {
                g: outer,
                members: NodeSet::new(members, n)?,
                bridge: (p, child),
            });
        }
    }
    sets.sort_by(|a, b| a.g.cmp(&b.g).then_with(|| a.members.as_slice().cmp(b.members.as_slice())));
    Ok(DanglingCensus {
        counts,
        sets,
        n,
        seed: None,
        component_clause: enforce_component_clause,
    })
}

/// `f_i = sqrt(d_i / vol(S))` on `S`, zero elsewhere.
pub fn dangling_identifier(graph: &Graph, s: &NodeSet) -> Result<Vec<f64>> {
    let n = graph.node_count();
    if s.as_slice().last().is_some_and(|&v| v >= n) {
        return Err(Error::ImproperSet { size: s.len(), n });
    }
    let vol = graph.volume(s);
    if !(vol > 0.0) {
        return Err(Error::InvalidArgument("identifier needs a set of positive volume".into()));
    }
    let mut f = vec![0.0; n];
    for v in s.iter() {
        f[v] = (graph.degree(v) / vol).sqrt();
    }
    Ok(f)
}

/// Number of eigenvalues strictly below `threshold`. Laplacian spectra are
/// nonnegative, so roundoff below zero never counts against `threshold <= 0`.
pub fn count_small_eigenvalues(spectrum: &SpectrumResult, threshold: f64) -> usize {
    if threshold <= 0.0 {
        return 0;
    }
    spectrum.eigenvalues.iter().filter(|&&l| l < threshold).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{plant_dangling, sample_inhomogeneous, InhomogeneousSpec};
    use crate::graph::cut_stats;
    use crate::graph::fixtures::{cycle, path, set};
    use crate::regularization::Regularization;
    use crate::spectral::{dense_spectrum, LaplacianOperator};
    use proptest::prelude::*;

    fn er_with_plants(n: usize, p: f64, g: usize, count: usize, seed: u64) -> (Graph, Vec<crate::generators::DanglingRecord>) {
        let host = sample_inhomogeneous(&InhomogeneousSpec::erdos_renyi(n, p), seed).unwrap();
        plant_dangling(&host, g, count, seed).unwrap()
    }

    #[test]
    fn planted_records_are_dangling() {
        let (g, recs) = er_with_plants(200, 0.05, 6, 4, 3);
        for r in &recs {
            assert!(is_g_dangling(&g, &r.members, 6, true));
        }
    }

    #[test]
    fn clause_violations() {
        // Triangle 0-1-2 hanging from 3 by edge 2-3, plus a long path.
        let mut e = vec![(0, 1), (1, 2), (0, 2), (2, 3)];
        e.extend((3..40).map(|i| (i, i + 1)));
        let g = Graph::from_unweighted(41, &e).unwrap();
        assert!(!is_g_dangling(&g, &set(&[0, 1, 2], 41), 3, false));
        // Path 0-1-2 inside a cycle has two crossing edges.
        let c = cycle(40);
        assert!(!is_g_dangling(&c, &set(&[0, 1, 2], 40), 3, false));
        // Path end: exactly one crossing edge; component clause depends on size.
        let p = path(20);
        assert!(is_g_dangling(&p, &set(&[0, 1, 2], 20), 3, false));
        assert!(!is_g_dangling(&p, &set(&[0, 1, 2], 20), 3, true));
        assert!(!is_g_dangling(&p, &set(&[0, 1], 20), 3, false));
    }

    #[test]
    fn planted_sets_enumerated() {
        let (g, recs) = er_with_plants(300, 0.03, 4, 5, 7);
        let census = enumerate_dangling(&g, 6, true).unwrap();
        assert!(census.count(4) >= 5);
        for r in &recs {
            assert!(census.sets_of_size(4).any(|s| s.members == r.members));
        }
    }

    #[test]
    fn cycle_has_none() {
        let census = enumerate_dangling(&cycle(50), 10, false).unwrap();
        assert!(census.counts.values().all(|&c| c == 0));
        assert!(enumerate_dangling(&cycle(5), 1, false).is_err());
    }

    #[test]
    fn both_sides_of_a_bridge() {
        // Two paths of 3 joined by an edge: without the clause each side counts.
        let g = path(6);
        let census = enumerate_dangling(&g, 5, false).unwrap();
        let threes: Vec<_> = census.sets_of_size(3).map(|s| s.members.clone()).collect();
        assert_eq!(threes, vec![set(&[0, 1, 2], 6), set(&[3, 4, 5], 6)]);
        assert_eq!(census.count(2), 2);
        assert!(enumerate_dangling(&g, 5, true).unwrap().sets.is_empty());
    }

    #[test]
    fn census_csv() {
        let census = enumerate_dangling(&path(6), 3, false).unwrap().with_seed(4);
        let mut buf = Vec::new();
        census.write_csv(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "g,count,n,seed\n2,2,6,4\n3,2,6,4\n");
    }

    #[test]
    fn identifier_rayleigh_quotients() {
        let (g, recs) = er_with_plants(150, 0.06, 5, 3, 1);
        let (g, map) = crate::graph::largest_connected_component(&g).unwrap();
        let op = LaplacianOperator::new(&g, Regularization::vanilla()).unwrap();
        for r in &recs {
            let members: Vec<usize> = r.members.iter().map(|v| map.old_to_new[v].unwrap()).collect();
            let s = NodeSet::new(members, g.node_count()).unwrap();
            let f = dangling_identifier(&g, &s).unwrap();
            let norm: f64 = f.iter().map(|x| x * x).sum();
            assert!((norm - 1.0).abs() < 1e-12);
            assert!((op.rayleigh_quotient(&f) - 1.0 / 9.0).abs() < 1e-12);
        }
        let all = NodeSet::new((0..g.node_count()).collect(), g.node_count()).unwrap();
        let f = dangling_identifier(&g, &all).unwrap();
        assert!(op.rayleigh_quotient(&f).abs() < 1e-12);
        let isolated = Graph::from_unweighted(3, &[(0, 1)]).unwrap();
        assert!(dangling_identifier(&isolated, &set(&[2], 3)).is_err());
    }

    #[test]
    fn small_eigenvalue_counts() {
        let (g, _) = er_with_plants(120, 0.08, 4, 20, 5);
        let (g, _) = crate::graph::largest_connected_component(&g).unwrap();
        let spec = dense_spectrum(&g, Regularization::vanilla()).unwrap();
        assert_eq!(count_small_eigenvalues(&spec, 0.0), 0);
        assert_eq!(count_small_eigenvalues(&spec, 1e-9), 1);
        assert!(count_small_eigenvalues(&spec, 1.0 / 3.0) >= 10);
    }

    proptest! {
        #[test]
        fn enumeration_invariants(seed in 0u64..500, g in 2usize..7) {
            let (graph, recs) = er_with_plants(100, 0.04, g, 3, seed);
            let census = enumerate_dangling(&graph, 8, true).unwrap();
            for s in &census.sets {
                prop_assert!(is_g_dangling(&graph, &s.members, s.g, true));
                let phi = cut_stats(&graph, &s.members).unwrap().conductance;
                prop_assert!((phi - 1.0 / (2 * s.g - 1) as f64).abs() <= 1e-12);
            }
            for k in 2..=8 {
                prop_assert!(census.count(k) * k <= graph.node_count());
                let mut seen = vec![false; graph.node_count()];
                for s in census.sets_of_size(k) {
                    for v in s.members.iter() {
                        prop_assert!(!seen[v]);
                        seen[v] = true;
                    }
                }
            }
            for r in &recs {
                prop_assert!(census.sets_of_size(g).any(|s| s.members == r.members));
            }
        }
    }
}
