//! Seeded random-graph models: inhomogeneous (independent-edge) graphs,
//! degree-corrected stochastic block models, planted dangling trees, and the
//! composite core-periphery instance.
//!
//! Constant-probability blocks are sampled by geometric skipping, so sparse
//! models cost `O(n + m)` rather than `O(n^2)`.

use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{component_sets, BuildOptions, Graph, NodeSet};
use crate::rng::{self, streams, Rng};

type EdgeList = Vec<(usize, usize, f64)>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProbabilitySource {
    /// Full symmetric matrix `p_ij` with zero diagonal.
    Dense(Vec<Vec<f64>>),
    /// Consecutive blocks of the given sizes; pairs across blocks `a, b`
    /// connect with probability `probs[a][b]`.
    Blocks { sizes: Vec<usize>, probs: Vec<Vec<f64>> },
}

/// Independent-edge random graph model.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InhomogeneousSpec {
    pub source: ProbabilitySource,
    /// Required lower bound on every off-diagonal probability, when enforced.
    #[serde(default)]
    pub floor: Option<f64>,
}

impl InhomogeneousSpec {
    /// Erdős–Rényi `G(n, p)`.
    pub fn erdos_renyi(n: usize, p: f64) -> Self {
        Self {
            source: ProbabilitySource::Blocks {
                sizes: vec![n],
                probs: vec![vec![p]],
            },
            floor: None,
        }
    }

    pub fn node_count(&self) -> usize {
        match &self.source {
            ProbabilitySource::Dense(p) => p.len(),
            ProbabilitySource::Blocks { sizes, .. } => sizes.iter().sum(),
        }
    }

    /// `p_ij` for `i != j`.
    pub fn probability(&self, i: usize, j: usize) -> f64 {
        match &self.source {
            ProbabilitySource::Dense(p) => p[i][j],
            ProbabilitySource::Blocks { sizes, probs } => {
                let block = |v: usize| {
                    let mut acc = 0;
                    sizes
                        .iter()
                        .position(|&s| {
                            acc += s;
                            v < acc
                        })
                        .expect("node in range")
                };
                probs[block(i)][block(j)]
            }
        }
    }

    pub fn validate(&self) -> Result<()> {
        let check = |i: usize, j: usize, value: f64| {
            if !(0.0..=1.0).contains(&value) {
                return Err(Error::InvalidProbability { i, j, value });
            }
            Ok(())
        };
        match &self.source {
            ProbabilitySource::Dense(p) => {
                let n = p.len();
                for (i, row) in p.iter().enumerate() {
                    if row.len() != n {
                        return Err(Error::InvalidArgument(format!("row {i} has {} entries, expected {n}", row.len())));
                    }
                    if row[i] != 0.0 {
                        return Err(Error::InvalidProbability { i, j: i, value: row[i] });
                    }
                    for (j, &v) in row.iter().enumerate() {
                        check(i, j, v)?;
                        if v != p[j][i] {
                            return Err(Error::InvalidArgument(format!("p[{i}][{j}] != p[{j}][{i}]")));
                        }
                    }
                }
            }
            ProbabilitySource::Blocks { sizes, probs } => {
                let k = sizes.len();
                if probs.len() != k || probs.iter().any(|r| r.len() != k) {
                    return Err(Error::InvalidArgument(format!("block matrix must be {k}x{k}")));
                }
                for a in 0..k {
                    for b in 0..k {
                        check(a, b, probs[a][b])?;
                        if probs[a][b] != probs[b][a] {
                            return Err(Error::InvalidArgument(format!("block matrix not symmetric at ({a}, {b})")));
                        }
                    }
                }
            }
        }
        if let Some(floor) = self.floor {
            let n = self.node_count();
            for i in 0..n {
                for j in i + 1..n {
                    let p = self.probability(i, j);
                    if p < floor {
                        return Err(Error::InvalidProbability { i, j, value: p });
                    }
                }
            }
        }
        Ok(())
    }

    /// Nodes whose every connection probability is below `b / n`.
    pub fn peripheral_nodes(&self, b: f64) -> Vec<usize> {
        let n = self.node_count();
        let bound = b / n as f64;
        (0..n)
            .filter(|&i| (0..n).filter(|&j| j != i).all(|j| self.probability(i, j) < bound))
            .collect()
    }
}

/// Calls `emit(t)` for each index `t < total` selected independently with
/// probability `p`.
fn bernoulli_indices(total: u64, p: f64, rng: &mut Rng, mut emit: impl FnMut(u64)) {
    if p <= 0.0 || total == 0 {
        return;
    }
    if p >= 1.0 {
        (0..total).for_each(emit);
        return;
    }
    let log_q = (1.0 - p).ln();
    let mut t: i64 = -1;
    loop {
        let u: f64 = 1.0 - rng.random::<f64>();
        t += 1 + (u.ln() / log_q).floor() as i64;
        if t < 0 || t as u64 >= total {
            return;
        }
        emit(t as u64);
    }
}

/// Samples pairs `i < j` within `[start, start + size)`.
fn sample_within(start: usize, size: usize, p: f64, rng: &mut Rng, out: &mut Vec<(usize, usize, f64)>) {
    let total = (size as u64) * (size as u64).saturating_sub(1) / 2;
    // Row r owns pairs (r, r+1..size); walk rows alongside increasing indices.
    let mut row = 0usize;
    let mut row_start = 0u64;
    bernoulli_indices(total, p, rng, |t| {
        while t >= row_start + (size - 1 - row) as u64 {
            row_start += (size - 1 - row) as u64;
            row += 1;
        }
        let col = row + 1 + (t - row_start) as usize;
        out.push((start + row, start + col, 1.0));
    });
}

fn sample_between(
    a_start: usize,
    a_size: usize,
    b_start: usize,
    b_size: usize,
    p: f64,
    rng: &mut Rng,
    out: &mut Vec<(usize, usize, f64)>,
) {
    let total = a_size as u64 * b_size as u64;
    bernoulli_indices(total, p, rng, |t| {
        let i = (t / b_size as u64) as usize;
        let j = (t % b_size as u64) as usize;
        out.push((a_start + i, b_start + j, 1.0));
    });
}

fn sample_edges(spec: &InhomogeneousSpec, rng: &mut Rng) -> Vec<(usize, usize, f64)> {
    let mut edges = Vec::new();
    match &spec.source {
        ProbabilitySource::Dense(p) => {
            let n = p.len();
            for i in 0..n {
                for j in i + 1..n {
                    if rng.random::<f64>() < p[i][j] {
                        edges.push((i, j, 1.0));
                    }
                }
            }
        }
        ProbabilitySource::Blocks { sizes, probs } => {
            let starts: Vec<usize> = sizes
                .iter()
                .scan(0, |acc, &s| {
                    let st = *acc;
                    *acc += s;
                    Some(st)
                })
                .collect();
            for a in 0..sizes.len() {
                sample_within(starts[a], sizes[a], probs[a][a], rng, &mut edges);
                for b in a + 1..sizes.len() {
                    sample_between(starts[a], sizes[a], starts[b], sizes[b], probs[a][b], rng, &mut edges);
                }
            }
        }
    }
    edges
}

/// One draw from the model; every unordered pair is an independent coin.
pub fn sample_inhomogeneous(spec: &InhomogeneousSpec, seed: u64) -> Result<Graph> {
    spec.validate()?;
    let mut rng = rng::stream(seed, streams::INHOMOGENEOUS);
    let edges = sample_edges(spec, &mut rng);
    Graph::from_edges(spec.node_count(), &edges, BuildOptions::default())
}

/// Degree-corrected stochastic block model: `P(i ~ j) = theta_i theta_j B_{z_i z_j}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DcSbmSpec {
    pub block_sizes: Vec<usize>,
    pub block_matrix: Vec<Vec<f64>>,
    /// Per-node degree parameters; absent means all ones (plain SBM).
    #[serde(default)]
    pub theta: Option<Vec<f64>>,
    /// Rescale `B` uniformly so the expected average degree hits this value.
    #[serde(default)]
    pub target_average_degree: Option<f64>,
}

impl DcSbmSpec {
    pub fn sbm(block_sizes: Vec<usize>, block_matrix: Vec<Vec<f64>>) -> Self {
        Self {
            block_sizes,
            block_matrix,
            theta: None,
            target_average_degree: None,
        }
    }

    /// `k` equal blocks with `within` on the diagonal and `across` elsewhere.
    pub fn planted_partition(n: usize, k: usize, within: f64, across: f64) -> Self {
        let mut sizes = vec![n / k; k];
        sizes[k - 1] += n - k * (n / k);
        let b = (0..k)
            .map(|a| (0..k).map(|c| if a == c { within } else { across }).collect())
            .collect();
        Self::sbm(sizes, b)
    }

    pub fn with_target_average_degree(mut self, d: f64) -> Self {
        self.target_average_degree = Some(d);
        self
    }

    pub fn node_count(&self) -> usize {
        self.block_sizes.iter().sum()
    }

    pub fn labels(&self) -> Vec<usize> {
        self.block_sizes
            .iter()
            .enumerate()
            .flat_map(|(b, &s)| std::iter::repeat_n(b, s))
            .collect()
    }

    fn theta_or_ones(&self) -> Vec<f64> {
        self.theta.clone().unwrap_or_else(|| vec![1.0; self.node_count()])
    }

    /// Expected average degree under the unscaled `B`.
    pub fn expected_average_degree(&self) -> f64 {
        let labels = self.labels();
        let theta = self.theta_or_ones();
        let k = self.block_sizes.len();
        let mut sum = vec![0.0; k];
        let mut sq = vec![0.0; k];
        for (v, &z) in labels.iter().enumerate() {
            sum[z] += theta[v];
            sq[z] += theta[v] * theta[v];
        }
        let mut total = 0.0;
        for a in 0..k {
            for b in 0..k {
                total += self.block_matrix[a][b] * sum[a] * sum[b];
            }
            total -= self.block_matrix[a][a] * sq[a];
        }
        total / self.node_count() as f64
    }

    /// `B` after the optional rescale.
    pub fn effective_block_matrix(&self) -> Result<Vec<Vec<f64>>> {
        let k = self.block_sizes.len();
        if k == 0 || self.block_matrix.len() != k || self.block_matrix.iter().any(|r| r.len() != k) {
            return Err(Error::InvalidArgument(format!("block matrix must be {k}x{k}")));
        }
        for a in 0..k {
            for b in 0..k {
                let v = self.block_matrix[a][b];
                if !(v >= 0.0) || v != self.block_matrix[b][a] {
                    return Err(Error::InvalidProbability { i: a, j: b, value: v });
                }
            }
        }
        if let Some(theta) = &self.theta {
            if theta.len() != self.node_count() || theta.iter().any(|&t| !(t >= 0.0)) {
                return Err(Error::InvalidArgument("theta must have one nonnegative entry per node".into()));
            }
        }
        let scale = match self.target_average_degree {
            Some(d) => {
                let cur = self.expected_average_degree();
                if !(cur > 0.0) {
                    return Err(Error::InvalidArgument("cannot rescale an empty block model".into()));
                }
                d / cur
            }
            None => 1.0,
        };
        let b: Vec<Vec<f64>> = self
            .block_matrix
            .iter()
            .map(|r| r.iter().map(|v| v * scale).collect())
            .collect();
        let tmax = self.theta_or_ones().into_iter().fold(0.0, f64::max);
        for (a, row) in b.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                if self.target_average_degree.is_some() && v * tmax * tmax > 1.0 {
                    return Err(Error::InvalidProbability { i: a, j: c, value: v * tmax * tmax });
                }
            }
        }
        Ok(b)
    }
}

fn sample_dcsbm_with(spec: &DcSbmSpec, rng: &mut Rng) -> Result<(EdgeList, Vec<usize>)> {
    let b = spec.effective_block_matrix()?;
    let labels = spec.labels();
    let plain = spec.theta.as_ref().is_none_or(|t| t.iter().all(|&x| x == 1.0));
    let edges = if plain {
        let probs = b
            .iter()
            .map(|r| r.iter().map(|v| v.clamp(0.0, 1.0)).collect())
            .collect();
        let blocks = InhomogeneousSpec {
            source: ProbabilitySource::Blocks {
                sizes: spec.block_sizes.clone(),
                probs,
            },
            floor: None,
        };
        sample_edges(&blocks, rng)
    } else {
        let theta = spec.theta_or_ones();
        let n = labels.len();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let p = (theta[i] * theta[j] * b[labels[i]][labels[j]]).clamp(0.0, 1.0);
                if rng.random::<f64>() < p {
                    edges.push((i, j, 1.0));
                }
            }
        }
        edges
    };
    Ok((edges, labels))
}

/// One DC-SBM draw and its planted block labels.
pub fn sample_dcsbm(spec: &DcSbmSpec, seed: u64) -> Result<(Graph, Vec<usize>)> {
    let mut rng = rng::stream(seed, streams::CORE);
    let (edges, labels) = sample_dcsbm_with(spec, &mut rng)?;
    Ok((Graph::from_edges(spec.node_count(), &edges, BuildOptions::default())?, labels))
}

/// A planted g-dangling tree.
#[derive(Clone, Debug, PartialEq)]
pub struct DanglingRecord {
    pub g: usize,
    pub members: NodeSet,
    pub attach_node: usize,
    /// `(internal node, attach_node)`.
    pub bridge_edge: (usize, usize),
}

/// Edges of the labelled tree on `0..g` encoded by a Prüfer sequence.
fn prufer_tree(seq: &[usize], g: usize) -> Vec<(usize, usize)> {
    if g < 2 {
        return Vec::new();
    }
    let mut degree = vec![1usize; g];
    for &x in seq {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(g - 1);
    for &x in seq {
        let leaf = (0..g).find(|&v| degree[v] == 1).expect("a leaf exists");
        edges.push((leaf, x));
        degree[leaf] -= 1;
        degree[x] -= 1;
    }
    let rest: Vec<usize> = (0..g).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

/// Appends `count` uniformly random labelled trees on `g` fresh nodes, each
/// joined by one edge to a uniformly random node of the host's largest
/// component. That component must have at least `10 g` nodes.
pub fn plant_dangling(host: &Graph, g: usize, count: usize, seed: u64) -> Result<(Graph, Vec<DanglingRecord>)> {
    if g == 0 {
        return Err(Error::InvalidArgument("dangling sets need g >= 1".into()));
    }
    let n = host.node_count();
    let largest = if n == 0 { NodeSet::new(vec![], 0)? } else { component_sets(host).swap_remove(0) };
    if largest.len() < 10 * g {
        return Err(Error::HostTooSmall {
            needed: 10 * g,
            found: largest.len(),
        });
    }
    if count == 0 {
        return Ok((host.clone(), Vec::new()));
    }
    let mut rng = rng::stream(seed, streams::DANGLING);
    let mut edges: Vec<(usize, usize, f64)> = host.edges().collect();
    let mut records = Vec::with_capacity(count);
    let mut next = n;
    for _ in 0..count {
        let seq: Vec<usize> = (0..g.saturating_sub(2)).map(|_| rng.random_range(0..g)).collect();
        for (a, b) in prufer_tree(&seq, g) {
            edges.push((next + a, next + b, 1.0));
        }
        let internal = next + rng.random_range(0..g);
        let attach = largest.as_slice()[rng.random_range(0..largest.len())];
        edges.push((internal, attach, 1.0));
        records.push(DanglingRecord {
            g,
            members: NodeSet::new((next..next + g).collect(), next + g)?,
            attach_node: attach,
            bridge_edge: (internal, attach),
        });
        next += g;
    }
    Ok((Graph::from_edges(next, &edges, BuildOptions::default())?, records))
}

/// A dense block-structured core plus a sparse Erdős–Rényi periphery.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorePeripherySpec {
    pub core: DcSbmSpec,
    pub periphery_n: usize,
    pub periphery_average_degree: f64,
    /// Expected number of core neighbors of each periphery node.
    pub cross_expected_degree: f64,
}

impl CorePeripherySpec {
    /// Core of 2000 nodes in four equal blocks (`B` with 0.8 diagonal, 0.2
    /// off-diagonal, rescaled to average degree 25), periphery of 100 nodes
    /// with average degree 3, cross-degree 0.002 per periphery node.
    pub fn desk_scale() -> Self {
        Self {
            core: DcSbmSpec::planted_partition(2000, 4, 0.8, 0.2).with_target_average_degree(25.0),
            periphery_n: 100,
            periphery_average_degree: 3.0,
            cross_expected_degree: 0.002,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CorePeripheryInstance {
    pub graph: Graph,
    /// Block label of each core node; core nodes are `0..labels.len()`.
    pub labels: Vec<usize>,
    /// Periphery node ids (they follow the core).
    pub periphery: Vec<usize>,
}

pub fn core_periphery_instance(spec: &CorePeripherySpec, seed: u64) -> Result<CorePeripheryInstance> {
    let core_n = spec.core.node_count();
    let m = spec.periphery_n;
    if !(spec.periphery_average_degree >= 0.0) || !(spec.cross_expected_degree >= 0.0) {
        return Err(Error::InvalidArgument("periphery rates must be nonnegative".into()));
    }
    let p_periphery = if m > 1 { spec.periphery_average_degree / (m - 1) as f64 } else { 0.0 };
    if p_periphery > 1.0 {
        return Err(Error::InvalidProbability { i: 0, j: 0, value: p_periphery });
    }
    let p_cross = if core_n > 0 { spec.cross_expected_degree / core_n as f64 } else { 0.0 };
    if p_cross > 1.0 {
        return Err(Error::InvalidProbability { i: 0, j: 0, value: p_cross });
    }

    let mut core_rng = rng::stream(seed, streams::CORE);
    let (mut edges, labels) = sample_dcsbm_with(&spec.core, &mut core_rng)?;
    let mut periphery_rng = rng::stream(seed, streams::PERIPHERY);
    sample_within(core_n, m, p_periphery, &mut periphery_rng, &mut edges);
    let mut cross_rng = rng::stream(seed, streams::CROSS);
    sample_between(core_n, m, 0, core_n, p_cross, &mut cross_rng, &mut edges);

    let graph = Graph::from_edges(core_n + m, &edges, BuildOptions::default())?;
    Ok(CorePeripheryInstance {
        graph,
        labels,
        periphery: (core_n..core_n + m).collect(),
    })
}
