use std::io::Write;
use std::time::Instant;

use serde::Serialize;

use crate::error::Result;
use crate::graph::{Graph, NodeSet};
use crate::regularization::{Regularization, RegularizationConfig, Variant};
use crate::spectral::{smallest_eigenpairs, sweep_cut, LanczosOptions, LaplacianOperator, PartitionResult, Scoring};

use super::split::{split_edges, test_conductance};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Vanilla,
    Regularized,
}

/// One CSV row per method per seed.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub method: Method,
    pub seed: u64,
    pub n_train: usize,
    pub smaller_side_size: usize,
    pub train_conductance: f64,
    pub test_conductance: f64,
    pub catastrophic: bool,
    pub matvec_count: usize,
    pub wall_time_ms: f64,
    pub tau: f64,
    #[serde(skip)]
    pub converged: bool,
    /// The smaller side, in train ids.
    #[serde(skip)]
    pub partition: NodeSet,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OverfitOutcome {
    pub vanilla: ExperimentReport,
    pub regularized: ExperimentReport,
    /// Partition from the other regularization variant at the same `tau`.
    pub alternate_partition: NodeSet,
    /// Both variants produced the same node set.
    pub variants_agree: bool,
}

impl OverfitOutcome {
    pub fn reports(&self) -> [&ExperimentReport; 2] {
        [&self.vanilla, &self.regularized]
    }
}

pub fn write_reports_csv<'a, W: Write>(out: W, reports: impl IntoIterator<Item = &'a ExperimentReport>) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in reports {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

fn partition(train: &Graph, reg: Regularization, seed: u64) -> Result<(PartitionResult, usize, bool, f64)> {
    let start = Instant::now();
    let op = LaplacianOperator::new(train, reg)?;
    let spec = smallest_eigenpairs(&op, LanczosOptions::new(2).seed(seed))?;
    let part = sweep_cut(train, Scoring::Raw, &spec.eigenvectors[1])?;
    let ms = start.elapsed().as_secs_f64() * 1e3;
    Ok((part, spec.matvec_count, spec.converged, ms))
}

/// Splits the edges, partitions the train graph with vanilla and regularized
/// `v_2` (both swept on raw train conductance), and scores each partition on
/// the held-out edges. The other regularization variant is also run as a
/// cross-check.
pub fn run_overfit_experiment(g: &Graph, cfg: &RegularizationConfig, fraction: f64, seed: u64) -> Result<OverfitOutcome> {
    let split = split_edges(g, fraction, seed)?;
    let train = &split.train;
    let test = split.test_graph()?;
    let reg = cfg.resolve(train)?;

    let report = |method: Method, r: Regularization| -> Result<ExperimentReport> {
        let (part, matvecs, converged, ms) = partition(train, r, seed)?;
        let phi_test = test_conductance(&test, &part.set)?;
        Ok(ExperimentReport {
            method,
            seed,
            n_train: train.node_count(),
            smaller_side_size: part.smaller_side_size,
            train_conductance: part.stats.conductance,
            test_conductance: phi_test,
            catastrophic: phi_test == 1.0,
            matvec_count: matvecs,
            wall_time_ms: ms,
            tau: r.tau(),
            converged,
            partition: part.set,
        })
    };
    let vanilla = report(Method::Vanilla, Regularization::vanilla())?;
    let regularized = report(Method::Regularized, reg)?;
    let other = match reg.variant() {
        Variant::EdgeWise => Variant::DegreeOnly,
        Variant::DegreeOnly => Variant::EdgeWise,
    };
    let (alt, _, _, _) = partition(train, Regularization::new(reg.tau(), other)?, seed)?;
    let variants_agree = alt.set == regularized.partition;
    Ok(OverfitOutcome {
        vanilla,
        regularized,
        alternate_partition: alt.set,
        variants_agree,
    })
}
