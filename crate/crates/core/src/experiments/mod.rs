//! Train/test overfitting protocol, block-recovery study, and exhaustive
//! oracles for small graphs.

mod brute_force;
mod cluster;
mod overfit;
mod recovery;
mod split;

pub use brute_force::{brute_force_min_conductance, BRUTE_FORCE_LIMIT};
pub use cluster::{adjusted_rand_index, kmeans};
pub use overfit::{run_overfit_experiment, write_reports_csv, ExperimentReport, Method, OverfitOutcome};
pub use recovery::{run_recovery_experiment, RecoveryRecord};
pub use split::{split_edges, test_conductance, EdgeSplit};
