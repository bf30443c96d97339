//! Vanilla and regularized spectral clustering on sparse graphs.
//!
//! The crate covers the full pipeline: cut primitives ([`graph`]), SNAP
//! edge-list ingestion ([`io`]), the regularized graph and CoreCut ([`regularization`]),
//! implicit Laplacian operators with Lanczos and dense eigensolvers plus sweep
//! cuts ([`spectral`]), seeded random-graph models ([`generators`]),
//! dangling-set analysis ([`dangling`]), and the train/test overfitting and
//! block-recovery experiments ([`experiments`]).

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod dangling;
pub mod error;
pub mod experiments;
pub mod generators;
pub mod graph;
pub mod io;
pub mod regularization;
pub mod rng;
pub mod spectral;

pub use error::{Error, Result};
pub use graph::{cut_stats, BuildOptions, CutStats, Graph, NodeMap, NodeSet};
pub use regularization::{corecut, Regularization, RegularizationConfig, Tau, Variant};
pub use spectral::{PartitionResult, Scoring, SpectrumResult};
