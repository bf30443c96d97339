//! Shared fixtures for the benchmarks.

use corecut::generators::{core_periphery_instance, plant_dangling, CorePeripherySpec};
use corecut::graph::largest_connected_component;
use corecut::Graph;

/// Desk-scale core-periphery graph (core 2000 in four blocks, periphery 100).
pub fn desk_instance(seed: u64) -> Graph {
    core_periphery_instance(&CorePeripherySpec::desk_scale(), seed)
        .expect("valid spec")
        .graph
}

/// Largest component of the desk instance with 30 planted 4-dangling trees.
pub fn dangling_instance(seed: u64) -> Graph {
    let (g, _) = plant_dangling(&desk_instance(seed), 4, 30, seed).expect("host is large enough");
    largest_connected_component(&g).expect("non-empty").0
}
