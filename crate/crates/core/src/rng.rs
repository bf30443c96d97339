//! Seeded randomness. Every consumer draws from a ChaCha8 generator keyed by
//! the user seed and a fixed stream id, so adding draws in one sub-model never
//! shifts the numbers another sub-model sees.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Rng = ChaCha8Rng;

/// Stream ids in use. New consumers get a new id; existing ids never change.
pub mod streams {
    pub const LANCZOS_START: u64 = 1;
    pub const CORE: u64 = 10;
    pub const PERIPHERY: u64 = 11;
    pub const CROSS: u64 = 12;
    pub const INHOMOGENEOUS: u64 = 13;
    pub const DANGLING: u64 = 20;
    pub const EDGE_SPLIT: u64 = 30;
    pub const KMEANS: u64 = 40;
}

pub fn stream(seed: u64, stream_id: u64) -> Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream_id);
    rng
}
