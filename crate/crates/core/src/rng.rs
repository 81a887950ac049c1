//! Seeded random streams.
//!
//! Every random draw in the crate comes from `ChaCha8Rng::seed_from_u64(seed)`
//! with a fixed stream number per purpose (`set_stream`). ChaCha8 output is
//! specified independently of platform and word size, so a given
//! `(seed, stream)` pair yields the same sequence everywhere.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Stream numbers. Distinct purposes never share a stream.
pub mod stream {
    pub const SAMPLER: u64 = 0;
    pub const BANDWIDTH: u64 = 1;
    pub const RTT: u64 = 2;
    pub const AVAILABILITY: u64 = 3;
    pub const LATENCY: u64 = 4;
    pub const PARTITION: u64 = 5;
    pub const ELECTION: u64 = 6;
    pub const GENERATOR: u64 = 7;
}

pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Mix a salt into a root seed (SplitMix64 finalizer), for per-item
/// sub-seeds such as one per community.
pub fn derive_seed(seed: u64, salt: u64) -> u64 {
    let mut z = seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Uniform draw on the open interval (0, 1).
pub fn open01<R: rand::Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(rand::distr::Open01)
}
