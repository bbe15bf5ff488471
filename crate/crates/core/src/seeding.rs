//! Seed-splitting scheme.
//!
//! All randomness in a run flows from a single `u64` seed. Every consumer
//! draws from a ChaCha8 generator keyed by that seed with a distinct stream
//! id per stage, so adding draws to one stage never perturbs another.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stream {
    Construct = 1,
    Synthesis = 2,
    LowerCertificate = 3,
    UpperCertificate = 4,
    Spectral = 5,
    Sampling = 6,
    Minimality = 7,
}

pub fn stage_rng(seed: u64, stream: Stream) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream as u64);
    rng
}
