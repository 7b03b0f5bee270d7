//! Seeded pseudorandom generation.
//!
//! All sampling in the crate goes through [`rng`], a ChaCha8 stream seeded
//! from a single `u64`. ChaCha8's output is specified independently of the
//! platform, so samples (and thus reports) are reproducible everywhere.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Rng = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
