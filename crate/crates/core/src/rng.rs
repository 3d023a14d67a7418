//! Counter-based randomness: every trial owns a ChaCha stream selected by its
//! index, so results do not depend on how trials are split across threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// SplitMix64 finalizer.
pub fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// Mixes a user seed with a path of indices into an independent key.
pub fn derive_key(seed: u64, parts: &[u64]) -> u64 {
    parts
        .iter()
        .fold(splitmix64(seed), |acc, &p| splitmix64(acc ^ splitmix64(p)))
}

/// Source of per-trial generators for one key.
#[derive(Clone, Debug)]
pub struct TrialRng {
    base: ChaCha8Rng,
}

impl TrialRng {
    pub fn new(key: u64) -> Self {
        Self {
            base: ChaCha8Rng::seed_from_u64(key),
        }
    }

    /// The generator for trial `index`: stream `index` of the keyed cipher.
    pub fn trial(&self, index: u64) -> ChaCha8Rng {
        let mut rng = self.base.clone();
        rng.set_stream(index);
        rng
    }
}
