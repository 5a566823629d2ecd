//! Deterministic seed derivation for parallel sampling.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// A value-semantics handle into a reproducible stream of randomness.
///
/// Substreams derived from distinct indices are statistically independent,
/// so parallel workers each own one and results do not depend on scheduling
/// order. The same seed always yields the same tree of streams.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RngStream(u64);

impl RngStream {
    pub fn new(seed: u64) -> Self {
        Self(splitmix64(seed))
    }

    /// Derive the `index`-th child stream.
    #[must_use]
    pub fn substream(self, index: u64) -> Self {
        Self(splitmix64(self.0 ^ splitmix64(index.wrapping_add(GOLDEN))))
    }

    /// Instantiate the generator for this stream.
    pub fn rng(self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.0)
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
