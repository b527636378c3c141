//! Seeding and substream derivation.
//!
//! Every sampler in this crate is a pure function of its parameters and a
//! [`Seed`]. A seed is a `(root, stream)` pair fed into ChaCha8, a
//! counter-based generator with a 64-bit stream id, so independent
//! substreams need no coordination: parallel workers get their stream index
//! assigned up front and the degree of parallelism never changes results.
//!
//! Bit-exact reproducibility is promised within one build of this crate,
//! not across languages or generator changes.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Identifies one independent random substream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Seed {
    pub root: u64,
    pub stream: u64,
}

impl Seed {
    pub fn new(root: u64) -> Self {
        Seed { root, stream: 0 }
    }

    /// Derive the `i`-th child substream. Children of distinct parents or
    /// distinct indices collide only with negligible probability (64-bit
    /// mixed stream ids).
    pub fn substream(&self, i: u64) -> Seed {
        Seed {
            root: self.root,
            stream: splitmix64(self.stream ^ splitmix64(i.wrapping_add(0x517c_c1b7_2722_0a95))),
        }
    }

    /// Instantiate the generator for this substream.
    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.root);
        rng.set_stream(self.stream);
        rng
    }
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}
