//! Reproducible seeding. Every random quantity in the crate is derived from a
//! master seed through a fixed 64-bit mix, so results are independent of
//! thread scheduling and identical across runs.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Master seed plus a stream index for derived sub-streams.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RngSeed {
    pub master: u64,
    pub stream: u64,
}

impl RngSeed {
    pub fn new(master: u64) -> Self {
        RngSeed { master, stream: 0 }
    }

    pub fn with_stream(master: u64, stream: u64) -> Self {
        RngSeed { master, stream }
    }

    /// Seed for the `index`-th sample within this stream.
    pub fn substream(&self, index: u64) -> Self {
        RngSeed {
            master: self.master,
            stream: splitmix64(self.stream.wrapping_add(splitmix64(index))),
        }
    }

    /// A fresh generator for this (master, stream) pair.
    pub fn rng(&self) -> ChaCha8Rng {
        let mixed = splitmix64(splitmix64(self.master) ^ self.stream);
        ChaCha8Rng::seed_from_u64(mixed)
    }
}

/// SplitMix64 finalizer; the standard constants.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
