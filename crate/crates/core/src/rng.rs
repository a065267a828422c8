//! Seeded random streams.
//!
//! A stream is ChaCha8 keyed by `seed_from_u64(master_seed)` and positioned on the
//! ChaCha stream `stream_id`, so `(master_seed, stream_id)` fixes the output on
//! every platform and distinct ids never share keystream.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Recorded in output metadata.
pub const RNG_ALGORITHM: &str = "chacha8-seed_from_u64-stream";

#[derive(Debug, Clone)]
pub struct RngStream {
    master_seed: u64,
    stream_id: u64,
    state: ChaCha8Rng,
}

impl RngStream {
    pub fn new(master_seed: u64, stream_id: u64) -> Self {
        let mut state = ChaCha8Rng::seed_from_u64(master_seed);
        state.set_stream(stream_id);
        RngStream {
            master_seed,
            stream_id,
            state,
        }
    }

    pub fn master_seed(&self) -> u64 {
        self.master_seed
    }

    pub fn stream_id(&self) -> u64 {
        self.stream_id
    }

    /// Sibling stream under the same master seed.
    pub fn substream(&self, stream_id: u64) -> Self {
        Self::new(self.master_seed, stream_id)
    }

    /// Uniform in `0..n`; `n > 0`.
    pub fn below(&mut self, n: usize) -> usize {
        self.state.gen_range(0..n)
    }

    /// Uniform in `[0, 1)`.
    pub fn unit(&mut self) -> f64 {
        self.state.gen::<f64>()
    }
}

impl RngCore for RngStream {
    fn next_u32(&mut self) -> u32 {
        self.state.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.state.next_u64()
    }

    fn fill_bytes(&mut self, dest: &mut [u8]) {
        self.state.fill_bytes(dest)
    }

    fn try_fill_bytes(&mut self, dest: &mut [u8]) -> std::result::Result<(), rand::Error> {
        self.state.try_fill_bytes(dest)
    }
}
