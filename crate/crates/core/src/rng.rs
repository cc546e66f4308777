//! Reproducible randomness.
//!
//! Every source of randomness is a ChaCha8 generator keyed by
//! `(master_seed, stream_id, domain)`. The learner's coin flips and the
//! environment's reward draws live in different domains, so the reward tensor
//! never depends on what the learner does with its own stream.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Generator type handed to learners.
pub type StreamRng = ChaCha8Rng;

const DOMAIN_LEARNER: u64 = 0x6c65_6172_6e65_7201;
const DOMAIN_REWARDS: u64 = 0x7265_7761_7264_7302;
const DOMAIN_AUX: u64 = 0x6175_7869_6c69_6103;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RngStream {
    pub master_seed: u64,
    pub stream_id: u64,
}

impl RngStream {
    pub fn new(master_seed: u64, stream_id: u64) -> Self {
        RngStream {
            master_seed,
            stream_id,
        }
    }

    fn key(&self, domain: u64) -> [u8; 32] {
        let mut key = [0u8; 32];
        key[..8].copy_from_slice(&self.master_seed.to_le_bytes());
        key[8..16].copy_from_slice(&self.stream_id.to_le_bytes());
        key[16..24].copy_from_slice(&domain.to_le_bytes());
        key
    }

    /// Sequential generator for a learner's internal randomization.
    pub fn learner_rng(&self) -> StreamRng {
        ChaCha8Rng::from_seed(self.key(DOMAIN_LEARNER))
    }

    /// Sequential generator for anything that is neither a learner nor a
    /// reward cell (e.g. shuffling arm labels).
    pub fn auxiliary_rng(&self) -> StreamRng {
        ChaCha8Rng::from_seed(self.key(DOMAIN_AUX))
    }

    /// Counter-based access to the reward uniforms of this stream.
    pub fn reward_cells(&self) -> CellSampler {
        CellSampler {
            rng: ChaCha8Rng::from_seed(self.key(DOMAIN_REWARDS)),
        }
    }
}

/// Uniform draw `u(k, t)` for every (arm, round) cell, addressable in any
/// order: arm `k` is a ChaCha stream and round `t` a word position in it.
#[derive(Debug, Clone)]
pub struct CellSampler {
    rng: ChaCha8Rng,
}

impl CellSampler {
    /// Uniform in `[0, 1)` for zero-based `arm` and 1-based round `t`.
    pub fn uniform(&mut self, arm: usize, t: usize) -> f64 {
        self.rng.set_stream(arm as u64);
        self.rng.set_word_pos(2 * t as u128);
        self.rng.random::<f64>()
    }
}
