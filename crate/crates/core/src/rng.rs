//! Per-trial random streams.
//!
//! Trial `i` of a run with master seed `m` draws from a ChaCha8 stream keyed
//! by `splitmix64(m + (i + 1) * 0x9E3779B97F4A7C15)`. Each trial's stream is
//! a pure function of `(m, i)`, so results do not depend on which worker ran
//! the trial or in what order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// The splitmix64 output function.
pub fn splitmix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn trial_seed(master_seed: u64, trial: u64) -> u64 {
    splitmix64(master_seed.wrapping_add(trial.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA)))
}

pub fn trial_rng(master_seed: u64, trial: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(trial_seed(master_seed, trial))
}
