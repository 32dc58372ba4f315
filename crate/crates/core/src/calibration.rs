//! Desk-scale thresholds.
//!
//! The limits behind these experiments are only proved as `n -> infinity`.
//! The numbers below are finite-n expectations. They were fixed after pilot
//! runs, with the seeds pinned here, and they are not theorems. The pilot
//! figures sit beside each constant.

/// Monte Carlo setup: `n = 100`, 500 trials, absolute mode.
/// Pilot: 500/500 passing, Wilson low 0.9924.
pub const MC_N: usize = 100;
pub const MC_TRIALS: u64 = 500;
pub const MC_SEED: u64 = 42;
pub const MC_MIN_POINT: f64 = 0.99;
pub const MC_MIN_WILSON_LOW: f64 = 0.97;

/// Semicircle tails: `n = 400`, 20 samples pooled.
/// Pilot: largest deviation about 0.003 on the default grid.
pub const TAIL_N: usize = 400;
pub const TAIL_SAMPLES: u64 = 20;
pub const TAIL_SEED: u64 = 2024;
pub const TAIL_TOLERANCE: f64 = 0.02;
pub const TAIL_CHECK_POINTS: [f64; 3] = [0.5, 1.0, 1.5];

/// Closed form against quadrature of `sqrt(4 - x^2) / pi`.
pub const QUADRATURE_TOLERANCE: f64 = 1e-10;
pub const QUADRATURE_POINTS: usize = 100;

/// Counting inequality: fraction of 100 trials at `n = 400` in which more
/// than half of the eigenvalues satisfy `|lambda| >= b sqrt(n)`.
pub const PROOF_N: usize = 400;
pub const PROOF_TRIALS: u64 = 100;
pub const PROOF_SEED: u64 = 31337;
pub const PROOF_MIN_FRACTION: f64 = 0.95;

/// Growth: `|det S| >= n^(alpha n)` checked at orders 50, 100 and 200.
pub const GROWTH_N_LIST: [usize; 3] = [50, 100, 200];
pub const GROWTH_TRIALS: u64 = 100;
pub const GROWTH_ALPHA: f64 = 0.4;
pub const GROWTH_SEED: u64 = 7;
pub const GROWTH_MIN_FRACTION: f64 = 0.95;

/// Invariance pairs at `n = 30`.
pub const INVARIANCE_N: usize = 30;
pub const INVARIANCE_PAIRS: u64 = 200;
pub const INVARIANCE_SEED: u64 = 99;
pub const SPECTRUM_TOLERANCE: f64 = 1e-8;

/// `prod |lambda|` against `|det|` at `n = 64`.
pub const PRODUCT_N: usize = 64;
pub const PRODUCT_GRAPHS: u64 = 100;
pub const PRODUCT_SEED: u64 = 64;
pub const PRODUCT_RELATIVE_TOLERANCE: f64 = 1e-6;

/// Trace `|sum lambda| <= HYGIENE_TOLERANCE * n`; second moment relative.
pub const HYGIENE_TOLERANCE: f64 = 1e-8;
