//! Binomial proportion estimates.

use serde::{Deserialize, Serialize};

use crate::error::StatsError;

/// Two-sided 95% normal quantile.
pub const Z_95: f64 = 1.96;

/// Wilson score interval for `successes` out of `trials`.
pub fn wilson_interval(successes: u64, trials: u64, z: f64) -> Result<(f64, f64), StatsError> {
    if trials == 0 {
        return Err(StatsError::NoTrials);
    }
    if successes > trials {
        return Err(StatsError::SuccessesExceedTrials { successes, trials });
    }
    if z.is_nan() || z <= 0.0 {
        return Err(StatsError::NonPositiveZ { z });
    }
    let t = trials as f64;
    let p = successes as f64 / t;
    let z2 = z * z;
    let denom = 1.0 + z2 / t;
    let center = (p + z2 / (2.0 * t)) / denom;
    let half = z * (p * (1.0 - p) / t + z2 / (4.0 * t * t)).sqrt() / denom;
    // Pin the exact boundaries so that 0 and 1 are not lost to rounding.
    let low = if successes == 0 {
        0.0
    } else {
        (center - half).max(0.0)
    };
    let high = if successes == trials {
        1.0
    } else {
        (center + half).min(1.0)
    };
    Ok((low.min(p), high.max(p)))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProportionEstimate {
    pub successes: u64,
    pub trials: u64,
    pub point: f64,
    pub wilson_low: f64,
    pub wilson_high: f64,
}

impl ProportionEstimate {
    pub fn new(successes: u64, trials: u64) -> Result<Self, StatsError> {
        let (wilson_low, wilson_high) = wilson_interval(successes, trials, Z_95)?;
        Ok(Self {
            successes,
            trials,
            point: successes as f64 / trials as f64,
            wilson_low,
            wilson_high,
        })
    }
}

/// Median of the finite-or-infinite values, `None` for an empty slice.
pub fn median(values: &[f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let mid = v.len() / 2;
    Some(if v.len() % 2 == 1 {
        v[mid]
    } else {
        0.5 * (v[mid - 1] + v[mid])
    })
}

/// Empirical quantile by nearest rank.
pub fn quantile(sorted: &[f64], q: f64) -> Option<f64> {
    if sorted.is_empty() {
        return None;
    }
    let rank = ((q * sorted.len() as f64).ceil() as usize).clamp(1, sorted.len());
    Some(sorted[rank - 1])
}
