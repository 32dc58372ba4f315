//! Spectra of Seidel matrices: a cyclic Jacobi eigensolver, energy
//! functionals and semicircle-law tail quantities.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::SpectralError;
use crate::seidel::SeidelMatrix;

pub const MAX_SWEEPS: usize = 50;

/// Jacobi stops once the off-diagonal Frobenius norm drops below this times `n`.
pub const OFF_DIAGONAL_TOLERANCE: f64 = 1e-12;

/// Eigenvalues with multiplicity, ascending.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    values: Vec<f64>,
}

impl Spectrum {
    /// Sorts `values` ascending.
    pub fn from_values(mut values: Vec<f64>) -> Self {
        values.sort_by(f64::total_cmp);
        Self { values }
    }

    pub fn order(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn trace(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn second_moment(&self) -> f64 {
        self.values.iter().map(|x| x * x).sum()
    }

    pub fn abs_product(&self) -> f64 {
        self.values.iter().map(|x| x.abs()).product()
    }

    /// `sum ln|lambda_i|`; `-inf` when some eigenvalue is exactly zero.
    pub fn ln_abs_product(&self) -> f64 {
        self.values.iter().map(|x| x.abs().ln()).sum()
    }

    /// The spectrum of `-M`.
    pub fn negated(&self) -> Self {
        Self {
            values: self.values.iter().rev().map(|x| -x).collect(),
        }
    }
}

/// Eigenvalues of `S` by cyclic Jacobi rotations.
pub fn eigenvalues(m: &SeidelMatrix) -> Result<Spectrum, SpectralError> {
    jacobi_eigenvalues(m.to_f64(), m.order())
}

/// Cyclic Jacobi on a dense symmetric row-major matrix.
pub fn jacobi_eigenvalues(mut a: Vec<f64>, n: usize) -> Result<Spectrum, SpectralError> {
    assert_eq!(a.len(), n * n);
    let tolerance = OFF_DIAGONAL_TOLERANCE * n as f64;
    let mut row_p = vec![0.0; n];
    let mut row_q = vec![0.0; n];

    for sweep in 0..=MAX_SWEEPS {
        let off = off_diagonal_norm(&a, n);
        if off < tolerance {
            return Ok(Spectrum::from_values(
                (0..n).map(|i| a[i * n + i]).collect(),
            ));
        }
        if sweep == MAX_SWEEPS {
            return Err(SpectralError::NoConvergence {
                sweeps: MAX_SWEEPS,
                off_norm: off,
            });
        }
        // Entries below this cannot move the off-diagonal norm above tolerance.
        let skip = tolerance / n as f64 * 1e-3;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq.abs() < skip {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                row_p.copy_from_slice(&a[p * n..(p + 1) * n]);
                row_q.copy_from_slice(&a[q * n..(q + 1) * n]);
                for k in 0..n {
                    let xp = row_p[k];
                    let xq = row_q[k];
                    a[p * n + k] = c * xp - s * xq;
                    a[q * n + k] = s * xp + c * xq;
                }
                for k in 0..n {
                    a[k * n + p] = a[p * n + k];
                    a[k * n + q] = a[q * n + k];
                }
                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
            }
        }
    }
    unreachable!("loop returns on its last iteration")
}

fn off_diagonal_norm(a: &[f64], n: usize) -> f64 {
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a[i * n + j] * a[i * n + j];
            }
        }
    }
    sum.sqrt()
}

/// `sum |lambda_i|`.
pub fn seidel_energy(s: &Spectrum) -> f64 {
    s.values.iter().map(|x| x.abs()).sum()
}

/// `sum |lambda_i|^p` for `p` strictly inside `(0, 2)`, with `0^p = 0`.
pub fn p_energy(s: &Spectrum, p: f64) -> Result<f64, SpectralError> {
    check_exponent(p)?;
    Ok(s.values
        .iter()
        .map(|x| if *x == 0.0 { 0.0 } else { x.abs().powf(p) })
        .sum())
}

pub fn check_exponent(p: f64) -> Result<(), SpectralError> {
    if p > 0.0 && p < 2.0 {
        Ok(())
    } else {
        Err(SpectralError::ExponentOutOfRange { p })
    }
}

/// `(n-1)^p + n - 1`, the right-hand side of the p-energy condition.
pub fn p_energy_threshold(n: usize, p: f64) -> f64 {
    let m = (n - 1) as f64;
    m.powf(p) + m
}

/// `(n-1)^p + n - 2`, the universal strict lower bound.
pub fn p_energy_strict_bound(n: usize, p: f64) -> f64 {
    p_energy_threshold(n, p) - 1.0
}

/// `(1/pi) * integral_b^2 sqrt(4 - x^2) dx`, the semicircle mass of `|x| >= b`.
pub fn semicircle_tail_closed_form(b: f64) -> Result<f64, SpectralError> {
    if !(0.0..=2.0).contains(&b) {
        return Err(SpectralError::ThresholdOutOfRange { b });
    }
    let head = 0.5 * b * (4.0 - b * b).sqrt() + 2.0 * (0.5 * b).asin();
    Ok((1.0 - head / PI).clamp(0.0, 1.0))
}

/// Fraction of eigenvalues with `|lambda| >= b sqrt(n)`.
pub fn empirical_tail(s: &Spectrum, b: f64) -> Result<f64, SpectralError> {
    Ok(tail_count(s, b)? as f64 / s.order() as f64)
}

/// Number of eigenvalues with `|lambda| >= b sqrt(n)`.
pub fn tail_count(s: &Spectrum, b: f64) -> Result<usize, SpectralError> {
    if b.is_nan() || b < 0.0 {
        return Err(SpectralError::NegativeThreshold { b });
    }
    let cut = b * (s.order() as f64).sqrt();
    Ok(s.values.iter().filter(|x| x.abs() >= cut).count())
}

pub fn min_abs_eigenvalue(s: &Spectrum) -> f64 {
    s.values
        .iter()
        .map(|x| x.abs())
        .fold(f64::INFINITY, f64::min)
}
