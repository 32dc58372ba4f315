//! Seidel matrices and their exact integer determinants.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::LinalgError;
use crate::graph::Graph;

/// Largest order handled by the cofactor-expansion oracle.
pub const ORACLE_MAX_ORDER: usize = 8;

/// Orders up to this use checked 64-bit Bareiss before falling back to
/// arbitrary precision. Bareiss intermediates are minors bounded by
/// `k^(k/2)`, and one step multiplies two of them, so `12^12 < 2^63` leaves
/// the fast path with plenty of headroom.
pub const FAST_PATH_MAX_ORDER: usize = 12;

/// `S(G)`: zero diagonal, `-1` for adjacent pairs, `+1` otherwise.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SeidelMatrix {
    n: usize,
    entries: Vec<i8>,
}

impl SeidelMatrix {
    pub fn from_graph(g: &Graph) -> Self {
        let n = g.order();
        let mut entries = vec![0i8; n * n];
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    entries[i * n + j] = if g.has_edge(i, j) { -1 } else { 1 };
                }
            }
        }
        Self { n, entries }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i8 {
        self.entries[i * self.n + j]
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[i8] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<i8>> {
        self.entries.chunks(self.n).map(<[i8]>::to_vec).collect()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.entries.iter().map(|&x| f64::from(x)).collect()
    }
}

/// `S(G)` for `g`.
pub fn seidel_matrix(g: &Graph) -> SeidelMatrix {
    SeidelMatrix::from_graph(g)
}

/// An exact determinant. Serializes as a decimal string.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct BigIntDet(pub BigInt);

impl BigIntDet {
    pub fn value(&self) -> &BigInt {
        &self.0
    }

    pub fn abs(&self) -> BigInt {
        self.0.abs()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// `-1`, `0` or `1`.
    pub fn signum(&self) -> i8 {
        if self.0.is_zero() {
            0
        } else if self.0.is_negative() {
            -1
        } else {
            1
        }
    }

    /// Natural log of `|det|`, accurate to a few ulps for any size.
    pub fn ln_abs(&self) -> f64 {
        ln_abs_bigint(&self.0)
    }

    /// `|det| <= n^(n/2)`, checked exactly as `det^2 <= n^n`.
    pub fn within_hadamard_bound(&self, n: usize) -> bool {
        let sq = &self.0 * &self.0;
        sq <= num_traits::pow(BigInt::from(n), n)
    }
}

impl fmt::Display for BigIntDet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl From<i64> for BigIntDet {
    fn from(v: i64) -> Self {
        Self(BigInt::from(v))
    }
}

impl Serialize for BigIntDet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for BigIntDet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        BigInt::from_str(&s)
            .map(BigIntDet)
            .map_err(serde::de::Error::custom)
    }
}

pub(crate) fn ln_abs_bigint(v: &BigInt) -> f64 {
    if v.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = v.bits();
    if bits <= 1000 {
        return v.abs().to_f64().expect("finite below 2^1000").ln();
    }
    // Keep the top 64 bits; the dropped tail perturbs the log by < 2^-63.
    let shift = bits - 64;
    let top: BigInt = v.abs() >> shift;
    top.to_f64().expect("64-bit value").ln() + shift as f64 * std::f64::consts::LN_2
}

/// Exact determinant by fraction-free (Bareiss) elimination.
///
/// Orders up to [`FAST_PATH_MAX_ORDER`] run in checked `i64` arithmetic;
/// larger orders, or any overflow, use [`det_bareiss_hybrid`].
pub fn det_exact(m: &SeidelMatrix) -> BigIntDet {
    if m.order() <= FAST_PATH_MAX_ORDER {
        if let Some(d) = det_bareiss_i64(m) {
            return BigIntDet::from(d);
        }
    }
    BigIntDet(det_bareiss_hybrid(m))
}

/// Bareiss in checked `i64`. `None` on overflow.
pub fn det_bareiss_i64(m: &SeidelMatrix) -> Option<i64> {
    let n = m.order();
    let mut a: Vec<i64> = m.entries().iter().map(|&x| i64::from(x)).collect();
    let mut negate = false;
    let mut prev = 1i64;
    for k in 0..n.saturating_sub(1) {
        if a[k * n + k] == 0 {
            match (k + 1..n).find(|&r| a[r * n + k] != 0) {
                Some(r) => {
                    swap_rows(&mut a, n, k, r);
                    negate = !negate;
                }
                None => return Some(0),
            }
        }
        let pivot = a[k * n + k];
        for i in k + 1..n {
            let lead = a[i * n + k];
            for j in k + 1..n {
                let num = a[i * n + j]
                    .checked_mul(pivot)?
                    .checked_sub(lead.checked_mul(a[k * n + j])?)?;
                assert!(
                    num % prev == 0,
                    "Bareiss division not exact at step {k}: {num} / {prev}"
                );
                a[i * n + j] = num / prev;
            }
            a[i * n + k] = 0;
        }
        prev = pivot;
    }
    let d = a[n * n - 1];
    Some(if negate { d.checked_neg()? } else { d })
}

/// Bareiss in arbitrary precision throughout.
pub fn det_bareiss_bigint(m: &SeidelMatrix) -> BigInt {
    let a = m.entries().iter().map(|&x| BigInt::from(x)).collect();
    bareiss_big_from(a, m.order(), 0, BigInt::one(), false)
}

/// Entries below this keep `a*b - c*d` inside `i128`.
const WIDE_ENTRY_LIMIT: i128 = 1 << 62;

/// Bareiss that runs its early steps in `i128`, where the minors are still
/// small, and continues in arbitrary precision once any entry reaches 2^62.
pub fn det_bareiss_hybrid(m: &SeidelMatrix) -> BigInt {
    let n = m.order();
    let mut a: Vec<i128> = m.entries().iter().map(|&x| i128::from(x)).collect();
    let mut negate = false;
    let mut prev = 1i128;
    for k in 0..n.saturating_sub(1) {
        if a[k * n + k] == 0 {
            match (k + 1..n).find(|&r| a[r * n + k] != 0) {
                Some(r) => {
                    swap_rows(&mut a, n, k, r);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        let pivot = a[k * n + k];
        let mut largest = 0i128;
        for i in k + 1..n {
            let lead = a[i * n + k];
            for j in k + 1..n {
                let num = a[i * n + j] * pivot - lead * a[k * n + j];
                assert!(num % prev == 0, "Bareiss division not exact at step {k}");
                let v = num / prev;
                largest = largest.max(v.abs());
                a[i * n + j] = v;
            }
            a[i * n + k] = 0;
        }
        prev = pivot;
        if largest >= WIDE_ENTRY_LIMIT {
            let big = a.into_iter().map(BigInt::from).collect();
            return bareiss_big_from(big, n, k + 1, BigInt::from(prev), negate);
        }
    }
    let d = BigInt::from(a[n * n - 1]);
    if negate {
        -d
    } else {
        d
    }
}

/// Continues Bareiss from step `start` with the previous pivot `prev`.
fn bareiss_big_from(
    mut a: Vec<BigInt>,
    n: usize,
    start: usize,
    mut prev: BigInt,
    mut negate: bool,
) -> BigInt {
    for k in start..n.saturating_sub(1) {
        if a[k * n + k].is_zero() {
            match (k + 1..n).find(|&r| !a[r * n + k].is_zero()) {
                Some(r) => {
                    swap_rows(&mut a, n, k, r);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        let (head, tail) = a.split_at_mut((k + 1) * n);
        let pivot_row = &head[k * n..];
        let pivot = &pivot_row[k];
        let unit_prev = prev.is_one();
        for row in tail.chunks_mut(n) {
            let lead = std::mem::take(&mut row[k]);
            if lead.is_zero() {
                for x in row[k + 1..].iter_mut() {
                    *x *= pivot;
                    if !unit_prev {
                        *x = exact_div(x, &prev, k);
                    }
                }
                continue;
            }
            for (x, p) in row[k + 1..].iter_mut().zip(&pivot_row[k + 1..]) {
                *x *= pivot;
                *x -= &lead * p;
                if !unit_prev {
                    *x = exact_div(x, &prev, k);
                }
            }
        }
        prev = pivot.clone();
    }
    let d = std::mem::take(&mut a[n * n - 1]);
    if negate {
        -d
    } else {
        d
    }
}

fn exact_div(x: &BigInt, d: &BigInt, step: usize) -> BigInt {
    let (q, r) = x.div_rem(d);
    assert!(r.is_zero(), "Bareiss division not exact at step {step}");
    q
}

fn swap_rows<T>(a: &mut [T], n: usize, r1: usize, r2: usize) {
    let (lo, hi) = (r1.min(r2), r1.max(r2));
    let (head, tail) = a.split_at_mut(hi * n);
    head[lo * n..(lo + 1) * n].swap_with_slice(&mut tail[..n]);
}

/// Determinant by recursive cofactor expansion along the first row.
/// Independent of elimination; limited to [`ORACLE_MAX_ORDER`].
pub fn det_oracle_cofactor(m: &SeidelMatrix) -> Result<BigIntDet, LinalgError> {
    let n = m.order();
    if n > ORACLE_MAX_ORDER {
        return Err(LinalgError::OracleOrderTooLarge {
            n,
            max: ORACLE_MAX_ORDER,
        });
    }
    let all_columns = (1u32 << n) - 1;
    Ok(BigIntDet(cofactor(m, 0, all_columns)))
}

fn cofactor(m: &SeidelMatrix, row: usize, columns: u32) -> BigInt {
    if columns == 0 {
        return BigInt::one();
    }
    let mut total = BigInt::zero();
    let mut sign_positive = true;
    for col in 0..m.order() {
        if columns >> col & 1 == 0 {
            continue;
        }
        let entry = m.get(row, col);
        if entry != 0 {
            let minor = cofactor(m, row + 1, columns & !(1 << col));
            let term = minor * BigInt::from(entry);
            if sign_positive {
                total += term;
            } else {
                total -= term;
            }
        }
        sign_positive = !sign_positive;
    }
    total
}

/// Which reading of the inequality `det(S) >= n - 1` to test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DetMode {
    Signed,
    #[default]
    Absolute,
}

impl FromStr for DetMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "signed" => Ok(Self::Signed),
            "absolute" => Ok(Self::Absolute),
            other => Err(format!(
                "unknown mode {other:?} (expected signed or absolute)"
            )),
        }
    }
}

impl fmt::Display for DetMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Signed => "signed",
            Self::Absolute => "absolute",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureCheck {
    pub holds: bool,
    pub det: BigIntDet,
    pub threshold: u64,
    pub mode: DetMode,
}

/// Compares an exact determinant of an order-`n` Seidel matrix against `n - 1`.
pub fn det_meets_threshold(det: &BigIntDet, n: usize, mode: DetMode) -> bool {
    let threshold = BigInt::from(n - 1);
    match mode {
        DetMode::Signed => det.0 >= threshold,
        DetMode::Absolute => det.abs() >= threshold,
    }
}

/// Whether `det(S(g)) >= n - 1` (signed) or `|det(S(g))| >= n - 1` (absolute).
pub fn conjecture_holds(g: &Graph, mode: DetMode) -> ConjectureCheck {
    let n = g.order();
    let det = det_exact(&seidel_matrix(g));
    ConjectureCheck {
        holds: det_meets_threshold(&det, n, mode),
        threshold: (n - 1) as u64,
        det,
        mode,
    }
}
