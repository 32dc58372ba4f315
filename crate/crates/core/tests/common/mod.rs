//! Independent oracles shared by the integration tests. Nothing here calls
//! into the code paths it is used to check.

#![allow(dead_code)]

use seidel_core::Graph;

/// `J - I - 2A` built straight from the 0/1 adjacency matrix.
pub fn j_minus_i_minus_2a(g: &Graph) -> Vec<Vec<i64>> {
    let a = g.adjacency_matrix();
    let n = g.order();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| 1 - i64::from(i == j) - 2 * i64::from(a[i][j]))
                .collect()
        })
        .collect()
}

/// Leibniz formula: sum over all permutations. Fine up to order 8.
pub fn leibniz_det(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = 0i64;
    // Heap's algorithm; each swap flips the permutation's sign.
    let mut c = vec![0usize; n];
    let mut sign = 1i64;
    let term = |perm: &[usize]| -> i64 { (0..n).map(|i| m[i][perm[i]]).product() };
    total += sign * term(&perm);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            sign = -sign;
            total += sign * term(&perm);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    total
}

/// Characteristic polynomial `det(xI - M)` as coefficients of
/// `x^n, x^(n-1), ..., x^0`, from sums of principal minors.
pub fn char_poly(m: &[Vec<i64>]) -> Vec<i64> {
    let n = m.len();
    let mut coeffs = vec![0i64; n + 1];
    coeffs[0] = 1;
    for mask in 1u32..(1 << n) {
        let idx: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let sub: Vec<Vec<i64>> = idx
            .iter()
            .map(|&i| idx.iter().map(|&j| m[i][j]).collect())
            .collect();
        let k = idx.len();
        let sign = if k.is_multiple_of(2) { 1 } else { -1 };
        coeffs[k] += sign * leibniz_det(&sub);
    }
    coeffs
}

pub fn poly_eval(coeffs: &[i64], x: f64) -> f64 {
    coeffs.iter().fold(0.0, |acc, &c| acc * x + c as f64)
}

/// Coefficients of `prod (x - r_i)`, highest degree first.
pub fn poly_from_roots(roots: &[f64]) -> Vec<f64> {
    let mut coeffs = vec![1.0];
    for &r in roots {
        let mut next = vec![0.0; coeffs.len() + 1];
        for (k, &c) in coeffs.iter().enumerate() {
            next[k] += c;
            next[k + 1] -= r * c;
        }
        coeffs = next;
    }
    coeffs
}

/// Adaptive Simpson quadrature with Richardson correction.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, fa: f64, b: f64, fb: f64) -> (f64, f64, f64) {
        let m = 0.5 * (a + b);
        let fm = f(m);
        (m, fm, (b - a) / 6.0 * (fa + 4.0 * fm + fb))
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse<F: Fn(f64) -> f64>(
        f: &F,
        a: f64,
        fa: f64,
        b: f64,
        fb: f64,
        m: f64,
        fm: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let (lm, flm, left) = simpson(f, a, fa, m, fm);
        let (rm, frm, right) = simpson(f, m, fm, b, fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        recurse(f, a, fa, m, fm, lm, flm, left, tol / 2.0, depth - 1)
            + recurse(f, m, fm, b, fb, rm, frm, right, tol / 2.0, depth - 1)
    }
    let (fa, fb) = (f(a), f(b));
    let (m, fm, whole) = simpson(f, a, fa, b, fb);
    recurse(f, a, fa, b, fb, m, fm, whole, tol, 60)
}

/// `(1/pi) * integral_b^2 sqrt(4 - x^2) dx` by quadrature.
pub fn semicircle_tail_quadrature(b: f64) -> f64 {
    let integrand = |x: f64| (4.0 - x * x).max(0.0).sqrt() / std::f64::consts::PI;
    adaptive_simpson(&integrand, b, 2.0, 1e-13)
}
