//! Explicit formulas for `L_{2k}` used as independent cross-checks of the
//! quadrature route `L_{2k} = 1/ρ_{k+1}`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::system::EllSystem;
use crate::algebra::scalar::{int, Scalar};
use crate::krawtchouk::HammingSpace;

fn sc(v: u32) -> Scalar {
    Scalar::from(BigInt::from(v))
}

/// Explicit partial-sum formula for `L_{2k}(n, ℓ, s)`:
///
/// `S_k (Q_{k-1}^{1,ℓ}(s) - Q_k^{1,ℓ}(s))` divided by
/// `r_{k+1} Q_{k+1}(ℓ) Q_{k-1}^{1,ℓ}(s) / (S_{k+1}(Q_{k+1}^{1,0}(ℓ) - Q_k^{1,0}(ℓ)))
///  - r_k Q_k(ℓ) Q_k^{1,ℓ}(s) / (S_{k-1}(Q_k^{1,0}(ℓ) - Q_{k-1}^{1,0}(ℓ)))`,
/// with `S_j = Σ_{i≤j} r_i`.  `None` when a denominator vanishes.
pub fn explicit_l2k(sys: &EllSystem, s: &Scalar) -> Option<Scalar> {
    let k = sys.k;
    let space = &sys.space;
    let ell = &sys.ell;
    let plain = space.krawtchouk_polys(k + 1);
    let part = |j: usize| Scalar::from(space.partial_sum(j));
    let r = |j: usize| Scalar::from(space.r(j).clone());
    let q10 = |i: usize| sys.one_zero.polys[i].eval(ell);
    let qe_km1 = sys.q_ell(k - 1).eval(s);
    let qe_k = sys.q_ell(k).eval(s);

    let num = part(k) * (&qe_km1 - &qe_k);
    let d1 = part(k + 1) * (q10(k + 1) - q10(k));
    let d2 = part(k - 1) * (q10(k) - q10(k - 1));
    if d1.is_zero() || d2.is_zero() {
        return None;
    }
    let den = r(k + 1) * plain[k + 1].eval(ell) * &qe_km1 / d1 - r(k) * plain[k].eval(ell) * &qe_k / d2;
    (!den.is_zero()).then(|| num / den)
}

/// The first-level bound of Helleseth–Kløve–Levenshtein:
/// `L / (L + 4(q-1)(1-n) + 2nq(q-1)(s+ℓ))` with `L = nq²(1-s)(1-ℓ)`.
pub fn hkl_bound(space: &HammingSpace, ell: &Scalar, s: &Scalar) -> Option<Scalar> {
    let (n, q) = (sc(space.n()), sc(space.q()));
    let one = Scalar::one();
    let l = &n * &q * &q * (&one - s) * (&one - ell);
    let den = &l + int(4) * (&q - &one) * (&one - &n) + int(2) * &n * &q * (&q - &one) * (s + ell);
    (!den.is_zero()).then(|| l / den)
}

/// `ℓ = (2-n)/n`, the maximum-distance parameter of the binary family with
/// `D = n - 1`.
pub fn binary_ell(n: u32) -> Scalar {
    Scalar::new(BigInt::from(2) - BigInt::from(n), BigInt::from(n))
}

/// `L_2(n, (2-n)/n, s) = 2(1-s)(n-1) / (1-(n-2)s)` for `q = 2`.
pub fn binary_l2(n: u32, s: &Scalar) -> Option<Scalar> {
    let n = sc(n);
    let one = Scalar::one();
    let den = &one - (&n - int(2)) * s;
    (!den.is_zero()).then(|| int(2) * (&one - s) * (&n - &one) / den)
}

/// Window `(-1/n, 2/(n(n-3))]` in which the binary `L_2` formula applies.
pub fn binary_l2_window(n: u32) -> (Scalar, Scalar) {
    let nn = sc(n);
    (-Scalar::one() / &nn, int(2) / (&nn * (&nn - int(3))))
}

/// True when `s ∈ (-1/n, 2/(n(n-3))]`.
pub fn in_binary_l2_window(n: u32, s: &Scalar) -> bool {
    let (lo, hi) = binary_l2_window(n);
    s > &lo && s <= &hi
}

/// Coefficients `(A, B, C, D)` of the printed binary `L_4` denominator.
pub fn binary_l4_coefficients(n: u32) -> [Scalar; 4] {
    let n = sc(n);
    let p = |c: &[i64]| c.iter().rev().fold(Scalar::zero(), |acc, &ci| acc * &n + int(ci));
    [
        p(&[-18, 25, -9, 1]),
        p(&[-162, 351, -207, 29]),
        p(&[972, -648, -675, 369, -38, 1]),
        p(&[162, 81, -279, 36, -1]),
    ]
}

/// The printed binary `L_4` formula
/// `2(1-s)n(n-1)(9s(n-4)+n-18)² / (81nAs³ + 9Bs² + Cs + D)`.
pub fn binary_l4_printed(n: u32, s: &Scalar) -> Option<Scalar> {
    let [a, b, c, d] = binary_l4_coefficients(n);
    let nn = sc(n);
    let one = Scalar::one();
    let lin = int(9) * s * (&nn - int(4)) + &nn - int(18);
    let num = int(2) * (&one - s) * &nn * (&nn - &one) * &lin * &lin;
    let den = int(81) * &nn * a * s * s * s + int(9) * b * s * s + c * s + d;
    (!den.is_zero()).then(|| num / den)
}

/// Binary `L_4(n, (2-n)/n, s)` re-derived from the quadrature identity:
/// `2(s-1)(n³s - 3n²s + n² - 2ns - 7n + 2) / (n²s² - 4ns² - 2ns - n + 4s + 6)`.
pub fn binary_l4_derived(n: u32, s: &Scalar) -> Option<Scalar> {
    let n = sc(n);
    let one = Scalar::one();
    let n2 = &n * &n;
    let num = int(2) * (s - &one) * (&n2 * &n * s - int(3) * &n2 * s + &n2 - int(2) * &n * s - int(7) * &n + int(2));
    let den = &n2 * s * s - int(4) * &n * s * s - int(2) * &n * s - &n + int(4) * s + int(6);
    (!den.is_zero()).then(|| num / den)
}

/// Exact membership in `((√(n-1) - 1)/n, (2 + √(n³-12n²+41n-26))/(n(n-5))]`,
/// the window of the binary `L_4` formula (requires `n > 5`).
pub fn in_binary_l4_window(n: u32, s: &Scalar) -> bool {
    if n <= 5 {
        return false;
    }
    let nn = sc(n);
    // Lower end: s·n + 1 > √(n-1).
    let a = s * &nn + Scalar::one();
    let lower_ok = a.is_positive() && &a * &a > &nn - Scalar::one();
    // Upper end: s·n(n-5) - 2 ≤ √(n³-12n²+41n-26).
    let b = s * &nn * (&nn - int(5)) - int(2);
    let rad = &nn * &nn * &nn - int(12) * &nn * &nn + int(41) * &nn - int(26);
    let upper_ok = !b.is_positive() || (!rad.is_negative() && &b * &b <= rad);
    lower_ok && upper_ok
}

/// Floating-point endpoints of the binary `L_4` window, for display.
pub fn binary_l4_window_f64(n: u32) -> (f64, f64) {
    let n = n as f64;
    (((n - 1.0).sqrt() - 1.0) / n, (2.0 + (n * n * n - 12.0 * n * n + 41.0 * n - 26.0).sqrt()) / (n * (n - 5.0)))
}

/// Ovoid parameters `(n, ℓ, s) = (q²+1, (1-q²)/(1+q²), (1+2q-q²)/(1+q²))`.
pub fn ovoid_params(q: u32) -> (u32, Scalar, Scalar) {
    let n = q * q + 1;
    let qq = sc(q);
    let den = sc(n);
    let ell = (Scalar::one() - &qq * &qq) / &den;
    let s = (Scalar::one() + int(2) * &qq - &qq * &qq) / &den;
    (n, ell, s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::rat;

    #[test]
    fn binary_l2_examples() {
        assert_eq!(binary_l2(5, &rat(1, 5)).unwrap(), int(16));
        assert!(in_binary_l2_window(9, &rat(1, 27)));
        assert!(!in_binary_l2_window(9, &rat(-1, 9)));
    }

    #[test]
    fn derived_l4_hits_even_weight_value() {
        assert_eq!(binary_l4_derived(7, &rat(3, 7)).unwrap(), int(64));
        assert_ne!(binary_l4_printed(7, &rat(3, 7)).unwrap(), int(64));
    }

    #[test]
    fn l4_coefficients_at_small_n() {
        let [a, b, c, d] = binary_l4_coefficients(2);
        assert_eq!(a, int(8 - 36 + 50 - 18));
        assert_eq!(b, int(29 * 8 - 207 * 4 + 702 - 162));
        assert_eq!(c, int(32 - 38 * 16 + 369 * 8 - 675 * 4 - 1296 + 972));
        assert_eq!(d, int(-16 + 36 * 8 - 279 * 4 + 162 + 162));
    }

    #[test]
    fn ovoid_parameters() {
        let (n, ell, s) = ovoid_params(3);
        assert_eq!((n, ell, s), (10, rat(-4, 5), rat(-1, 5)));
    }
}
