//! Certified enclosures of `exp` and rational powers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::interval::Interval;
use super::scalar::{floor, Scalar};

fn pow2(bits: u32) -> BigInt {
    BigInt::one() << bits
}

/// Enclosure of `exp(x)` for rational `x`, of width about `2^-bits · exp(x)`.
pub fn exp_rational(x: &Scalar, bits: u32) -> Interval {
    if x.is_zero() {
        return Interval::one();
    }
    // Argument reduction: |x| / 2^r ≤ 1/2.
    let mut r = 0u32;
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut y = x.clone();
    while y.abs() > half {
        y /= BigRational::from_integer(BigInt::from(2));
        r += 1;
    }
    let work = bits + r + 16;
    let eps = BigRational::new(BigInt::one(), pow2(work));
    let ya = y.abs();
    let mut term = Scalar::one();
    let mut sum = Scalar::one();
    let mut j = 0u64;
    loop {
        j += 1;
        term = term * &y / BigRational::from_integer(BigInt::from(j));
        sum += &term;
        // Tail after term j is bounded by 2·|y|^{j+1}/(j+1)! since |y| ≤ 1/2.
        let next = term.abs() * &ya / BigRational::from_integer(BigInt::from(j + 1));
        if next < eps {
            let tail = next * BigRational::from_integer(BigInt::from(2));
            let mut acc = Interval::new(&sum - &tail, &sum + &tail).round_outward(work);
            for _ in 0..r {
                acc = acc.square().round_outward(work);
            }
            return acc.round_outward(bits + 8);
        }
    }
}

/// Enclosure of `exp` over an interval argument (monotone).
pub fn exp_interval(x: &Interval, bits: u32) -> Interval {
    if let Some(v) = x.exact() {
        return exp_rational(v, bits);
    }
    Interval::new(exp_rational(&x.lo, bits).lo, exp_rational(&x.hi, bits).hi)
}

/// Enclosure of `y^(1/b)` for rational `y ≥ 0`, width `2^-bits`.
pub fn nth_root(y: &Scalar, b: u32, bits: u32) -> Interval {
    assert!(!y.is_negative(), "root of a negative number");
    if b == 1 {
        return Interval::point(y.clone());
    }
    let scaled = floor(&(y * BigRational::from_integer(pow2(bits * b))));
    let r = scaled.nth_root(b);
    // Exact when r^b equals y·2^(b·bits) exactly.
    let exact = BigRational::from_integer(num_traits::pow(r.clone(), b as usize)) == y * BigRational::from_integer(pow2(bits * b));
    let lo = BigRational::new(r.clone(), pow2(bits));
    if exact {
        return Interval::point(lo);
    }
    let hi = BigRational::new(r + 1, pow2(bits));
    Interval::new(lo, hi)
}

/// Enclosure of `z^(-σ)` for a positive interval `z` and rational `σ > 0`.
pub fn pow_neg_rational(z: &Interval, sigma: &Scalar, bits: u32) -> Interval {
    assert!(z.lo.is_positive(), "base must be positive");
    let a: u32 = sigma.numer().try_into().expect("small exponent numerator");
    let b: u32 = sigma.denom().try_into().expect("small exponent denominator");
    let at = |x: &Scalar| {
        let base = Scalar::one() / num_traits::pow(x.clone(), a as usize);
        nth_root(&base, b, bits)
    };
    if let Some(v) = z.exact() {
        return at(v);
    }
    Interval::new(at(&z.hi).lo, at(&z.lo).hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::{int, rat, to_f64};

    #[test]
    fn exp_encloses_reference_values() {
        let e = exp_rational(&int(1), 80);
        assert!(to_f64(&e.lo) <= std::f64::consts::E && std::f64::consts::E <= to_f64(&e.hi) + 1e-15);
        assert!(e.width_at_most_pow2(70));
        let m = exp_rational(&rat(-3, 2), 80);
        let r = (-1.5f64).exp();
        assert!((to_f64(&m.mid()) - r).abs() < 1e-15);
        // exp(a)·exp(-a) encloses 1.
        let p = exp_rational(&rat(7, 3), 90).mul(&exp_rational(&rat(-7, 3), 90));
        assert!(p.contains(&int(1)));
    }

    #[test]
    fn roots_are_certified() {
        let r = nth_root(&int(2), 2, 64);
        assert!(&r.lo * &r.lo <= int(2) && int(2) <= &r.hi * &r.hi);
        assert!(nth_root(&rat(1, 4), 2, 64).is_point());
        let p = pow_neg_rational(&Interval::point(int(4)), &rat(3, 2), 64);
        assert_eq!(p, Interval::point(rat(1, 8)));
    }
}
