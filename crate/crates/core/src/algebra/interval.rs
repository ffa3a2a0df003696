//! Closed intervals with exact rational endpoints.
//!
//! An [`Interval`] is a certificate that a real number lies in `[lo, hi]`.
//! Arithmetic is exact on the endpoints; [`Interval::round_outward`] trims the
//! endpoint denominators to a dyadic grid while only ever widening the
//! interval, which keeps long evaluation chains cheap.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::poly::ExactPoly;
use super::scalar::{ceil, floor, Scalar};
use crate::error::BoundError;

/// Certified enclosure `[lo, hi]` of a real quantity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interval {
    #[serde(with = "crate::serde_util::rational")]
    pub lo: Scalar,
    #[serde(with = "crate::serde_util::rational")]
    pub hi: Scalar,
}

/// Spec-facing name for an interval enclosure.
pub type CertifiedValue = Interval;

fn two_pow(bits: u32) -> BigInt {
    BigInt::one() << bits
}

impl Interval {
    /// Interval `[lo, hi]`; panics when `lo > hi`.
    pub fn new(lo: Scalar, hi: Scalar) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        Interval { lo, hi }
    }

    /// Degenerate interval `[x, x]`.
    pub fn point(x: Scalar) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn zero() -> Self {
        Self::point(Scalar::zero())
    }

    pub fn one() -> Self {
        Self::point(Scalar::one())
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    /// The exact value when the interval is a single point.
    pub fn exact(&self) -> Option<&Scalar> {
        self.is_point().then_some(&self.lo)
    }

    pub fn width(&self) -> Scalar {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> Scalar {
        (&self.lo + &self.hi) / BigRational::from_integer(2.into())
    }

    pub fn contains(&self, x: &Scalar) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(&Scalar::zero())
    }

    pub fn intersects(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// Common part of two intervals, if any.
    pub fn intersection(&self, other: &Interval) -> Option<Interval> {
        self.intersects(other).then(|| {
            Interval::new(self.lo.clone().max(other.lo.clone()), self.hi.clone().min(other.hi.clone()))
        })
    }

    /// Smallest interval containing both.
    pub fn hull(&self, other: &Interval) -> Interval {
        Interval::new(self.lo.clone().min(other.lo.clone()), self.hi.clone().max(other.hi.clone()))
    }

    /// Certainly positive.
    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    /// Certainly negative.
    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    /// Certainly non-negative.
    pub fn is_nonnegative(&self) -> bool {
        !self.lo.is_negative()
    }

    /// Certainly non-positive.
    pub fn is_nonpositive(&self) -> bool {
        !self.hi.is_positive()
    }

    /// Certified comparison: `Some(Less)` when every point of `self` is below
    /// every point of `other`, `None` when the intervals overlap (and are not
    /// the same single point).
    pub fn certified_cmp(&self, other: &Interval) -> Option<Ordering> {
        if self.hi < other.lo {
            Some(Ordering::Less)
        } else if self.lo > other.hi {
            Some(Ordering::Greater)
        } else if self.is_point() && other.is_point() && self.lo == other.lo {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    /// Enclosure of `min(x, y)` over `x ∈ self`, `y ∈ other`.
    pub fn min(&self, other: &Interval) -> Interval {
        Interval::new(self.lo.clone().min(other.lo.clone()), self.hi.clone().min(other.hi.clone()))
    }

    /// Enclosure of `max(x, y)`.
    pub fn max(&self, other: &Interval) -> Interval {
        Interval::new(self.lo.clone().max(other.lo.clone()), self.hi.clone().max(other.hi.clone()))
    }

    pub fn neg(&self) -> Interval {
        Interval::new(-&self.hi, -&self.lo)
    }

    pub fn add(&self, other: &Interval) -> Interval {
        Interval::new(&self.lo + &other.lo, &self.hi + &other.hi)
    }

    pub fn sub(&self, other: &Interval) -> Interval {
        Interval::new(&self.lo - &other.hi, &self.hi - &other.lo)
    }

    pub fn add_scalar(&self, c: &Scalar) -> Interval {
        Interval::new(&self.lo + c, &self.hi + c)
    }

    pub fn mul_scalar(&self, c: &Scalar) -> Interval {
        if c.is_negative() {
            Interval::new(&self.hi * c, &self.lo * c)
        } else {
            Interval::new(&self.lo * c, &self.hi * c)
        }
    }

    pub fn mul(&self, other: &Interval) -> Interval {
        if self.is_point() {
            return other.mul_scalar(&self.lo);
        }
        if other.is_point() {
            return self.mul_scalar(&other.lo);
        }
        let cands = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = cands.iter().min().unwrap().clone();
        let hi = cands.iter().max().unwrap().clone();
        Interval::new(lo, hi)
    }

    /// Enclosure of `x²` (tighter than `mul(self, self)` around zero).
    pub fn square(&self) -> Interval {
        if self.contains_zero() {
            let m = self.lo.abs().max(self.hi.abs());
            Interval::new(Scalar::zero(), &m * &m)
        } else {
            let a = &self.lo * &self.lo;
            let b = &self.hi * &self.hi;
            if a <= b {
                Interval::new(a, b)
            } else {
                Interval::new(b, a)
            }
        }
    }

    /// `x^e` for non-negative integer exponents.
    pub fn powi(&self, e: u32) -> Interval {
        if e == 0 {
            return Interval::one();
        }
        if !self.lo.is_negative() {
            return Interval::new(super::scalar::pow(&self.lo, e), super::scalar::pow(&self.hi, e));
        }
        let mut acc = Interval::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Reciprocal; errors when the interval contains zero.
    pub fn recip(&self) -> Result<Interval, BoundError> {
        if self.contains_zero() {
            return Err(BoundError::Precision(
                "division by an interval that contains zero".into(),
            ));
        }
        Ok(Interval::new(Scalar::one() / &self.hi, Scalar::one() / &self.lo))
    }

    pub fn div(&self, other: &Interval) -> Result<Interval, BoundError> {
        if let Some(c) = other.exact() {
            if c.is_zero() {
                return Err(BoundError::Precision("division by zero".into()));
            }
            return Ok(self.mul_scalar(&(Scalar::one() / c)));
        }
        Ok(self.mul(&other.recip()?))
    }

    /// Widens to endpoints on the dyadic grid `2^-bits` when the endpoint
    /// denominators exceed that grid.  Never shrinks the interval.
    pub fn round_outward(&self, bits: u32) -> Interval {
        let limit = bits as u64 + 1;
        let lo_big = self.lo.denom().bits() > limit;
        let hi_big = self.hi.denom().bits() > limit;
        if !lo_big && !hi_big {
            return self.clone();
        }
        let scale = BigRational::from_integer(two_pow(bits));
        let lo = if lo_big {
            BigRational::new(floor(&(&self.lo * &scale)), two_pow(bits))
        } else {
            self.lo.clone()
        };
        let hi = if hi_big {
            BigRational::new(ceil(&(&self.hi * &scale)), two_pow(bits))
        } else {
            self.hi.clone()
        };
        Interval::new(lo, hi)
    }

    /// `-log2(width)` rounded down, or `None` for a point interval.
    pub fn width_bits(&self) -> Option<i64> {
        let w = self.width();
        if w.is_zero() {
            return None;
        }
        let num_bits = w.numer().bits() as i64;
        let den_bits = w.denom().bits() as i64;
        Some(den_bits - num_bits)
    }

    /// True when the width is at most `2^-bits` (points always qualify).
    pub fn width_at_most_pow2(&self, bits: u32) -> bool {
        let w = self.width();
        w <= BigRational::new(BigInt::one(), two_pow(bits))
    }

    /// Midpoint as a float, for human-readable output only.
    pub fn to_f64(&self) -> f64 {
        super::scalar::to_f64(&self.mid())
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exact() {
            Some(x) => write!(f, "{x}"),
            None => write!(f, "[{:.12e} ± {:.1e}]", self.to_f64(), super::scalar::to_f64(&self.width()) / 2.0),
        }
    }
}

/// Horner evaluation of an exact polynomial on an interval argument, rounding
/// outward to `bits` after every step.
pub fn eval_poly(p: &ExactPoly, x: &Interval, bits: u32) -> Interval {
    if let Some(v) = x.exact() {
        return Interval::point(p.eval(v));
    }
    let mut acc = Interval::zero();
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(x).add_scalar(c).round_outward(bits);
    }
    acc
}

/// Evaluation of an exact polynomial on an interval argument using the
/// mean-value form `p(m) + p'(x)(x - m)`, intersected with the Horner
/// enclosure.  Much tighter on narrow intervals around ill-conditioned points.
pub fn eval_poly_tight(p: &ExactPoly, x: &Interval, bits: u32) -> Interval {
    if let Some(v) = x.exact() {
        return Interval::point(p.eval(v));
    }
    let m = x.mid();
    let pm = Interval::point(p.eval(&m));
    let dp = eval_poly(&p.derivative(), x, bits);
    let dx = x.add_scalar(&-m);
    let mv = pm.add(&dp.mul(&dx)).round_outward(bits);
    let horner = eval_poly(p, x, bits);
    mv.intersection(&horner).unwrap_or(mv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::{int, rat};

    #[test]
    fn arithmetic_encloses() {
        let a = Interval::new(rat(-1, 2), rat(1, 3));
        let b = Interval::new(int(2), int(3));
        let p = a.mul(&b);
        assert_eq!(p, Interval::new(rat(-3, 2), int(1)));
        assert_eq!(a.square(), Interval::new(int(0), rat(1, 4)));
        assert!(a.recip().is_err());
        assert_eq!(b.recip().unwrap(), Interval::new(rat(1, 3), rat(1, 2)));
    }

    #[test]
    fn rounding_only_widens() {
        let x = Interval::point(rat(1, 3));
        let r = x.round_outward(20);
        assert!(r.lo <= rat(1, 3) && rat(1, 3) <= r.hi);
        assert!(r.width_at_most_pow2(19));
        let d = Interval::point(rat(3, 8));
        assert_eq!(d.round_outward(20), d);
    }

    #[test]
    fn tight_polynomial_evaluation_contains_true_value() {
        let p = ExactPoly::from_ints(&[-2, 0, 1]);
        let x = Interval::new(rat(141, 100), rat(142, 100));
        let v = eval_poly_tight(&p, &x, 64);
        assert!(v.contains(&(rat(141, 100) * rat(141, 100) - int(2))));
        assert!(v.contains_zero());
    }
}
