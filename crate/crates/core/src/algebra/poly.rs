//! Univariate polynomials with exact rational coefficients.
//!
//! Coefficients are stored lowest degree first and trailing zeros are always
//! trimmed, so the zero polynomial has an empty coefficient vector.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::scalar::Scalar;
use crate::error::BoundError;

/// Polynomial with exact rational coefficients in the monomial basis.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ExactPoly {
    #[serde(with = "crate::serde_util::rational_vec")]
    coeffs: Vec<Scalar>,
}

impl ExactPoly {
    /// Builds a polynomial from coefficients `c_0, c_1, ...`.
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        ExactPoly { coeffs }
    }

    /// Builds a polynomial from small integer coefficients.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| super::scalar::int(c)).collect())
    }

    pub fn zero() -> Self {
        ExactPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `t`.
    pub fn x() -> Self {
        Self::new(vec![Scalar::zero(), Scalar::one()])
    }

    /// The monic linear factor `t - root`.
    pub fn linear_factor(root: &Scalar) -> Self {
        Self::new(vec![-root.clone(), Scalar::one()])
    }

    /// `c · t^deg`.
    pub fn monomial(c: Scalar, deg: usize) -> Self {
        let mut v = vec![Scalar::zero(); deg + 1];
        v[deg] = c;
        Self::new(v)
    }

    /// `∏ (t - r)` over the given roots.
    pub fn from_roots(roots: &[Scalar]) -> Self {
        roots
            .iter()
            .fold(Self::one(), |acc, r| &acc * &Self::linear_factor(r))
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// Coefficient of `t^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Leading coefficient (zero for the zero polynomial).
    pub fn leading(&self) -> Scalar {
        self.coeffs.last().cloned().unwrap_or_else(Scalar::zero)
    }

    /// Exact Horner evaluation.
    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &Scalar) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// First derivative.
    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(i.into()))
                .collect(),
        )
    }

    /// Euclidean division: returns `(quotient, remainder)` with
    /// `deg(remainder) < deg(divisor)`.
    pub fn divrem(&self, divisor: &ExactPoly) -> Result<(ExactPoly, ExactPoly), BoundError> {
        let dd = divisor.degree().ok_or(BoundError::DivisionByZero)?;
        let lead = divisor.leading();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((ExactPoly::zero(), self.clone()));
        }
        let mut quot = vec![Scalar::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] / &lead;
            if !c.is_zero() {
                for (j, dc) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] -= &c * dc;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        Ok((ExactPoly::new(quot), ExactPoly::new(rem)))
    }

    /// Quotient of a division that must be exact; errors on a remainder.
    pub fn div_exact(&self, divisor: &ExactPoly) -> Result<ExactPoly, BoundError> {
        let (q, r) = self.divrem(divisor)?;
        if !r.is_zero() {
            return Err(BoundError::Inconsistent(
                "polynomial division expected to be exact left a remainder".into(),
            ));
        }
        Ok(q)
    }

    /// Divides by `|leading coefficient|`; keeps the sign pattern intact.
    pub fn normalize_abs(&self) -> Self {
        let lead = self.leading();
        if lead.is_zero() {
            return self.clone();
        }
        self.scale(&(Scalar::one() / lead.abs()))
    }

    /// Monic associate (the zero polynomial stays zero).
    pub fn monic(&self) -> Self {
        let lead = self.leading();
        if lead.is_zero() {
            return self.clone();
        }
        self.scale(&(Scalar::one() / lead))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &ExactPoly) -> ExactPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b).expect("nonzero divisor");
            a = b;
            b = r.normalize_abs();
        }
        a.monic()
    }

    /// Squarefree part `p / gcd(p, p')` (monic).
    pub fn squarefree_part(&self) -> ExactPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_exact(&g).expect("gcd divides").monic()
    }

    /// Newton-form interpolation through the points `(x_i, y_i)` (distinct `x_i`).
    pub fn interpolate(points: &[(Scalar, Scalar)]) -> ExactPoly {
        let m = points.len();
        let xs: Vec<&Scalar> = points.iter().map(|p| &p.0).collect();
        let mut dd: Vec<Scalar> = points.iter().map(|p| p.1.clone()).collect();
        for level in 1..m {
            for i in (level..m).rev() {
                dd[i] = (&dd[i] - &dd[i - 1]) / (xs[i] - xs[i - level]);
            }
        }
        let mut acc = ExactPoly::zero();
        for i in (0..m).rev() {
            acc = &(&acc * &ExactPoly::linear_factor(xs[i])) + &ExactPoly::constant(dd[i].clone());
        }
        acc
    }

    /// Value at `t = 1`, the normalisation point of every orthogonal family.
    pub fn at_one(&self) -> Scalar {
        self.coeffs.iter().fold(Scalar::zero(), |acc, c| acc + c)
    }
}

impl fmt::Display for ExactPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() { ("-", -c.clone()) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
                if i > 0 {
                    write!(f, "*")?;
                }
            }
            match i {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &ExactPoly {
    type Output = ExactPoly;
    fn add(self, rhs: &ExactPoly) -> ExactPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        ExactPoly::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &ExactPoly {
    type Output = ExactPoly;
    fn sub(self, rhs: &ExactPoly) -> ExactPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        ExactPoly::new((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &ExactPoly {
    type Output = ExactPoly;
    fn mul(self, rhs: &ExactPoly) -> ExactPoly {
        if self.is_zero() || rhs.is_zero() {
            return ExactPoly::zero();
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ExactPoly::new(out)
    }
}

impl Neg for &ExactPoly {
    type Output = ExactPoly;
    fn neg(self) -> ExactPoly {
        ExactPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Add for ExactPoly {
    type Output = ExactPoly;
    fn add(self, rhs: ExactPoly) -> ExactPoly {
        &self + &rhs
    }
}

impl Sub for ExactPoly {
    type Output = ExactPoly;
    fn sub(self, rhs: ExactPoly) -> ExactPoly {
        &self - &rhs
    }
}

impl Mul for ExactPoly {
    type Output = ExactPoly;
    fn mul(self, rhs: ExactPoly) -> ExactPoly {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::{int, rat};

    #[test]
    fn product_of_linear_factors() {
        let p = &ExactPoly::from_ints(&[-1, 1]) * &ExactPoly::from_ints(&[1, 1]);
        assert_eq!(p, ExactPoly::from_ints(&[-1, 0, 1]));
    }

    #[test]
    fn divrem_simple() {
        let t2 = ExactPoly::from_ints(&[0, 0, 1]);
        let (q, r) = t2.divrem(&ExactPoly::x()).unwrap();
        assert_eq!(q, ExactPoly::x());
        assert!(r.is_zero());
        assert!(t2.divrem(&ExactPoly::zero()).is_err());
    }

    #[test]
    fn squarefree_part_removes_repeats() {
        let p = ExactPoly::from_roots(&[rat(1, 2), rat(1, 2), int(-1)]);
        assert_eq!(p.squarefree_part(), ExactPoly::from_roots(&[rat(1, 2), int(-1)]));
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let p = ExactPoly::new(vec![rat(1, 3), int(-2), rat(5, 7), int(1)]);
        let pts: Vec<_> = (0..4).map(|i| (rat(i, 3), p.eval(&rat(i, 3)))).collect();
        assert_eq!(ExactPoly::interpolate(&pts), p);
    }

    #[test]
    fn display_is_readable() {
        let p = ExactPoly::new(vec![int(1), int(-1), rat(3, 2)]);
        assert_eq!(p.to_string(), "3/2*t^2 - t + 1");
        assert_eq!(ExactPoly::zero().to_string(), "0");
    }
}
