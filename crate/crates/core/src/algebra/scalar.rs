//! Exact rational scalars and small helpers shared by every module.
//!
//! All rational quantities are `BigRational`, which keeps numerator and
//! denominator coprime with a positive denominator after every operation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational scalar used throughout the crate.
pub type Scalar = BigRational;

/// Default working precision in fractional bits.
pub const DEFAULT_PRECISION: u32 = 128;

/// Environment variable that overrides the default precision.
pub const PRECISION_ENV: &str = "CODEBOUNDS_PREC";

/// Precision taken from `CODEBOUNDS_PREC` when set to a positive integer,
/// otherwise [`DEFAULT_PRECISION`].
pub fn default_precision() -> u32 {
    std::env::var(PRECISION_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<u32>().ok())
        .filter(|&p| p > 0)
        .unwrap_or(DEFAULT_PRECISION)
}

/// The rational `num/den`.
pub fn rat(num: i64, den: i64) -> Scalar {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// The integer `v` as a rational.
pub fn int(v: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(v))
}

/// A big integer as a rational.
pub fn from_bigint(v: BigInt) -> Scalar {
    BigRational::from_integer(v)
}

/// Binomial coefficient `C(n, k)` (zero when `k > n`).
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `x^e` for a non-negative integer exponent.
pub fn pow(x: &Scalar, e: u32) -> Scalar {
    num_traits::pow(x.clone(), e as usize)
}

/// Largest integer not exceeding `x`.
pub fn floor(x: &Scalar) -> BigInt {
    x.numer().div_floor(x.denom())
}

/// Smallest integer not below `x`.
pub fn ceil(x: &Scalar) -> BigInt {
    -((-x.numer()).div_floor(x.denom()))
}

/// Sign of `x` as -1, 0 or 1.
pub fn sign(x: &Scalar) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// Renders `x` as `p/q` (or `p` when the denominator is one).
pub fn format_rational(x: &Scalar) -> String {
    x.to_string()
}

/// Parses `p/q`, a plain integer `p`, or a finite decimal such as `-0.25`.
pub fn parse_rational(s: &str) -> Result<Scalar, String> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| format!("bad numerator in {s:?}"))?;
        let q: BigInt = q.trim().parse().map_err(|_| format!("bad denominator in {s:?}"))?;
        if q.is_zero() {
            return Err(format!("zero denominator in {s:?}"));
        }
        return Ok(BigRational::new(p, q));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        let neg = ip.trim_start().starts_with('-');
        let ip_val: BigInt = if ip.is_empty() || ip == "-" || ip == "+" {
            BigInt::zero()
        } else {
            ip.parse().map_err(|_| format!("bad number {s:?}"))?
        };
        if fp.is_empty() || !fp.chars().all(|c| c.is_ascii_digit()) {
            return Err(format!("bad number {s:?}"));
        }
        let scale = num_traits::pow(BigInt::from(10), fp.len());
        let frac: BigInt = fp.parse().map_err(|_| format!("bad number {s:?}"))?;
        let mag = ip_val.abs() * &scale + frac;
        let num = if neg { -mag } else { mag };
        return Ok(BigRational::new(num, scale));
    }
    let p: BigInt = s.parse().map_err(|_| format!("bad number {s:?}"))?;
    Ok(BigRational::from_integer(p))
}

/// Lossy conversion for human-readable output only.
pub fn to_f64(x: &Scalar) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(4, 0), BigInt::from(1));
        assert_eq!(binomial(3, 4), BigInt::from(0));
        assert_eq!(binomial(30, 15), BigInt::from(155_117_520u64));
    }

    #[test]
    fn floors_and_ceils() {
        assert_eq!(floor(&rat(7, 2)), BigInt::from(3));
        assert_eq!(floor(&rat(-7, 2)), BigInt::from(-4));
        assert_eq!(ceil(&rat(7, 2)), BigInt::from(4));
        assert_eq!(ceil(&rat(-7, 2)), BigInt::from(-3));
        assert_eq!(floor(&int(5)), BigInt::from(5));
    }

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["3/4", "-17/28", "5", "0"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(parse_rational("-0.25").unwrap(), rat(-1, 4));
        assert_eq!(parse_rational("6/8").unwrap(), rat(3, 4));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }
}
