//! Absolutely monotone potentials `h` on `[-1, 1)` with certified evaluation
//! of `h` and its derivatives.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::interval::Interval;
use crate::algebra::scalar::{format_rational, parse_rational, Scalar};
use crate::algebra::transcendental::{exp_interval, pow_neg_rational};
use crate::error::{BoundError, Result};
use crate::krawtchouk::HammingSpace;

/// A potential.  The inverse-power family depends on `n` through
/// `z = n(1-t)/2`, which equals the Hamming distance on the grid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Potential {
    /// `h(t) = (n(1-t)/2)^{-σ}`, `σ > 0`.
    InversePower {
        #[serde(with = "crate::serde_util::rational")]
        sigma: Scalar,
    },
    /// `h(t) = exp(c t)`, `c > 0`.
    Exponential {
        #[serde(with = "crate::serde_util::rational")]
        c: Scalar,
    },
    /// `h(t) = ((1+t)/2)^m`, `m ≥ 1`.
    Monomial { m: u32 },
    /// Values on `T_n` only (index `j` holds `h(t_j)`); no derivatives.
    Table {
        #[serde(with = "crate::serde_util::rational_vec")]
        values: Vec<Scalar>,
    },
    /// `factor · h` with `factor > 0`.
    Scaled {
        #[serde(with = "crate::serde_util::rational")]
        factor: Scalar,
        inner: Box<Potential>,
    },
}

/// Parsed potential descriptor; table files are resolved by the caller.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PotentialSpec {
    Builtin(Potential),
    /// `table:@path`.
    TableFile(String),
}

fn param(body: &str, key: &str) -> Result<Scalar> {
    let (k, v) = body
        .split_once('=')
        .ok_or_else(|| BoundError::Potential(format!("expected `{key}=<value>`, got `{body}`")))?;
    if k.trim() != key {
        return Err(BoundError::Potential(format!("expected parameter `{key}`, got `{k}`")));
    }
    parse_rational(v.trim()).map_err(BoundError::Potential)
}

impl FromStr for PotentialSpec {
    type Err = BoundError;

    /// Grammar: `invpow:sigma=<r>`, `exp:c=<r>`, `monomial:m=<int>`, `table:@<path>`.
    fn from_str(s: &str) -> Result<Self> {
        let (kind, body) = s
            .split_once(':')
            .ok_or_else(|| BoundError::Potential(format!("potential descriptor `{s}` lacks a `kind:` prefix")))?;
        let pot = match kind.trim() {
            "invpow" => Potential::inverse_power(param(body, "sigma")?)?,
            "exp" => Potential::exponential(param(body, "c")?)?,
            "monomial" => {
                let m = param(body, "m")?;
                if !m.is_integer() || !m.is_positive() {
                    return Err(BoundError::Potential(format!("monomial degree must be a positive integer, got {m}")));
                }
                Potential::Monomial { m: m.to_integer().try_into().map_err(|_| BoundError::Potential("degree too large".into()))? }
            }
            "table" => {
                let path = body
                    .strip_prefix('@')
                    .ok_or_else(|| BoundError::Potential("table descriptor must be `table:@<file>`".into()))?;
                return Ok(PotentialSpec::TableFile(path.to_string()));
            }
            other => return Err(BoundError::Potential(format!("unknown potential kind `{other}`"))),
        };
        Ok(PotentialSpec::Builtin(pot))
    }
}

fn rising(sigma: &Scalar, m: usize) -> Scalar {
    (0..m).fold(Scalar::one(), |acc, i| acc * (sigma + Scalar::from(BigInt::from(i))))
}

impl Potential {
    pub fn inverse_power(sigma: Scalar) -> Result<Self> {
        if !sigma.is_positive() {
            return Err(BoundError::Potential(format!("σ must be positive, got {sigma}")));
        }
        Ok(Potential::InversePower { sigma })
    }

    pub fn exponential(c: Scalar) -> Result<Self> {
        if !c.is_positive() {
            return Err(BoundError::Potential(format!("c must be positive, got {c}")));
        }
        Ok(Potential::Exponential { c })
    }

    /// A table of values on `T_n`.  Absolute monotonicity cannot be checked
    /// from samples, so the caller must attest it.
    pub fn table(values: Vec<Scalar>, attested: bool) -> Result<Self> {
        if !attested {
            return Err(BoundError::Potential("table potentials require an absolute-monotonicity attestation".into()));
        }
        Ok(Potential::Table { values })
    }

    /// Parses a table file: one rational per entry, separated by whitespace
    /// or commas, `#` starts a comment.
    pub fn parse_table(text: &str, attested: bool) -> Result<Self> {
        let values = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or(""))
            .flat_map(|l| l.split(|c: char| c == ',' || c.is_whitespace()))
            .filter(|t| !t.is_empty())
            .map(|t| parse_rational(t).map_err(BoundError::Potential))
            .collect::<Result<Vec<_>>>()?;
        Self::table(values, attested)
    }

    /// `factor · self`.
    pub fn scaled(self, factor: Scalar) -> Result<Self> {
        if !factor.is_positive() {
            return Err(BoundError::Potential("scaling factor must be positive".into()));
        }
        Ok(Potential::Scaled { factor, inner: Box::new(self) })
    }

    /// True when derivatives are available (everything except tables).
    pub fn has_derivatives(&self) -> bool {
        match self {
            Potential::Table { .. } => false,
            Potential::Scaled { inner, .. } => inner.has_derivatives(),
            _ => true,
        }
    }

    /// Certified enclosure of `h^{(m)}(x)` on `F_q^n` with `x ⊂ [-1, 1)`.
    pub fn derivative(&self, n: u32, m: usize, x: &Interval, bits: u32) -> Result<Interval> {
        match self {
            Potential::InversePower { sigma } => {
                let half_n = Scalar::new(BigInt::from(n), BigInt::from(2));
                let z = x.neg().add_scalar(&Scalar::one()).mul_scalar(&half_n);
                if !z.lo.is_positive() {
                    return Err(BoundError::Potential("inverse-power potential evaluated at t = 1".into()));
                }
                let e = sigma + Scalar::from(BigInt::from(m));
                let factor = rising(sigma, m) * num_traits::pow(half_n, m);
                Ok(pow_neg_rational(&z, &e, bits).mul_scalar(&factor).round_outward(bits))
            }
            Potential::Exponential { c } => {
                let v = exp_interval(&x.mul_scalar(c), bits);
                Ok(v.mul_scalar(&num_traits::pow(c.clone(), m)).round_outward(bits))
            }
            Potential::Monomial { m: deg } => {
                let deg = *deg as usize;
                if m > deg {
                    return Ok(Interval::zero());
                }
                let base = x.add_scalar(&Scalar::one()).mul_scalar(&Scalar::new(BigInt::one(), BigInt::from(2)));
                let coeff = (0..m).fold(Scalar::one(), |acc, i| acc * Scalar::from(BigInt::from(deg - i)))
                    / num_traits::pow(Scalar::from(BigInt::from(2)), m);
                Ok(base.powi((deg - m) as u32).mul_scalar(&coeff).round_outward(bits))
            }
            Potential::Table { values } => {
                let t = x.exact().filter(|_| m == 0).ok_or_else(|| {
                    BoundError::Potential("table potentials have values on T_n only and no derivatives".into())
                })?;
                let space_t = |j: usize| -Scalar::one() + Scalar::new(BigInt::from(2 * j), BigInt::from(n));
                if values.len() != n as usize + 1 {
                    return Err(BoundError::Potential(format!("table has {} values, expected n + 1 = {}", values.len(), n + 1)));
                }
                (0..=n as usize)
                    .find(|&j| &space_t(j) == t)
                    .map(|j| Interval::point(values[j].clone()))
                    .ok_or_else(|| BoundError::Potential(format!("table potential evaluated off the grid at {t}")))
            }
            Potential::Scaled { factor, inner } => Ok(inner.derivative(n, m, x, bits)?.mul_scalar(factor)),
        }
    }

    /// Certified `h(x)`.
    pub fn eval(&self, n: u32, x: &Interval, bits: u32) -> Result<Interval> {
        self.derivative(n, 0, x, bits)
    }

    /// Certified `h(t_j)` for every grid point `t_j < 1` (index `n` is
    /// skipped for the inverse-power family, where `h(1)` is infinite).
    pub fn grid_values(&self, space: &HammingSpace, bits: u32) -> Result<Vec<Option<Interval>>> {
        space
            .grid()
            .iter()
            .map(|t| {
                if t.is_one() && matches!(self.base(), Potential::InversePower { .. }) {
                    Ok(None)
                } else {
                    self.eval(space.n(), &Interval::point(t.clone()), bits).map(Some)
                }
            })
            .collect()
    }

    fn base(&self) -> &Potential {
        match self {
            Potential::Scaled { inner, .. } => inner.base(),
            p => p,
        }
    }

    /// Descriptor string in the command-line grammar.
    pub fn descriptor(&self) -> String {
        match self {
            Potential::InversePower { sigma } => format!("invpow:sigma={}", format_rational(sigma)),
            Potential::Exponential { c } => format!("exp:c={}", format_rational(c)),
            Potential::Monomial { m } => format!("monomial:m={m}"),
            Potential::Table { values } => format!("table:[{} values]", values.len()),
            Potential::Scaled { factor, inner } => format!("{}*{}", format_rational(factor), inner.descriptor()),
        }
    }
}

impl fmt::Display for Potential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.descriptor())
    }
}

/// Errors unless the potential supplies derivatives (needed by the bounds).
pub fn require_derivatives(h: &Potential) -> Result<()> {
    if h.has_derivatives() {
        Ok(())
    } else {
        Err(BoundError::Potential("bound computations need derivatives; table potentials are supported only for code energies".into()))
    }
}

impl Default for Potential {
    fn default() -> Self {
        Potential::Exponential { c: Scalar::one() }
    }
}

/// `Σ_j A_j h(t_j)` weighted by a nonnegative count vector indexed like `T_n`.
pub fn weighted_sum(h: &Potential, space: &HammingSpace, counts: &[Scalar], bits: u32) -> Result<Interval> {
    let mut acc = Interval::zero();
    for (j, c) in counts.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let v = h.eval(space.n(), &Interval::point(space.t(j).clone()), bits)?;
        acc = acc.add(&v.mul_scalar(c)).round_outward(bits);
    }
    Ok(acc)
}
