//! The chain of orthogonal families `Q_i → Q_i^{1,0} → Q_i^{1,ℓ} → Q_i^{1,ℓ,s}`
//! and the measures they are orthogonal under.
//!
//! Every adjacent family is obtained from its parent by a normalised
//! Christoffel–Darboux kernel `T_i(t, y) / T_i(1, y)`, so all coefficients
//! stay exact rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::space::HammingSpace;
use crate::algebra::measure::{check_positive_definite, DefinitenessCertificate, DiscreteMeasure};
use crate::algebra::poly::ExactPoly;
use crate::algebra::scalar::{binomial, Scalar};
use crate::error::{BoundError, Condition, Result};

/// Which member of the chain a family is.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyTag {
    Plain,
    OneZero,
    OneOne,
    OneEll,
    OneS,
    OneEllS,
}

/// Coefficients of `(t - a_i) P_i = b_i P_{i+1} + c_i P_{i-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Recurrence {
    #[serde(with = "crate::serde_util::rational")]
    pub a: Scalar,
    #[serde(with = "crate::serde_util::rational")]
    pub b: Scalar,
    #[serde(with = "crate::serde_util::rational")]
    pub c: Scalar,
}

/// A finite orthogonal family normalised by `P_i(1) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrthoFamily {
    pub tag: FamilyTag,
    #[serde(with = "crate::serde_util::rational_opt")]
    pub ell: Option<Scalar>,
    #[serde(with = "crate::serde_util::rational_opt")]
    pub s: Option<Scalar>,
    /// `P_0, P_1, …`.
    pub polys: Vec<ExactPoly>,
    /// `r_i = (∫ P_i² dm)^{-1}` for the indices where the measure is
    /// positive definite (may be shorter than `polys`).
    #[serde(with = "crate::serde_util::rational_vec")]
    pub norms: Vec<Scalar>,
    /// `recurrence[i]` holds `(a_i, b_i, c_i)` for `i = 0..` as far as the
    /// norms allow (`c_0 = 0`).
    pub recurrence: Vec<Recurrence>,
    /// Orthogonality measure.
    pub measure: DiscreteMeasure,
}

impl OrthoFamily {
    pub fn poly(&self, i: usize) -> &ExactPoly {
        &self.polys[i]
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    /// Kernel `Σ_{j≤i} r_j P_j(t) P_j(y)` as a polynomial in `t`.
    pub fn kernel(&self, i: usize, y: &Scalar) -> ExactPoly {
        (0..=i).fold(ExactPoly::zero(), |acc, j| {
            let c = &self.norms[j] * self.polys[j].eval(y);
            &acc + &self.polys[j].scale(&c)
        })
    }

    /// Exact check that every pair `P_i, P_j` (`i ≠ j`) is orthogonal.
    pub fn is_orthogonal(&self) -> bool {
        (0..self.polys.len()).all(|i| {
            (0..i).all(|j| self.measure.integrate(&(&self.polys[i] * &self.polys[j])).is_zero())
        })
    }

    /// Exact check of the three-term recurrence as a polynomial identity.
    pub fn recurrence_holds(&self) -> bool {
        self.recurrence.iter().enumerate().all(|(i, rc)| {
            if i + 1 >= self.polys.len() {
                return true;
            }
            let lhs = &ExactPoly::new(vec![-rc.a.clone(), Scalar::one()]) * &self.polys[i];
            let mut rhs = self.polys[i + 1].scale(&rc.b);
            if i > 0 {
                rhs = &rhs + &self.polys[i - 1].scale(&rc.c);
            }
            lhs == rhs
        })
    }

    /// Every member equals one at `t = 1`.
    pub fn is_normalized(&self) -> bool {
        self.polys.iter().all(|p| p.at_one().is_one())
    }
}

/// Norms `(∫ P_i² dm)^{-1}` while they stay positive.
fn integrated_norms(polys: &[ExactPoly], m: &DiscreteMeasure, count: usize) -> Vec<Scalar> {
    let mut out = Vec::new();
    for p in polys.iter().take(count) {
        let v = m.integrate(&(p * p));
        if !v.is_positive() {
            break;
        }
        out.push(Scalar::one() / v);
    }
    out
}

/// Recurrence coefficients derived from leading coefficients and norms:
/// `b_i = η_i/η_{i+1}` (leading coefficients), `c_i = r_{i-1} b_{i-1} / r_i`, `a_i = 1 - b_i - c_i`.
fn derived_recurrence(polys: &[ExactPoly], norms: &[Scalar]) -> Vec<Recurrence> {
    let mut out: Vec<Recurrence> = Vec::new();
    for i in 0..polys.len().saturating_sub(1) {
        if i >= norms.len() {
            break;
        }
        let b = polys[i].leading() / polys[i + 1].leading();
        let c = if i == 0 { Scalar::zero() } else { &norms[i - 1] * &out[i - 1].b / &norms[i] };
        let a = Scalar::one() - &b - &c;
        out.push(Recurrence { a, b, c });
    }
    out
}

/// Normalised kernels `T_i(t, y) / T_i(1, y)` of a parent family, `i < count`.
fn kernel_polys(parent: &OrthoFamily, y: &Scalar, count: usize) -> Result<Vec<ExactPoly>> {
    let mut out = Vec::with_capacity(count);
    let mut acc = ExactPoly::zero();
    for i in 0..count {
        let c = &parent.norms[i] * parent.polys[i].eval(y);
        acc = &acc + &parent.polys[i].scale(&c);
        let at1 = acc.at_one();
        if at1.is_zero() {
            return Err(BoundError::Degenerate(format!("kernel of degree {i} vanishes at t = 1 for y = {y}")));
        }
        out.push(acc.scale(&(Scalar::one() / at1)));
    }
    Ok(out)
}

fn family(tag: FamilyTag, ell: Option<Scalar>, s: Option<Scalar>, polys: Vec<ExactPoly>, norms: Vec<Scalar>, measure: DiscreteMeasure) -> OrthoFamily {
    let recurrence = derived_recurrence(&polys, &norms);
    OrthoFamily { tag, ell, s, polys, norms, recurrence, measure }
}

/// Normalising constants of the adjacent measures.
pub mod constants {
    use super::*;

    fn big(v: u32) -> BigInt {
        BigInt::from(v)
    }

    /// `c^{1,0} = q / (2(q-1))`.
    pub fn c10(space: &HammingSpace) -> Scalar {
        let q = big(space.q());
        BigRational::new(q.clone(), 2 * (q - 1))
    }

    /// `c^{1,1} = n q² / (4(n-1)(q-1))`.
    pub fn c11(space: &HammingSpace) -> Scalar {
        let (n, q) = (big(space.n()), big(space.q()));
        BigRational::new(&n * &q * &q, 4 * (&n - 1) * (&q - 1))
    }

    fn checked(num: Scalar, den: Scalar, what: &str) -> Result<Scalar> {
        if den.is_zero() {
            return Err(BoundError::violated(Condition::LsRange, format!("normalising constant {what} has a zero denominator")));
        }
        let c = num / den;
        if !c.is_positive() {
            return Err(BoundError::violated(Condition::LsRange, format!("normalising constant {what} = {c} is not positive")));
        }
        Ok(c)
    }

    /// `c^{1,ℓ} = n q² / (2(q-1)(2(n-1) - nq(1+ℓ)))`, checked positive.
    pub fn c1ell(space: &HammingSpace, ell: &Scalar) -> Result<Scalar> {
        let (n, q) = (Scalar::from(big(space.n())), Scalar::from(big(space.q())));
        let num = &n * &q * &q;
        let den = Scalar::from(BigInt::from(2)) * (&q - Scalar::one())
            * (Scalar::from(BigInt::from(2)) * (&n - Scalar::one()) - &n * &q * (Scalar::one() + ell));
        checked(num, den, "c^{1,ℓ}")
    }

    /// `c^{1,s} = n q² / (2(q-1)(nq(1+s) - 2(n-1)))`, checked positive.
    pub fn c1s(space: &HammingSpace, s: &Scalar) -> Result<Scalar> {
        let (n, q) = (Scalar::from(big(space.n())), Scalar::from(big(space.q())));
        let num = &n * &q * &q;
        let den = Scalar::from(BigInt::from(2)) * (&q - Scalar::one())
            * (&n * &q * (Scalar::one() + s) - Scalar::from(BigInt::from(2)) * (&n - Scalar::one()));
        checked(num, den, "c^{1,s}")
    }

    /// `c^{1,ℓ,s} = n² q³ / (2(q-1)(4(n-1)(nq d_1 - n - q + 2) - n² q² d_2))`
    /// with `d_1 = (2+ℓ+s)/2`, `d_2 = (1+ℓ)(1+s)`, checked positive.
    pub fn c1ells(space: &HammingSpace, ell: &Scalar, s: &Scalar) -> Result<Scalar> {
        let (n, q) = (Scalar::from(big(space.n())), Scalar::from(big(space.q())));
        let one = Scalar::one();
        let two = Scalar::from(BigInt::from(2));
        let d1 = (&two + ell + s) / &two;
        let d2 = (&one + ell) * (&one + s);
        let num = &n * &n * &q * &q * &q;
        let inner = Scalar::from(BigInt::from(4)) * (&n - &one) * (&n * &q * &d1 - &n - &q + &two) - &n * &n * &q * &q * &d2;
        let den = &two * (&q - &one) * inner;
        checked(num, den, "c^{1,ℓ,s}")
    }
}

/// Which signed measure to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignedKind {
    /// `c^{1,ℓ}(t-ℓ)(1-t) dμ_n`.
    Ell,
    /// `c^{1,s}(s-t)(1-t) dμ_n`.
    S,
    /// `c^{1,ℓ,s}(t-ℓ)(s-t)(1-t) dμ_n`.
    EllS,
}

/// The signed measures `μ_{n,ℓ}`, `μ_{n,s}`, `μ_{n,ℓ,s}`.
pub fn signed_measure(space: &HammingSpace, kind: SignedKind, ell: &Scalar, s: &Scalar) -> Result<DiscreteMeasure> {
    let one_minus_t = ExactPoly::new(vec![Scalar::one(), -Scalar::one()]);
    let t_minus_ell = ExactPoly::linear_factor(ell);
    let s_minus_t = ExactPoly::new(vec![s.clone(), -Scalar::one()]);
    let base = space.base_measure();
    Ok(match kind {
        SignedKind::Ell => base.with_density(&(&t_minus_ell * &one_minus_t), constants::c1ell(space, ell)?),
        SignedKind::S => base.with_density(&(&s_minus_t * &one_minus_t), constants::c1s(space, s)?),
        SignedKind::EllS => base.with_density(
            &(&(&t_minus_ell * &s_minus_t) * &one_minus_t),
            constants::c1ells(space, ell, s)?,
        ),
    })
}

/// Positive-definiteness certificate for a measure up to `degree`.
pub fn positive_definite(m: &DiscreteMeasure, degree: usize) -> DefinitenessCertificate {
    check_positive_definite(m, degree)
}

/// Normalised Krawtchouk polynomials `Q_0..Q_max_deg` with closed-form
/// norms and recurrence coefficients.
pub fn krawtchouk_family(space: &HammingSpace, max_deg: usize) -> Result<OrthoFamily> {
    if max_deg > space.n() as usize {
        return Err(BoundError::InvalidParams(format!("degree {max_deg} exceeds n = {}", space.n())));
    }
    let polys = space.krawtchouk_polys(max_deg);
    let norms = (0..=max_deg).map(|i| Scalar::from(space.r(i).clone())).collect();
    let recurrence = (0..max_deg)
        .map(|i| {
            let (a, b, c) = space.recurrence(i);
            Recurrence { a, b, c }
        })
        .collect();
    Ok(OrthoFamily { tag: FamilyTag::Plain, ell: None, s: None, polys, norms, recurrence, measure: space.base_measure() })
}

/// Closed-form norm `r_j^{1,0} = S_j² / (C(n-1,j)(q-1)^j)`.
pub fn r10_closed_form(space: &HammingSpace, j: usize) -> Scalar {
    let s = space.partial_sum(j);
    let den = binomial(space.n() as u64 - 1, j as u64) * num_traits::pow(BigInt::from(space.q() - 1), j);
    BigRational::new(&s * &s, den)
}

/// Closed-form norm `r_j^{1,1} = (Σ_{u≤j} C(n-1,u)(q-1)^u)² / (C(n-2,j)(q-1)^j)`.
pub fn r11_closed_form(space: &HammingSpace, j: usize) -> Scalar {
    let qm1 = BigInt::from(space.q() - 1);
    let n = space.n() as u64;
    let s: BigInt = (0..=j as u64).map(|u| binomial(n - 1, u) * num_traits::pow(qm1.clone(), u as usize)).sum();
    let den = binomial(n - 2, j as u64) * num_traits::pow(qm1, j);
    BigRational::new(&s * &s, den)
}

/// The `(1,0)` family `Q_0^{1,0}..Q_max^{1,0}` (`max ≤ n-1`), orthogonal
/// under `c^{1,0}(1-t) dμ_n`.
pub fn one_zero_family(space: &HammingSpace, max_deg: usize) -> Result<OrthoFamily> {
    let max_deg = max_deg.min(space.n() as usize - 1);
    let plain = krawtchouk_family(space, max_deg)?;
    let polys = kernel_polys(&plain, &Scalar::one(), max_deg + 1)?;
    let measure = space.base_measure().with_density(&ExactPoly::new(vec![Scalar::one(), -Scalar::one()]), constants::c10(space));
    let norms = integrated_norms(&polys, &measure, polys.len());
    Ok(family(FamilyTag::OneZero, None, None, polys, norms, measure))
}

/// The `(1,1)` family `Q_0^{1,1}..Q_max^{1,1}` (`max ≤ n-2`), orthogonal
/// under `c^{1,1}(1-t)(1+t) dμ_n`.
pub fn one_one_family(space: &HammingSpace, max_deg: usize) -> Result<OrthoFamily> {
    if space.n() < 3 {
        return Err(BoundError::InvalidParams("the (1,1) family needs n ≥ 3".into()));
    }
    let max_deg = max_deg.min(space.n() as usize - 2);
    let parent = one_zero_family(space, max_deg)?;
    let polys = kernel_polys(&parent, &-Scalar::one(), max_deg + 1)?;
    let measure = space
        .base_measure()
        .with_density(&ExactPoly::from_ints(&[1, 0, -1]), constants::c11(space));
    let norms = integrated_norms(&polys, &measure, polys.len());
    Ok(family(FamilyTag::OneOne, None, None, polys, norms, measure))
}

/// Tag selector for [`adjacent_family`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AdjacentTag {
    OneZero,
    OneOne,
}

/// The full `(1,0)` or `(1,1)` family of the space.
pub fn adjacent_family(space: &HammingSpace, tag: AdjacentTag) -> Result<OrthoFamily> {
    match tag {
        AdjacentTag::OneZero => one_zero_family(space, space.n() as usize - 1),
        AdjacentTag::OneOne => one_one_family(space, space.n() as usize - 2),
    }
}

/// The `(1,y)` family `T_i^{1,0}(t,y)/T_i^{1,0}(1,y)`, `i = 0..=max_deg`, built
/// from a `(1,0)` family without any validity checks.  `measure` is the
/// orthogonality measure to attach and `norm_count` how many norms to
/// integrate.
pub fn kernel_family(
    parent: &OrthoFamily,
    y: &Scalar,
    max_deg: usize,
    tag: FamilyTag,
    measure: DiscreteMeasure,
    norm_count: usize,
) -> Result<OrthoFamily> {
    if parent.norms.len() < max_deg + 1 {
        return Err(BoundError::InvalidParams("parent family too short for the requested kernel".into()));
    }
    let polys = kernel_polys(parent, y, max_deg + 1)?;
    let norms = integrated_norms(&polys, &measure, norm_count);
    let (ell, s) = match tag {
        FamilyTag::OneS => (None, Some(y.clone())),
        _ => (Some(y.clone()), None),
    };
    Ok(family(tag, ell, s, polys, norms, measure))
}

/// Gram–Schmidt orthogonalisation of `1, t, …, t^max_deg` under `m`,
/// normalised by `P(1) = 1`.  Independent cross-check for the kernel route;
/// requires positive definiteness up to `max_deg - 1`.
pub fn gram_schmidt(m: &DiscreteMeasure, max_deg: usize) -> Result<Vec<ExactPoly>> {
    let mut out: Vec<ExactPoly> = Vec::new();
    let mut sq: Vec<Scalar> = Vec::new();
    for d in 0..=max_deg {
        let mut p = ExactPoly::monomial(Scalar::one(), d);
        for (j, b) in out.iter().enumerate() {
            let proj = m.integrate(&(&p * b)) / &sq[j];
            p = &p - &b.scale(&proj);
        }
        let at1 = p.at_one();
        if at1.is_zero() {
            return Err(BoundError::Degenerate(format!("orthogonal polynomial of degree {d} vanishes at 1")));
        }
        let p = p.scale(&(Scalar::one() / at1));
        if d < max_deg {
            let v = m.integrate(&(&p * &p));
            if !v.is_positive() {
                return Err(BoundError::violated(Condition::LsRange, format!("measure not positive definite at degree {d}")));
            }
            sq.push(v);
        }
        out.push(p);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::{int, rat};

    #[test]
    fn plain_family_invariants() {
        for (n, q) in [(4, 2), (6, 3), (5, 4)] {
            let s = HammingSpace::new(n, q).unwrap();
            let f = krawtchouk_family(&s, n as usize).unwrap();
            assert!(f.is_orthogonal());
            assert!(f.recurrence_holds());
            assert!(f.is_normalized());
            for i in 0..=n as usize {
                let v = s.integrate(&(&f.polys[i] * &f.polys[i]));
                assert_eq!(v * &f.norms[i], int(1));
            }
        }
        assert!(krawtchouk_family(&HammingSpace::new(4, 2).unwrap(), 5).is_err());
    }

    #[test]
    fn one_zero_family_matches_closed_forms() {
        for (n, q) in [(6, 2), (7, 3), (5, 4)] {
            let s = HammingSpace::new(n, q).unwrap();
            let f = adjacent_family(&s, AdjacentTag::OneZero).unwrap();
            assert_eq!(f.len(), n as usize);
            assert!(f.is_orthogonal());
            assert!(f.is_normalized());
            assert!(f.recurrence_holds());
            assert_eq!(f.measure.total_mass(), int(1));
            assert_eq!(f.norms[0], int(1));
            for j in 0..f.norms.len() {
                assert_eq!(f.norms[j], r10_closed_form(&s, j), "n={n} q={q} j={j}");
            }
        }
    }

    #[test]
    fn one_one_family_matches_closed_forms() {
        for (n, q) in [(6, 2), (7, 3)] {
            let s = HammingSpace::new(n, q).unwrap();
            let f = adjacent_family(&s, AdjacentTag::OneOne).unwrap();
            assert!(f.is_orthogonal());
            assert!(f.is_normalized());
            assert_eq!(f.measure.total_mass(), int(1));
            for j in 0..f.norms.len() {
                assert_eq!(f.norms[j], r11_closed_form(&s, j));
            }
        }
    }

    #[test]
    fn signed_measure_constants_give_unit_mass() {
        let s = HammingSpace::new(10, 2).unwrap();
        let ell = rat(-4, 5);
        let sv = rat(1, 5);
        for kind in [SignedKind::Ell, SignedKind::S, SignedKind::EllS] {
            let m = signed_measure(&s, kind, &ell, &sv).unwrap();
            assert_eq!(m.total_mass(), int(1), "{kind:?}");
            assert!(m.support().last().unwrap().1.is_zero());
        }
        // ℓ = -1 reproduces the (1,1) constant.
        assert_eq!(constants::c1ell(&s, &int(-1)).unwrap(), constants::c11(&s));
    }

    #[test]
    fn gram_schmidt_agrees_with_kernels() {
        let s = HammingSpace::new(8, 3).unwrap();
        let f = one_zero_family(&s, 4).unwrap();
        let gs = gram_schmidt(&f.measure, 4).unwrap();
        assert_eq!(gs, f.polys);
    }

    #[test]
    fn negative_mass_measure_fails_definiteness() {
        let m = DiscreteMeasure::new(vec![(int(0), int(-2)), (int(1), int(1))], int(1)).unwrap();
        assert!(!positive_definite(&m, 0).positive_definite);
        let s = HammingSpace::new(6, 2).unwrap();
        assert!(positive_definite(&s.base_measure(), 6).positive_definite);
    }
}
