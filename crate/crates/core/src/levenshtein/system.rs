//! The `ℓ`-dependent part of a bound instance: the `(1,0)` and `(1,ℓ)`
//! families, the conditions on `ℓ`, and the strengthened Krein condition.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::poly::ExactPoly;
use crate::algebra::roots::SturmSequence;
use crate::algebra::scalar::Scalar;
use crate::error::{BoundError, Condition, Result};
use crate::krawtchouk::families::{constants, kernel_family, one_zero_family, signed_measure, SignedKind};
use crate::krawtchouk::{FamilyTag, HammingSpace, OrthoFamily};

/// Outcome of the `ℓ` conditions.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EllFlags {
    /// `Q_{k+1}^{1,0}(ℓ) / Q_k^{1,0}(ℓ) < 1`.
    pub ell_condition: bool,
    /// `ℓ < t_{k,1}^{1,0}` (smallest zero of `Q_k^{1,0}`).
    pub below_first_zero: bool,
    /// `t_{k+1,1}^{1,0} < ℓ` (informational; not required for validity).
    pub above_next_zero: bool,
    /// `c^{1,ℓ} > 0`.
    pub constant_positive: bool,
    /// `r_i^{1,ℓ} > 0` for `i ≤ k-1`.
    pub norms_positive: bool,
    /// Leading coefficients `η_i^{1,ℓ} > 0` for `i ≤ k`.
    pub leading_positive: bool,
}

impl EllFlags {
    /// Both halves of the location condition.
    pub fn ell_location(&self) -> bool {
        self.below_first_zero && self.above_next_zero
    }
}

/// One failing pair of the strengthened Krein condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KreinFailure {
    pub i: usize,
    pub j: usize,
    /// Index of the first non-positive Krawtchouk coefficient.
    pub index: usize,
    #[serde(with = "crate::serde_util::rational")]
    pub coefficient: Scalar,
}

/// Result of the `(k, ℓ)`-strengthened Krein check.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct KreinReport {
    pub passed: bool,
    pub failures: Vec<KreinFailure>,
}

impl KreinReport {
    pub fn failing_pairs(&self) -> Vec<(usize, usize)> {
        self.failures.iter().map(|f| (f.i, f.j)).collect()
    }
}

/// Families and conditions that depend on `(n, q, ℓ, k)` only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EllSystem {
    pub space: HammingSpace,
    pub ell: Scalar,
    pub k: usize,
    /// `Q_0^{1,0}..Q_{k+1}^{1,0}`.
    pub one_zero: OrthoFamily,
    /// `Q_0^{1,ℓ}..Q_k^{1,ℓ}`.
    pub one_ell: OrthoFamily,
    pub flags: EllFlags,
    pub krein: KreinReport,
}

/// Krawtchouk coefficients of `(t-ℓ) Q_i^{1,ℓ} Q_j^{1,ℓ}` must all be positive
/// for every pair `0 ≤ i ≤ j ≤ k` except `i = j = k`.
pub fn krein_pairs(space: &HammingSpace, ell: &Scalar, one_ell: &OrthoFamily, k: usize) -> KreinReport {
    let lin = ExactPoly::linear_factor(ell);
    let mut failures = Vec::new();
    for i in 0..=k {
        for j in i..=k {
            if i == k && j == k {
                continue;
            }
            let p = &(&lin * &one_ell.polys[i]) * &one_ell.polys[j];
            let coeffs = space.to_krawtchouk(&p);
            if let Some((index, c)) = coeffs.iter().enumerate().find(|(_, c)| !c.is_positive()) {
                failures.push(KreinFailure { i, j, index, coefficient: c.clone() });
            }
        }
    }
    KreinReport { passed: failures.is_empty(), failures }
}

impl EllSystem {
    /// Builds every `ℓ`-dependent object without enforcing the conditions.
    /// Errors only when the construction itself is impossible.
    pub fn build(space: &HammingSpace, ell: &Scalar, k: usize) -> Result<Self> {
        let n = space.n() as usize;
        if k < 1 || k + 2 > n {
            return Err(BoundError::InvalidParams(format!("k = {k} must satisfy 1 ≤ k ≤ n - 2 = {}", n.saturating_sub(2))));
        }
        if ell < &-Scalar::one() || ell >= &Scalar::one() {
            return Err(BoundError::InvalidParams(format!("ℓ = {ell} must lie in [-1, 1)")));
        }
        let one_zero = one_zero_family(space, k + 1)?;
        let qk = &one_zero.polys[k];
        let qk1 = &one_zero.polys[k + 1];
        let qk_ell = qk.eval(ell);

        let mut flags = EllFlags::default();
        let sturm_k = SturmSequence::new(qk);
        flags.below_first_zero = !qk_ell.is_zero() && sturm_k.count_at_most(ell) == 0;
        let qk1_ell = qk1.eval(ell);
        let below_next = SturmSequence::new(qk1).count_at_most(ell) - usize::from(qk1_ell.is_zero());
        flags.above_next_zero = below_next >= 1;
        flags.ell_condition = !qk_ell.is_zero() && (&qk1_ell / &qk_ell) < Scalar::one();

        let constant = constants::c1ell(space, ell);
        flags.constant_positive = constant.is_ok();
        let measure = match constant {
            Ok(_) => signed_measure(space, SignedKind::Ell, ell, ell)?,
            Err(_) => space
                .base_measure()
                .with_density(&(&ExactPoly::linear_factor(ell) * &ExactPoly::new(vec![Scalar::one(), -Scalar::one()])), Scalar::one()),
        };
        let one_ell = kernel_family(&one_zero, ell, k, FamilyTag::OneEll, measure, k)?;
        flags.norms_positive = flags.constant_positive && one_ell.norms.len() == k;
        flags.leading_positive = one_ell.polys.iter().all(|p| p.leading().is_positive());
        let krein = krein_pairs(space, ell, &one_ell, k);
        Ok(EllSystem { space: space.clone(), ell: ell.clone(), k, one_zero, one_ell, flags, krein })
    }

    /// Enforces the `ℓ` conditions and the Krein condition.
    pub fn validate(&self) -> Result<()> {
        let qk = &self.one_zero.polys[self.k];
        if qk.eval(&self.ell).is_zero() {
            return Err(BoundError::Degenerate(format!("ℓ = {} is a zero of Q_{}^(1,0)", self.ell, self.k)));
        }
        if !self.flags.constant_positive {
            return Err(BoundError::violated(Condition::LsRange, format!("c^(1,ℓ) is not positive for ℓ = {}", self.ell)));
        }
        if !self.flags.below_first_zero {
            return Err(BoundError::violated(
                Condition::EllLocation,
                format!("ℓ = {} is not below the smallest zero of Q_{}^(1,0)", self.ell, self.k),
            ));
        }
        if !self.flags.ell_condition {
            return Err(BoundError::violated(
                Condition::EllCondition,
                format!("Q_{}^(1,0)(ℓ)/Q_{}^(1,0)(ℓ) ≥ 1 at ℓ = {}", self.k + 1, self.k, self.ell),
            ));
        }
        if !self.flags.norms_positive || !self.flags.leading_positive {
            return Err(BoundError::violated(Condition::LsRange, "the (1,ℓ) family is not positive definite up to degree k-1"));
        }
        if !self.krein.passed {
            return Err(BoundError::KreinFailed { pairs: self.krein.failing_pairs() });
        }
        Ok(())
    }

    /// `Q_i^{1,ℓ}`.
    pub fn q_ell(&self, i: usize) -> &ExactPoly {
        &self.one_ell.polys[i]
    }

    /// `I_j = ∫ (t-ℓ) Q_j^{1,ℓ}(t) dμ_n`.
    pub fn moment_i(&self, j: usize) -> Scalar {
        self.space.integrate(&(&ExactPoly::linear_factor(&self.ell) * self.q_ell(j)))
    }

    /// `Q_k^{1,ℓ}(x) / Q_{k-1}^{1,ℓ}(x)`, if the denominator is non-zero.
    pub fn ratio_at(&self, x: &Scalar) -> Option<Scalar> {
        let den = self.q_ell(self.k - 1).eval(x);
        (!den.is_zero()).then(|| self.q_ell(self.k).eval(x) / den)
    }

    /// `W_p = Q_k^{1,ℓ} - p Q_{k-1}^{1,ℓ}`, whose zeros are the interior
    /// nodes together with `s` when `p = Q_k^{1,ℓ}(s)/Q_{k-1}^{1,ℓ}(s)`.
    pub fn w_poly(&self, p: &Scalar) -> ExactPoly {
        self.q_ell(self.k) - &self.q_ell(self.k - 1).scale(p)
    }

    /// Christoffel–Darboux form of `Q_i^{1,ℓ}`:
    /// `(1-ℓ)(Q_{i+1}^{1,0} - q_i Q_i^{1,0}) / ((1-q_i)(t-ℓ))` with
    /// `q_i = Q_{i+1}^{1,0}(ℓ)/Q_i^{1,0}(ℓ)`.  Independent cross-check.
    pub fn q_ell_christoffel_darboux(&self, i: usize) -> Result<ExactPoly> {
        let a = &self.one_zero.polys[i + 1];
        let b = &self.one_zero.polys[i];
        let bl = b.eval(&self.ell);
        if bl.is_zero() {
            return Err(BoundError::Degenerate("Q_i^(1,0)(ℓ) = 0".into()));
        }
        let qi = a.eval(&self.ell) / bl;
        let num = a - &b.scale(&qi);
        let quotient = num.div_exact(&ExactPoly::linear_factor(&self.ell))?;
        Ok(quotient.scale(&((Scalar::one() - &self.ell) / (Scalar::one() - qi))))
    }
}

/// Builds `Q_0^{1,ℓ}..Q_k^{1,ℓ}` after checking the `ℓ` conditions (but not
/// the Krein condition).
pub fn adjacent_1ell(space: &HammingSpace, ell: &Scalar, k: usize) -> Result<OrthoFamily> {
    let sys = EllSystem::build(space, ell, k)?;
    match sys.validate() {
        Ok(()) | Err(BoundError::KreinFailed { .. }) => Ok(sys.one_ell),
        Err(e) => Err(e),
    }
}

/// The strengthened Krein check on its own.
pub fn krein_check(space: &HammingSpace, ell: &Scalar, k: usize) -> Result<KreinReport> {
    Ok(EllSystem::build(space, ell, k)?.krein)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::{int, rat};
    use crate::krawtchouk::families::one_one_family;

    #[test]
    fn family_is_orthogonal_and_normalised() {
        let space = HammingSpace::new(10, 2).unwrap();
        let sys = EllSystem::build(&space, &rat(-4, 5), 2).unwrap();
        assert!(sys.one_ell.is_orthogonal());
        assert!(sys.one_ell.is_normalized());
        assert!(sys.one_ell.recurrence_holds());
        for i in 0..=2 {
            assert_eq!(sys.q_ell_christoffel_darboux(i).unwrap(), sys.one_ell.polys[i]);
        }
    }

    #[test]
    fn ell_minus_one_reproduces_one_one_family() {
        let space = HammingSpace::new(9, 3).unwrap();
        let sys = EllSystem::build(&space, &int(-1), 3).unwrap();
        let fam = one_one_family(&space, 3).unwrap();
        assert_eq!(sys.one_ell.polys, fam.polys);
        assert!(sys.krein.passed);
    }

    #[test]
    fn pairs_with_zero_index_pass() {
        let space = HammingSpace::new(12, 2).unwrap();
        let ell = rat(-5, 6);
        let sys = EllSystem::build(&space, &ell, 3).unwrap();
        assert!(sys.validate().is_ok() || matches!(sys.validate(), Err(BoundError::KreinFailed { .. })));
        for f in &sys.krein.failures {
            assert!(f.i > 0 || f.j == 3, "pair ({}, {}) fails", f.i, f.j);
        }
    }

    #[test]
    fn corrected_first_polynomial_closed_form() {
        // Q_1^{1,ℓ}(t) ∝ nq(nqℓ + nq - 2n + 2) t + B', normalised at t = 1.
        for (n, q, ell) in [(6u32, 2u32, rat(-1, 3)), (10, 3, rat(-4, 5)), (9, 2, rat(-7, 9)), (8, 4, rat(-3, 4))] {
            let space = HammingSpace::new(n, q).unwrap();
            let sys = EllSystem::build(&space, &ell, 1).unwrap();
            let (nn, qq) = (int(n as i64), int(q as i64));
            let b = &nn * &nn * (&qq - int(2)) * (&qq * &ell + &qq - int(2)) + int(2) * &nn * (&qq * &ell + int(4) * &qq - int(6))
                - int(4) * (&qq - int(2));
            let slope = &nn * &qq * (&nn * &qq * &ell + &nn * &qq - int(2) * &nn + int(2));
            let p = ExactPoly::new(vec![b, slope]);
            let expect = p.scale(&(int(1) / p.at_one()));
            assert_eq!(sys.one_ell.polys[1], expect, "n={n} q={q}");
        }
    }

    #[test]
    fn out_of_range_ell_fails_krein_somewhere() {
        // ℓ close to 1 violates the location condition and breaks positivity.
        let space = HammingSpace::new(8, 2).unwrap();
        let sys = EllSystem::build(&space, &rat(1, 2), 2).unwrap();
        assert!(!sys.flags.below_first_zero);
        assert!(!sys.krein.passed);
    }
}
