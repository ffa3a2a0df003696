//! The Levenshtein-type polynomial `f_{2k}`, its quadrature rule and the
//! cardinality bound `L_{2k}(n, ℓ, s) = f_{2k}(1)/f_0 = 1/ρ_{k+1}`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::closed_forms;
use super::params::ProblemParams;
use super::quadrature::{lagrange_weights, QuadratureRule};
use super::system::{EllFlags, EllSystem, KreinReport};
use crate::algebra::interval::{eval_poly_tight, Interval};
use crate::algebra::poly::ExactPoly;
use crate::algebra::roots::{isolate_roots, RootBracket, SturmSequence};
use crate::algebra::scalar::{self, default_precision, Scalar};
use crate::error::{BoundError, Condition, Result};
use crate::krawtchouk::families::kernel_family;
use crate::krawtchouk::{FamilyTag, HammingSpace};

/// Every condition checked for an instance.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundFlags {
    pub ell_condition: bool,
    /// `ℓ < t_{k,1}^{1,0}` (required).
    pub ell_below_first_zero: bool,
    /// `t_{k+1,1}^{1,0} < ℓ` (reported only).
    pub ell_above_next_zero: bool,
    /// `t_{k,k}^{1,0} < s ≤ t_{k,k}^{1,ℓ}`.
    pub s_location: bool,
    /// `Q_k^{1,ℓ}(s)/Q_{k-1}^{1,ℓ}(s) > Q_k^{1,ℓ}(ℓ)/Q_{k-1}^{1,ℓ}(ℓ)`.
    pub s_condition: bool,
    pub constant_positive: bool,
    pub krein: bool,
    /// All Krawtchouk coefficients of `f_{2k}` are nonnegative.
    pub f_nonnegative: bool,
    /// All Krawtchouk coefficients of `f_{2k}` are positive.
    pub f_positive: bool,
    /// `Q_{k-1}^{1,ℓ,s}` has `k-1` simple zeros in `(ℓ, s)`.
    pub interior_nodes: bool,
    /// `ρ_0..ρ_{k+1}` are certified positive.
    pub weights_positive: bool,
    /// The explicit `L_{2k}` formula equals `1/ρ_{k+1}`.
    pub closed_form_agrees: bool,
}

impl BoundFlags {
    /// The conditions under which `L_{2k}` is a proven bound.  The Krein
    /// condition is sufficient for `f_{2k} ∈ F_≥` but not necessary; the
    /// certificate itself is checked exactly instead.
    pub fn valid(&self) -> bool {
        self.ell_condition
            && self.ell_below_first_zero
            && self.s_location
            && self.s_condition
            && self.constant_positive
            && self.f_nonnegative
            && self.interior_nodes
            && self.weights_positive
    }
}

/// Report of a cardinality-bound computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub n: u32,
    pub q: u32,
    pub k: usize,
    #[serde(with = "crate::serde_util::rational")]
    pub ell: Scalar,
    #[serde(with = "crate::serde_util::rational")]
    pub s: Scalar,
    /// `L_{2k} = f_{2k}(1)/f_0`.
    #[serde(with = "crate::serde_util::rational")]
    pub value: Scalar,
    /// `⌊L_{2k}⌋`, the usable integer bound.
    #[serde(with = "crate::serde_util::bigint")]
    pub floor: BigInt,
    /// The explicit partial-sum formula, when its denominators do not vanish.
    #[serde(with = "crate::serde_util::rational_opt")]
    pub closed_form: Option<Scalar>,
    /// `ρ_{k+1}`.
    #[serde(with = "crate::serde_util::rational")]
    pub rho_last: Scalar,
    /// `Σ ρ_i - 1`, certified.
    pub residual: Interval,
    pub nodes: Vec<Interval>,
    pub weights: Vec<Interval>,
    pub flags: BoundFlags,
}

/// A fully built instance `(n, q, ℓ, s, k)`.
#[derive(Clone, Debug)]
pub struct LevenshteinInstance {
    pub params: ProblemParams,
    pub system: EllSystem,
    /// `p = Q_k^{1,ℓ}(s)/Q_{k-1}^{1,ℓ}(s)`.
    pub p_ratio: Scalar,
    /// `W = Q_k^{1,ℓ} - p Q_{k-1}^{1,ℓ}`; vanishes at `s` and at `α_1..α_{k-1}`.
    pub w: ExactPoly,
    /// `Q_{k-1}^{1,ℓ,s}`.
    pub q_ells: ExactPoly,
    /// `f_{2k} = (t-ℓ)(t-s)(Q_{k-1}^{1,ℓ,s})²`.
    pub f: ExactPoly,
    /// Krawtchouk coefficients of `f_{2k}`.
    pub f_coeffs: Vec<Scalar>,
    pub rule: QuadratureRule,
    pub flags: BoundFlags,
    pub prec: u32,
}

fn s_location(sys: &EllSystem, s: &Scalar) -> Result<bool> {
    let k = sys.k;
    let q10 = &sys.one_zero.polys[k];
    if q10.eval(s).is_zero() {
        return Err(BoundError::Degenerate(format!("s = {s} is a zero of Q_{k}^(1,0)")));
    }
    let above_10 = SturmSequence::new(q10).count_above(s) == 0;
    let qe = sys.q_ell(k);
    let below_1ell = qe.eval(s).is_zero() || SturmSequence::new(qe).count_above(s) >= 1;
    Ok(above_10 && below_1ell)
}

/// `Q_{k-1}^{1,ℓ,s}` as `W/(t-s)` normalised to one at `t = 1`.
fn q_ells_from_w(w: &ExactPoly, s: &Scalar) -> Result<ExactPoly> {
    let quotient = w.div_exact(&ExactPoly::linear_factor(s))?;
    let at1 = quotient.at_one();
    if at1.is_zero() {
        return Err(BoundError::Degenerate("Q^(1,ℓ,s) vanishes at t = 1".into()));
    }
    Ok(quotient.scale(&(Scalar::one() / at1)))
}

/// `Q_{k-1}^{1,ℓ,s}` for `(space, ℓ, s, k)` after checking the conditions on
/// `ℓ` and `s` (the Krein condition is not required).
pub fn adjacent_1ells(space: &HammingSpace, ell: &Scalar, s: &Scalar, k: usize) -> Result<ExactPoly> {
    let sys = EllSystem::build(space, ell, k)?;
    match sys.validate() {
        Ok(()) | Err(BoundError::KreinFailed { .. }) => {}
        Err(e) => return Err(e),
    }
    if !s_location(&sys, s)? {
        return Err(BoundError::violated(Condition::SLocation, format!("s = {s} is outside (t_k,k^(1,0), t_k,k^(1,ℓ)]")));
    }
    let p = sys.ratio_at(s).ok_or_else(|| BoundError::Degenerate("Q_{k-1}^(1,ℓ)(s) = 0".into()))?;
    let pl = sys.ratio_at(ell).ok_or_else(|| BoundError::Degenerate("Q_{k-1}^(1,ℓ)(ℓ) = 0".into()))?;
    if p <= pl {
        return Err(BoundError::violated(Condition::SCondition, format!("Q_k/Q_(k-1) at s is {p}, not above its value {pl} at ℓ")));
    }
    q_ells_from_w(&sys.w_poly(&p), s)
}

/// `Q_{k-1}^{1,ℓ,s}` from the kernel of the `(1,ℓ)` family at `y = s`
/// (independent of the `W/(t-s)` route).
pub fn q_ells_by_kernel(sys: &EllSystem, s: &Scalar) -> Result<ExactPoly> {
    let fam = kernel_family(&sys.one_ell, s, sys.k - 1, FamilyTag::OneEllS, sys.one_ell.measure.clone(), 0)?;
    Ok(fam.polys[sys.k - 1].clone())
}

impl LevenshteinInstance {
    /// Validated instance: errors name the first failing condition.
    pub fn new(params: &ProblemParams) -> Result<Self> {
        Self::with_precision(params, default_precision())
    }

    pub fn with_precision(params: &ProblemParams, prec: u32) -> Result<Self> {
        let inst = Self::unchecked(params, prec)?;
        inst.validate()?;
        Ok(inst)
    }

    /// Builds everything that can be built; conditions are recorded in
    /// `flags` but not enforced.
    pub fn unchecked(params: &ProblemParams, prec: u32) -> Result<Self> {
        let (ell, s, k) = (&params.ell, &params.s, params.k);
        if ell >= s {
            return Err(BoundError::InvalidParams(format!("need ℓ < s, got ℓ = {ell}, s = {s}")));
        }
        let system = EllSystem::build(&params.space, ell, k)?;
        let EllFlags { ell_condition, below_first_zero, above_next_zero, constant_positive, norms_positive, leading_positive } =
            system.flags.clone();
        let mut flags = BoundFlags {
            ell_condition,
            ell_below_first_zero: below_first_zero,
            ell_above_next_zero: above_next_zero,
            constant_positive: constant_positive && norms_positive && leading_positive,
            krein: system.krein.passed,
            s_location: s_location(&system, s)?,
            ..BoundFlags::default()
        };
        let p_ratio = system.ratio_at(s).ok_or_else(|| BoundError::Degenerate(format!("Q_{}^(1,ℓ)(s) = 0", k - 1)))?;
        flags.s_condition = system.ratio_at(ell).is_some_and(|pl| p_ratio > pl);
        let w = system.w_poly(&p_ratio);
        let q_ells = q_ells_from_w(&w, s)?;

        let f = &(&ExactPoly::linear_factor(ell) * &ExactPoly::linear_factor(s)) * &(&q_ells * &q_ells);
        let f_coeffs = params.space.to_krawtchouk(&f);
        flags.f_nonnegative = f_coeffs[0].is_positive() && f_coeffs.iter().all(|c| !c.is_negative());
        flags.f_positive = f_coeffs.iter().all(|c| c.is_positive());

        let bits = prec + 32;
        let mut interior = if k > 1 {
            match isolate_roots(&q_ells, ell, s, prec) {
                Ok(r) => r,
                Err(BoundError::Degenerate(_)) => Vec::new(),
                Err(e) => return Err(e),
            }
        } else {
            Vec::new()
        };
        for b in interior.iter_mut() {
            b.snap_to(params.space.grid());
        }
        flags.interior_nodes = interior.len() == k - 1 && SturmSequence::new(&q_ells).count_real() == k - 1;

        let f1 = f.at_one();
        let f0 = f_coeffs[0].clone();
        if f0.is_zero() {
            return Err(BoundError::Degenerate("f_0 = 0".into()));
        }
        let last_weight = &f0 / &f1;
        let (nodes, weights) = if flags.interior_nodes {
            let mut nodes = vec![Interval::point(ell.clone())];
            nodes.extend(interior.iter().map(|b: &RootBracket| b.interval.clone()));
            nodes.push(Interval::point(s.clone()));
            let omega = &(&ExactPoly::linear_factor(ell) * &ExactPoly::new(vec![Scalar::one(), -Scalar::one()])) * &w;
            let moments = params.space.moments(k + 2);
            let mut all = nodes.clone();
            all.push(Interval::one());
            let mut weights = lagrange_weights(&omega, &all, &moments, bits)?;
            let endpoint = weights.pop().expect("endpoint weight");
            if endpoint.exact() != Some(&last_weight) {
                return Err(BoundError::Inconsistent(format!(
                    "ρ_(k+1) = {last_weight} from f_0/f(1) but {endpoint} from the Lagrange basis"
                )));
            }
            (nodes, weights)
        } else {
            (Vec::new(), Vec::new())
        };
        let rule = QuadratureRule { nodes, interior, weights, last_weight };
        flags.weights_positive = flags.interior_nodes && rule.weights_positive();

        let closed = closed_forms::explicit_l2k(&system, s);
        flags.closed_form_agrees = closed.as_ref() == Some(&(&f1 / &f0));

        Ok(LevenshteinInstance { params: params.clone(), system, p_ratio, w, q_ells, f, f_coeffs, rule, flags, prec })
    }

    /// Enforces every condition; the error names the first failure.
    pub fn validate(&self) -> Result<()> {
        let fl = &self.flags;
        let (ell, s, k) = (&self.params.ell, &self.params.s, self.params.k);
        match self.system.validate() {
            Ok(()) | Err(BoundError::KreinFailed { .. }) => {}
            Err(e) => return Err(e),
        }
        if !fl.s_location {
            return Err(BoundError::violated(
                Condition::SLocation,
                format!("s = {s} is outside (t_{k},{k}^(1,0), t_{k},{k}^(1,ℓ)] for ℓ = {ell}"),
            ));
        }
        if !fl.s_condition {
            return Err(BoundError::violated(
                Condition::SCondition,
                format!("Q_{k}^(1,ℓ)/Q_{}^(1,ℓ) at s = {s} does not exceed its value at ℓ = {ell}", k - 1),
            ));
        }
        if !fl.f_nonnegative {
            if !fl.krein {
                return Err(BoundError::KreinFailed { pairs: self.system.krein.failing_pairs() });
            }
            return Err(BoundError::violated(Condition::LpFeasibility, "f_2k has a negative Krawtchouk coefficient"));
        }
        if !fl.interior_nodes {
            return Err(BoundError::violated(Condition::Quadrature, format!("Q_(k-1)^(1,ℓ,s) lacks {} simple zeros in (ℓ, s)", k - 1)));
        }
        if !fl.weights_positive {
            return Err(BoundError::violated(Condition::Quadrature, "a quadrature weight is not positive"));
        }
        Ok(())
    }

    pub fn krein(&self) -> &KreinReport {
        &self.system.krein
    }

    /// `L_{2k} = f_{2k}(1)/f_0`.
    pub fn value(&self) -> Scalar {
        self.f.at_one() / &self.f_coeffs[0]
    }

    /// Full report of the bound.
    pub fn report(&self) -> BoundReport {
        let value = self.value();
        let bits = self.prec + 32;
        let residual =
            if self.rule.weights.is_empty() { Interval::point(self.rule.last_weight.clone() - Scalar::one()) } else { self.rule.mass_residual(bits) };
        BoundReport {
            n: self.params.n(),
            q: self.params.q(),
            k: self.params.k,
            ell: self.params.ell.clone(),
            s: self.params.s.clone(),
            floor: scalar::floor(&value),
            closed_form: closed_forms::explicit_l2k(&self.system, &self.params.s),
            rho_last: self.rule.last_weight.clone(),
            residual,
            nodes: self.rule.nodes.clone(),
            weights: self.rule.weights.clone(),
            flags: self.flags.clone(),
            value,
        }
    }

    /// `f_{2k}(t) ≤ 0` at every grid point of `[ℓ, s]` (exact).
    pub fn nonpositive_on_window(&self) -> bool {
        self.params
            .space
            .grid()
            .iter()
            .filter(|t| *t >= &self.params.ell && *t <= &self.params.s)
            .all(|t| !self.f.eval(t).is_positive())
    }

    /// `f_{2k}` evaluated over every interior node bracket (should enclose 0).
    pub fn f_at_nodes(&self) -> Vec<Interval> {
        let bits = self.prec + 32;
        self.rule.nodes.iter().map(|x| eval_poly_tight(&self.f, x, bits)).collect()
    }
}

/// `f_{2k}^{n,ℓ,s}` for valid parameters.
pub fn levenshtein_polynomial(params: &ProblemParams) -> Result<ExactPoly> {
    Ok(LevenshteinInstance::new(params)?.f)
}

/// Quadrature rule for valid parameters at the given precision.
pub fn quadrature(params: &ProblemParams, prec: u32) -> Result<QuadratureRule> {
    Ok(LevenshteinInstance::with_precision(params, prec)?.rule)
}

/// `L_{2k}(n, ℓ, s)` with every condition enforced.
pub fn cardinality_bound(params: &ProblemParams) -> Result<BoundReport> {
    Ok(LevenshteinInstance::new(params)?.report())
}

/// Result of scanning `k = 1..k_max`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KSelection {
    /// The smallest bound (ties broken towards smaller `k`).
    pub best: BoundReport,
    /// Every `k` that passed all conditions.
    pub valid: Vec<usize>,
    /// `(k, reason)` for every rejected `k`.
    pub rejected: Vec<(usize, String)>,
}

/// Scans `k = 1..=k_max` and keeps the valid `k` with the smallest bound.
pub fn select_k(space: &HammingSpace, ell: &Scalar, s: &Scalar, k_max: usize) -> Result<KSelection> {
    let n = space.n() as usize;
    if k_max < 1 || 2 * k_max > n {
        return Err(BoundError::InvalidParams(format!("k_max = {k_max} must satisfy 1 ≤ k_max ≤ n/2")));
    }
    let base = ProblemParams::from_inner(space.clone(), ell.clone(), s.clone(), 1)?;
    let mut best: Option<BoundReport> = None;
    let mut valid = Vec::new();
    let mut rejected = Vec::new();
    for k in 1..=k_max.min(n.saturating_sub(2)) {
        match cardinality_bound(&base.with_k(k)) {
            Ok(r) => {
                valid.push(k);
                if best.as_ref().is_none_or(|b| r.value < b.value) {
                    best = Some(r);
                }
            }
            Err(e) => rejected.push((k, e.to_string())),
        }
    }
    match best {
        Some(best) => Ok(KSelection { best, valid, rejected }),
        None => Err(BoundError::NoValidK { k_max }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::{int, rat};

    fn bound(n: u32, q: u32, d: u32, dmax: u32, k: usize) -> BoundReport {
        cardinality_bound(&ProblemParams::from_distances(n, q, d, dmax, k).unwrap()).unwrap()
    }

    #[test]
    fn known_values() {
        assert_eq!(bound(6, 2, 2, 4, 1).value, int(16));
        assert_eq!(bound(5, 2, 2, 4, 1).value, int(16));
        assert_eq!(bound(56, 3, 36, 45, 1).value, int(729));
        assert_eq!(bound(23, 2, 8, 16, 2).value, int(2048));
        assert_eq!(bound(22, 2, 8, 16, 2).value, int(1024));
    }

    #[test]
    fn quadrature_and_closed_form_agree() {
        let r = bound(23, 2, 8, 16, 2);
        assert!(r.flags.closed_form_agrees);
        assert!(r.residual.contains(&int(0)));
        assert_eq!(r.value, Scalar::one() / &r.rho_last);
    }

    #[test]
    fn two_routes_to_q_ells_agree() {
        let params = ProblemParams::from_distances(23, 2, 8, 16, 2).unwrap();
        let inst = LevenshteinInstance::new(&params).unwrap();
        assert_eq!(q_ells_by_kernel(&inst.system, &params.s).unwrap(), inst.q_ells);
        assert_eq!(adjacent_1ells(&params.space, &params.ell, &params.s, 2).unwrap(), inst.q_ells);
        assert!(inst.nonpositive_on_window());
        for v in inst.f_at_nodes() {
            assert!(v.contains_zero());
        }
    }

    #[test]
    fn k1_polynomial_is_trivial() {
        let params = ProblemParams::from_distances(6, 2, 2, 4, 1).unwrap();
        let f = levenshtein_polynomial(&params).unwrap();
        assert_eq!(f, &ExactPoly::linear_factor(&params.ell) * &ExactPoly::linear_factor(&params.s));
        assert_eq!(f.at_one(), (int(1) - &params.ell) * (int(1) - &params.s));
    }

    #[test]
    fn select_k_prefers_valid_k() {
        let space = HammingSpace::new(23, 2).unwrap();
        let sel = select_k(&space, &rat(-9, 23), &rat(7, 23), 3).unwrap();
        assert!(sel.valid.contains(&2));
        let space = HammingSpace::new(6, 2).unwrap();
        let sel = select_k(&space, &rat(-2, 3), &int(0), 3).unwrap();
        assert_eq!(sel.best.k, 1);
        assert!(matches!(select_k(&space, &rat(-2, 3), &rat(-1, 3), 3), Err(BoundError::NoValidK { .. })));
    }
}
