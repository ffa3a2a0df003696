//! Optimality test functions.
//!
//! For a quadrature rule with nodes `α_0 = ℓ, …, α_k = s` and endpoint
//! weight `ρ_{k+1} = 1/L`,
//! `R_j = ρ_{k+1} + Σ_i ρ_i Q_j(α_i)`.  When the rule comes from the
//! cardinality bound at `s` this is `R_j^{n,ℓ}(s)`; when it comes from
//! solving `L_{2k} = M` it is `S_j^{n,ℓ}(M)`.  A certified negative `R_j`
//! (`j > 2k`) means the bound can be improved by a polynomial of degree `j`.
//!
//! Every value is computed twice: from the definition, and from the power
//! sums `S_u = ρ_{k+1} + Σ ρ_i α_i^u` as `Σ_{u=2k+1}^{j} a_{j,u}(S_u - b_u)`,
//! where `Q_j = Σ_u a_{j,u} t^u`.

use serde::{Deserialize, Serialize};

use crate::algebra::interval::{eval_poly_tight, Interval};
use crate::algebra::scalar::Scalar;
use crate::energy::cardinality_rule;
use crate::error::{BoundError, Result};
use crate::krawtchouk::HammingSpace;
use crate::levenshtein::quadrature::QuadratureRule;
use crate::levenshtein::{LevenshteinInstance, ProblemParams};

/// Outcome of a scan over `j = 2k+1..=j_max`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Verdict {
    /// `R_j < 0` is certified for this `j` (the smallest such).
    Improvable { j: usize },
    /// Every scanned `R_j` is certified `≥ 0`: no polynomial of degree at
    /// most `j_max` improves the bound.
    OptimalUpTo { j_max: usize },
    /// No negative value found, but the sign of some `R_j` is undecided.
    Indeterminate,
}

/// Test function values over a range of `j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TestFunctionReport {
    pub n: u32,
    pub q: u32,
    pub k: usize,
    #[serde(with = "crate::serde_util::rational")]
    pub ell: Scalar,
    /// Set for `R_j(s)`.
    #[serde(with = "crate::serde_util::rational_opt")]
    pub s: Option<Scalar>,
    /// Set for `S_j(M)`.
    #[serde(with = "crate::serde_util::rational_opt")]
    pub m: Option<Scalar>,
    /// `(j, R_j)` for every evaluated `j`, in increasing order.
    pub values: Vec<(usize, Interval)>,
    /// Inclusive range of the scanned `j > 2k`.
    pub j_range: (usize, usize),
    pub first_negative: Option<usize>,
    /// Scanned `j` whose sign is not decided.
    pub indeterminate: Vec<usize>,
    pub verdict: Verdict,
}

/// `R_j` from its definition.
pub fn direct_value(rule: &QuadratureRule, qj: &crate::algebra::poly::ExactPoly, bits: u32) -> Interval {
    rule.nodes
        .iter()
        .zip(&rule.weights)
        .fold(Interval::point(rule.last_weight.clone()), |acc, (x, w)| acc.add(&w.mul(&eval_poly_tight(qj, x, bits))).round_outward(bits))
}

/// Power sums `S_0..S_{u_max}` of a rule.
pub fn power_sums(rule: &QuadratureRule, u_max: usize, bits: u32) -> Vec<Interval> {
    (0..=u_max)
        .map(|u| {
            rule.nodes
                .iter()
                .zip(&rule.weights)
                .fold(Interval::point(rule.last_weight.clone()), |acc, (x, w)| acc.add(&w.mul(&x.powi(u as u32))).round_outward(bits))
        })
        .collect()
}

/// `R_j` from the power sums; terms `u ≤ 2k` vanish because the rule is
/// exact there, and `Σ_u a_{j,u} b_u = 0` for `j ≥ 1`.
pub fn power_sum_value(space: &HammingSpace, qj: &crate::algebra::poly::ExactPoly, j: usize, k: usize, sums: &[Interval], bits: u32) -> Interval {
    let b = space.moments(j);
    let start = if j == 0 { Interval::one() } else { Interval::zero() };
    (2 * k + 1..=j).fold(start, |acc, u| acc.add(&sums[u].add_scalar(&-b[u].clone()).mul_scalar(&qj.coeff(u))).round_outward(bits))
}

/// Both routes for one `j`, intersected.
fn value_both(space: &HammingSpace, rule: &QuadratureRule, k: usize, j: usize, bits: u32) -> Result<Interval> {
    if j > space.n() as usize {
        return Err(BoundError::InvalidParams(format!("Q_j is defined on T_n only for j ≤ n = {}, got j = {j}", space.n())));
    }
    let qj = space.krawtchouk_polys(j).pop().expect("Q_j");
    let direct = direct_value(rule, &qj, bits);
    let sums = power_sums(rule, j, bits);
    let via_sums = power_sum_value(space, &qj, j, k, &sums, bits);
    direct.intersection(&via_sums).ok_or_else(|| BoundError::Precision(format!("R_{j}: definition gives {direct}, power sums give {via_sums}")))
}

/// Retries at doubled precision until the two routes intersect, up to four
/// doublings; persistent disagreement is an internal inconsistency.
fn with_escalation<T>(prec: u32, mut f: impl FnMut(u32) -> Result<T>) -> Result<T> {
    let mut p = prec;
    for _ in 0..4 {
        match f(p) {
            Err(BoundError::Precision(_)) => p *= 2,
            other => return other,
        }
    }
    f(p).map_err(|e| match e {
        BoundError::Precision(m) => BoundError::Inconsistent(m),
        e => e,
    })
}

/// `R_j^{n,ℓ}(s)` for a valid bound instance.
pub fn test_function_r(params: &ProblemParams, j: usize, prec: u32) -> Result<Interval> {
    with_escalation(prec, |p| {
        let inst = LevenshteinInstance::with_precision(params, p)?;
        value_both(&params.space, &inst.rule, params.k, j, p + 32)
    })
}

/// `S_j^{n,ℓ}(M)` with `s` solved from `L_{2k}(n, ℓ, s) = M`.
pub fn test_function_s(space: &HammingSpace, ell: &Scalar, k: usize, m: &Scalar, j: usize, prec: u32) -> Result<Interval> {
    with_escalation(prec, |p| {
        let rule = cardinality_rule(space, ell, m, k, p)?;
        value_both(space, &rule, k, j, p + 32)
    })
}

fn scan_rule(space: &HammingSpace, rule: &QuadratureRule, k: usize, j_max: usize, bits: u32) -> Result<(Vec<(usize, Interval)>, (usize, usize))> {
    let top = j_max.min(space.n() as usize);
    let values = (0..=top).map(|j| Ok((j, value_both(space, rule, k, j, bits)?))).collect::<Result<Vec<_>>>()?;
    Ok((values, (2 * k + 1, top)))
}

fn assemble(
    space: &HammingSpace,
    k: usize,
    ell: &Scalar,
    s: Option<Scalar>,
    m: Option<Scalar>,
    (values, j_range): (Vec<(usize, Interval)>, (usize, usize)),
) -> TestFunctionReport {
    let scanned = || values.iter().filter(|(j, _)| *j > 2 * k);
    let first_negative = scanned().find(|(_, v)| v.is_negative()).map(|(j, _)| *j);
    let indeterminate: Vec<usize> = scanned().filter(|(_, v)| !v.is_negative() && !v.is_nonnegative()).map(|(j, _)| *j).collect();
    let verdict = match (first_negative, indeterminate.is_empty()) {
        (Some(j), _) => Verdict::Improvable { j },
        (None, true) => Verdict::OptimalUpTo { j_max: j_range.1 },
        (None, false) => Verdict::Indeterminate,
    };
    TestFunctionReport { n: space.n(), q: space.q(), k, ell: ell.clone(), s, m, values, j_range, first_negative, indeterminate, verdict }
}

/// Evaluates `R_0..R_{j_max}` (capped at `n`) and classifies `j > 2k`.
pub fn scan_test_functions(params: &ProblemParams, j_max: usize, prec: u32) -> Result<TestFunctionReport> {
    let scan = with_escalation(prec, |p| {
        let inst = LevenshteinInstance::with_precision(params, p)?;
        scan_rule(&params.space, &inst.rule, params.k, j_max, p + 32)
    })?;
    Ok(assemble(&params.space, params.k, &params.ell, Some(params.s.clone()), None, scan))
}

/// As [`scan_test_functions`] for `S_j^{n,ℓ}(M)`.
pub fn scan_test_functions_m(space: &HammingSpace, ell: &Scalar, k: usize, m: &Scalar, j_max: usize, prec: u32) -> Result<TestFunctionReport> {
    let scan = with_escalation(prec, |p| {
        let rule = cardinality_rule(space, ell, m, k, p)?;
        scan_rule(space, &rule, k, j_max, p + 32)
    })?;
    Ok(assemble(space, k, ell, None, Some(m.clone()), scan))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::{int, rat};

    #[test]
    fn small_j_vanish_and_r0_is_one() {
        let params = ProblemParams::from_distances(23, 2, 8, 16, 2).unwrap();
        let report = scan_test_functions(&params, 12, 128).unwrap();
        assert!(report.values[0].1.contains(&int(1)));
        for (j, v) in &report.values[1..=4] {
            assert!(v.contains_zero(), "R_{j} = {v}");
        }
        assert_eq!(report.j_range, (5, 12));
    }

    #[test]
    fn coefficient_identity_holds() {
        // Σ_u a_{j,u} b_u is the zeroth coefficient of Q_j.
        let space = HammingSpace::new(9, 3).unwrap();
        let b = space.moments(9);
        for (j, qj) in space.krawtchouk_polys(9).iter().enumerate() {
            let sum = (0..=j).fold(int(0), |acc, u| acc + qj.coeff(u) * &b[u]);
            assert_eq!(sum, if j == 0 { int(1) } else { int(0) });
        }
    }

    #[test]
    fn s_function_matches_r_function() {
        let params = ProblemParams::from_inner(HammingSpace::new(6, 2).unwrap(), rat(-1, 3), rat(1, 3), 1).unwrap();
        for j in 0..=6 {
            let r = test_function_r(&params, j, 128).unwrap();
            let s = test_function_s(&params.space, &params.ell, 1, &int(16), j, 128).unwrap();
            assert!(r.intersects(&s), "j = {j}: {r} vs {s}");
        }
    }

    #[test]
    fn j_beyond_n_is_rejected() {
        let params = ProblemParams::from_inner(HammingSpace::new(6, 2).unwrap(), rat(-1, 3), rat(1, 3), 1).unwrap();
        assert!(matches!(test_function_r(&params, 7, 128), Err(BoundError::InvalidParams(_))));
        assert_eq!(scan_test_functions(&params, 20, 128).unwrap().j_range, (3, 6));
    }
}
