//! Constructive improvement of the cardinality bound from a negative test
//! function.
//!
//! With `Q_j = a f_{2k} + b` (`deg b < 2k`), the polynomial
//! `v = (a + c) f_{2k}` satisfies `v(1) - L v_0 = L R_j`, independently of
//! `c`.  Choosing `c ≥ -min_{[ℓ,s]} a` keeps `v ≤ 0` on `[ℓ, s]` and
//! `c ≥ b_i/f_i` makes every coefficient `v_i = [i=j] - b_i + c f_i`
//! nonnegative, so `R_j < 0` yields `v(1)/v_0 < L`.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::testfn::test_function_r;
use crate::algebra::interval::{eval_poly_tight, Interval};
use crate::algebra::poly::ExactPoly;
use crate::algebra::roots::isolate_roots;
use crate::algebra::scalar::Scalar;
use crate::error::{BoundError, Condition, Result};
use crate::levenshtein::{LevenshteinInstance, ProblemParams};

/// The improving polynomial and its certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImprovingPolynomial {
    pub j: usize,
    /// The certified negative `R_j`.
    pub r_j: Interval,
    /// Quotient `a` and remainder `b` of `Q_j` by `f_{2k}`.
    pub a: ExactPoly,
    pub b: ExactPoly,
    /// Certified lower bound on `min_{[ℓ,s]} a`.
    #[serde(with = "crate::serde_util::rational")]
    pub a_min: Scalar,
    #[serde(with = "crate::serde_util::rational")]
    pub c: Scalar,
    /// `v = (a + c) f_{2k}`.
    pub v: ExactPoly,
    #[serde(with = "crate::serde_util::rational_vec")]
    pub v_coeffs: Vec<Scalar>,
    /// `v(1)/v_0`.
    #[serde(with = "crate::serde_util::rational")]
    pub value: Scalar,
    /// `L_{2k}(n, ℓ, s)`.
    #[serde(with = "crate::serde_util::rational")]
    pub bound: Scalar,
}

/// Certified lower bound for the minimum of `a` over `[lo, hi]`, from the
/// endpoints and the isolated critical points.
pub fn certified_min(a: &ExactPoly, lo: &Scalar, hi: &Scalar, prec: u32) -> Result<Scalar> {
    let mut best = a.eval(lo).min(a.eval(hi));
    let da = a.derivative();
    if !da.is_zero() && da.degree().unwrap_or(0) > 0 {
        let crit = match isolate_roots(&da, lo, hi, prec) {
            Ok(r) => r,
            // a' vanishing at an endpoint: endpoints are already included.
            Err(BoundError::Degenerate(_)) => isolate_roots(&da.squarefree_part(), lo, hi, prec).unwrap_or_default(),
            Err(e) => return Err(e),
        };
        for r in crit {
            let v = eval_poly_tight(a, &r.interval, prec + 32);
            if v.lo < best {
                best = v.lo;
            }
        }
    }
    Ok(best)
}

/// Builds and verifies `v` for a `j` with `R_j` certified negative.
pub fn improving_polynomial(params: &ProblemParams, j: usize, prec: u32) -> Result<ImprovingPolynomial> {
    let r_j = test_function_r(params, j, prec)?;
    if !r_j.is_negative() {
        return Err(BoundError::Precondition(format!("R_{j} = {r_j} is not certified negative")));
    }
    let inst = LevenshteinInstance::with_precision(params, prec)?;
    let space = &params.space;
    let (ell, s) = (&params.ell, &params.s);
    let qj = space.krawtchouk_polys(j).pop().expect("Q_j");
    let (a, b) = qj.divrem(&inst.f)?;
    let a_min = certified_min(&a, ell, s, prec)?;

    let f = &inst.f_coeffs;
    let b_coeffs = space.to_krawtchouk(&b);
    let mut c = (-a_min.clone()).max(Scalar::zero());
    for (i, bi) in b_coeffs.iter().enumerate().skip(1) {
        let fi = f.get(i).cloned().unwrap_or_else(Scalar::zero);
        if fi.is_positive() {
            c = c.max(bi / &fi);
        } else if bi.is_positive() {
            return Err(BoundError::violated(Condition::LpFeasibility, format!("b_{i} > 0 while f_{i} = 0: no c makes v_{i} ≥ 0")));
        }
    }

    let v = &(&a + &ExactPoly::constant(c.clone())) * &inst.f;
    let v_coeffs = space.to_krawtchouk(&v);
    let failed = |why: String| BoundError::violated(Condition::LpFeasibility, format!("improving polynomial construction failed: {why}"));
    if !v_coeffs[0].is_positive() {
        return Err(failed(format!("v_0 = {} is not positive", v_coeffs[0])));
    }
    if let Some(i) = v_coeffs.iter().skip(1).position(Signed::is_negative) {
        return Err(failed(format!("v_{} < 0", i + 1)));
    }
    if let Some(t) = space.grid().iter().find(|t| *t >= ell && *t <= s && v.eval(t).is_positive()) {
        return Err(failed(format!("v({t}) > 0 inside [ℓ, s]")));
    }
    let value = v.at_one() / &v_coeffs[0];
    let bound = inst.value();
    if value >= bound {
        return Err(failed(format!("v(1)/v_0 = {value} does not improve {bound}")));
    }
    Ok(ImprovingPolynomial { j, r_j, a, b, a_min, c, v, v_coeffs, value, bound })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::{int, rat};
    use crate::diagnostics::testfn::{scan_test_functions, Verdict};
    use crate::krawtchouk::HammingSpace;

    #[test]
    fn certified_min_of_a_parabola() {
        let p = ExactPoly::new(vec![rat(1, 4), int(-1), int(1)]);
        let m = certified_min(&p, &int(-1), &int(1), 128).unwrap();
        assert!(m <= int(0) && m > rat(-1, 1 << 30));
        assert_eq!(certified_min(&p, &int(1), &int(2), 128).unwrap(), rat(1, 4));
    }

    #[test]
    fn refuses_without_negative_test_function() {
        let params = ProblemParams::from_inner(HammingSpace::new(6, 2).unwrap(), rat(-1, 3), rat(1, 3), 1).unwrap();
        assert!(matches!(improving_polynomial(&params, 2, 128), Err(BoundError::Precondition(_))));
    }

    #[test]
    fn negative_test_function_gives_a_better_bound() {
        // Search a small corpus for an improvable instance.
        let mut found = false;
        'outer: for n in 5..=14u32 {
            let space = HammingSpace::new(n, 2).unwrap();
            for dmax in (n / 2 + 1)..=n {
                for d in 1..dmax {
                    let Ok(params) = ProblemParams::with_space_distances(space.clone(), d, dmax, 1) else { continue };
                    let Ok(report) = scan_test_functions(&params, n as usize, 128) else { continue };
                    if let Verdict::Improvable { j } = report.verdict {
                        let imp = improving_polynomial(&params, j, 128).unwrap();
                        assert!(imp.value < imp.bound);
                        assert!(imp.v_coeffs[0].is_positive());
                        found = true;
                        break 'outer;
                    }
                }
            }
        }
        assert!(found, "no improvable k = 1 instance for n ≤ 14");
    }
}
