//! Universal lower and upper bounds on the energy of codes with inner
//! products in `[ℓ, s]`.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::hermite::{hermite_interpolant, HermiteInterpolant, HermiteNode};
use super::potential::{require_derivatives, Potential};
use crate::algebra::interval::Interval;
use crate::algebra::poly::ExactPoly;
use crate::algebra::roots::{compare_roots, isolate_roots, RootBracket};
use crate::algebra::scalar::{self, Scalar};
use crate::error::{BoundError, Result};
use crate::krawtchouk::HammingSpace;
use crate::levenshtein::quadrature::{lagrange_weights, QuadratureRule};
use crate::levenshtein::{EllSystem, LevenshteinInstance, ProblemParams};

/// Sanity and certification flags of an energy computation.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnergyFlags {
    /// The interpolant `g` has certified nonnegative Krawtchouk coefficients
    /// and `g_0 > 0` (lower bound).
    pub g_nonnegative: bool,
    /// No grid point of `[ℓ, 1)` certifies `g > h` (lower bound).
    pub g_below_h: bool,
    /// `M² Σ ρ_i h(α_i)` and `M(M g_0 - g(1))` intersect (lower bound).
    pub cross_check_agrees: bool,
    /// Every `p_i`, `i ≥ 1`, is certified `≤ 0` (upper bound).
    pub p_nonpositive: bool,
    /// No grid point of `[ℓ, s]` certifies `p < h` (upper bound).
    pub p_above_h: bool,
    /// `M = L_{2k}`: every admissible code attains the cardinality bound, so
    /// its distance distribution, and hence its energy, is forced (upper
    /// bound; no upper polynomial is needed).
    pub forced: bool,
}

/// Report of a lower or upper energy bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnergyReport {
    pub n: u32,
    pub q: u32,
    pub k: usize,
    #[serde(with = "crate::serde_util::rational")]
    pub m: Scalar,
    #[serde(with = "crate::serde_util::rational")]
    pub ell: Scalar,
    /// `s` given on input (upper bound).
    #[serde(with = "crate::serde_util::rational_opt")]
    pub s: Option<Scalar>,
    /// `s` solved from `L_{2k}(n, ℓ, s) = M` (lower bound).
    pub s_solved: Option<Interval>,
    pub potential: String,
    pub lower: Option<Interval>,
    pub upper: Option<Interval>,
    /// `λ` of the upper-bound polynomial `p = -λ f_{2k} + g_L`.
    #[serde(with = "crate::serde_util::rational_opt")]
    pub lambda: Option<Scalar>,
    /// `L_{2k}(n, ℓ, s)` (upper bound).
    #[serde(with = "crate::serde_util::rational_opt")]
    pub cardinality_bound: Option<Scalar>,
    /// `M(M g_0 - g(1))` (lower bound).
    pub cross_check: Option<Interval>,
    /// `M² Σ ρ_i h(α_i)`.
    pub quadrature_energy: Interval,
    pub rule: QuadratureRule,
    pub flags: EnergyFlags,
}

fn check_m(space: &HammingSpace, m: &Scalar) -> Result<()> {
    let total = Scalar::from(num_traits::pow(num_bigint::BigInt::from(space.q()), space.n() as usize));
    if m < &Scalar::from(num_bigint::BigInt::from(2)) || m > &total {
        return Err(BoundError::InvalidParams(format!("M = {m} must lie in [2, q^n]")));
    }
    Ok(())
}

/// `M² Σ ρ_i h(α_i)` over the finite nodes of a rule.
fn quadrature_energy(rule: &QuadratureRule, m: &Scalar, h: &Potential, n: u32, bits: u32) -> Result<Interval> {
    let mut acc = Interval::zero();
    for (x, w) in rule.nodes.iter().zip(&rule.weights) {
        acc = acc.add(&w.mul(&h.eval(n, x, bits)?)).round_outward(bits);
    }
    Ok(acc.mul_scalar(&(m * m)).round_outward(bits))
}

/// Interior nodes `ℓ` (simple), `α_i` (double), `s` (given multiplicity).
fn rule_nodes(rule: &QuadratureRule, ell_mult: usize, s_mult: usize) -> Vec<HermiteNode> {
    let k = rule.nodes.len() - 1;
    rule.nodes
        .iter()
        .enumerate()
        .map(|(i, x)| {
            let mult = if i == 0 {
                ell_mult
            } else if i == k {
                s_mult
            } else {
                2
            };
            HermiteNode::new(x.clone(), mult)
        })
        .collect()
}

/// `g ≤ h` is not contradicted at any grid point of `[lo, 1)`.
fn below_on_grid(g: &HermiteInterpolant, h: &Potential, space: &HammingSpace, lo: &Scalar, bits: u32) -> Result<bool> {
    for t in space.grid().iter().filter(|t| *t >= lo && !t.is_one()) {
        let hv = h.eval(space.n(), &Interval::point(t.clone()), bits)?;
        if g.eval_at(t).lo > hv.hi {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The quadrature rule of `L_{2k}(n, ℓ, s) = M`, with `s` solved exactly
/// through the Möbius relation between `M` and `p`.  The node `1` carries
/// the weight `1/M`.
pub fn cardinality_rule(space: &HammingSpace, ell: &Scalar, m: &Scalar, k: usize, prec: u32) -> Result<QuadratureRule> {
    check_m(space, m)?;
    let bits = prec + 32;
    let sys = EllSystem::build(space, ell, k)?;
    match sys.validate() {
        Ok(()) | Err(BoundError::KreinFailed { .. }) => {}
        Err(e) => return Err(e),
    }
    let one_minus_ell = Scalar::one() - ell;
    let (ik, ik1) = (sys.moment_i(k), sys.moment_i(k - 1));
    let den = &one_minus_ell - m * &ik1;
    let out_of_range = |why: &str| BoundError::OutOfRange { m: m.to_string(), ranges: format!("k = {k}: {why}") };
    if den.is_zero() {
        return Err(out_of_range("the cardinality equation has no solution"));
    }
    let p_star = (&one_minus_ell - m * &ik) / den;
    let p_ell = sys.ratio_at(ell).ok_or_else(|| BoundError::Degenerate("Q_(k-1)^(1,ℓ)(ℓ) = 0".into()))?;
    if p_star.is_positive() {
        return Err(out_of_range("M is below L_2k at the right end of the s-window"));
    }
    if p_star <= p_ell {
        return Err(out_of_range("M is beyond L_2k at the left end of the s-window"));
    }
    // L is a Möbius function of p; its (linear) denominator must keep one
    // sign from the left end of the window up to the solution, so that L
    // increases through M exactly once there.
    let mobius = |p: &Scalar| &ik - p * &ik1;
    let (d_ell, d_star) = (mobius(&p_ell), mobius(&p_star));
    if d_ell.is_zero() || d_star.is_zero() || scalar::sign(&d_ell) != scalar::sign(&d_star) {
        return Err(BoundError::Precondition(format!("L_{} is not monotone over the s-window", 2 * k)));
    }

    let w = sys.w_poly(&p_star);
    let mut roots = isolate_roots(&w, ell, &Scalar::one(), prec)?;
    for r in roots.iter_mut() {
        r.snap_to(space.grid());
    }
    if roots.len() != k {
        return Err(BoundError::violated(
            crate::error::Condition::Quadrature,
            format!("Q_k^(1,ℓ) - p Q_(k-1)^(1,ℓ) has {} zeros in (ℓ, 1), expected {k}", roots.len()),
        ));
    }
    // s must lie right of the largest zero of Q_k^{1,0}.
    let mut top10 = isolate_roots(&sys.one_zero.polys[k], &Scalar::from(num_bigint::BigInt::from(-2)), &Scalar::one(), prec)?
        .pop()
        .ok_or_else(|| BoundError::Inconsistent("Q_k^(1,0) has no real zeros".into()))?;
    let mut s_bracket: RootBracket = roots.last().cloned().expect("k ≥ 1 roots");
    match compare_roots(&mut s_bracket, &mut top10, prec, 4 * prec) {
        Some(std::cmp::Ordering::Greater) => {}
        Some(_) => return Err(out_of_range("the solved s is left of the s-window")),
        None => return Err(BoundError::Degenerate("the solved s coincides with the largest zero of Q_k^(1,0)".into())),
    }
    *roots.last_mut().expect("nonempty") = s_bracket;

    let mut nodes = vec![Interval::point(ell.clone())];
    nodes.extend(roots.iter().map(|r| r.interval.clone()));
    let omega = &(&ExactPoly::linear_factor(ell) * &ExactPoly::new(vec![Scalar::one(), -Scalar::one()])) * &w;
    let mut all = nodes.clone();
    all.push(Interval::one());
    let mut weights = lagrange_weights(&omega, &all, &space.moments(k + 2), bits)?;
    let endpoint = weights.pop().expect("endpoint weight");
    let last_weight = Scalar::one() / m;
    if endpoint.exact() != Some(&last_weight) {
        return Err(BoundError::Inconsistent(format!("ρ_(k+1) = {endpoint}, expected 1/M = {last_weight}")));
    }
    let interior = roots[..k - 1].to_vec();
    let rule = QuadratureRule { nodes, interior, weights, last_weight };
    if !rule.weights_positive() {
        return Err(BoundError::violated(crate::error::Condition::Quadrature, "a quadrature weight is not positive"));
    }
    Ok(rule)
}

/// Lower bound for one fixed `k`, with `s` solved from `L_{2k}(n, ℓ, s) = M`.
///
/// With `I_j = ∫ (t-ℓ) Q_j^{1,ℓ} dμ_n` and `p = Q_k^{1,ℓ}(s)/Q_{k-1}^{1,ℓ}(s)`,
/// `L_{2k} = (1-ℓ)(1-p)/(I_k - p I_{k-1})`, which is solved for `p` exactly;
/// `s` is then the largest zero of `Q_k^{1,ℓ} - p Q_{k-1}^{1,ℓ}`.
pub fn energy_lower_bound_at_k(space: &HammingSpace, ell: &Scalar, m: &Scalar, h: &Potential, k: usize, prec: u32) -> Result<EnergyReport> {
    require_derivatives(h)?;
    check_m(space, m)?;
    let bits = prec + 32;
    let n = space.n();
    let rule = cardinality_rule(space, ell, m, k, prec)?;
    let s_solved = rule.nodes.last().cloned();
    let mut flags = EnergyFlags::default();
    let value = quadrature_energy(&rule, m, h, n, bits)?;

    // g = H((t-s) f_{2k}; h): ℓ simple, α_i and s double.
    let g = hermite_interpolant(&rule_nodes(&rule, 1, 2), h, n, bits)?;
    let gc = g.krawtchouk_coefficients(space);
    flags.g_nonnegative = gc[0].is_positive() && gc.iter().all(Interval::is_nonnegative);
    flags.g_below_h = below_on_grid(&g, h, space, ell, bits)?;
    let cross = gc[0].mul_scalar(m).sub(&g.eval_at(&Scalar::one())).mul_scalar(m).round_outward(bits);
    flags.cross_check_agrees = cross.intersects(&value);

    Ok(EnergyReport {
        n,
        q: space.q(),
        k,
        m: m.clone(),
        ell: ell.clone(),
        s: s_solved.as_ref().and_then(|x| x.exact().cloned()),
        s_solved,
        potential: h.descriptor(),
        lower: Some(value.clone()),
        upper: None,
        lambda: None,
        cardinality_bound: None,
        cross_check: Some(cross),
        quadrature_energy: value,
        rule,
        flags,
    })
}

/// Universal lower bound on the energy of `M`-point codes with inner
/// products in `[ℓ, 1)`: the largest certified bound over `k = 1..=k_max`
/// (ties broken towards smaller `k`).
pub fn energy_lower_bound(space: &HammingSpace, ell: &Scalar, m: &Scalar, h: &Potential, k_max: usize, prec: u32) -> Result<EnergyReport> {
    require_derivatives(h)?;
    check_m(space, m)?;
    let k_top = k_max.min(space.n() as usize - 2);
    let mut best: Option<EnergyReport> = None;
    let mut reasons = Vec::new();
    for k in 1..=k_top {
        match energy_lower_bound_at_k(space, ell, m, h, k, prec) {
            Ok(r) if r.flags.g_nonnegative => {
                let better = best.as_ref().is_none_or(|b| r.quadrature_energy.lo > b.quadrature_energy.lo);
                if better {
                    best = Some(r);
                }
            }
            Ok(_) => reasons.push(format!("k = {k}: interpolant not certified in F_≥")),
            Err(e) => reasons.push(format!("k = {k}: {e}")),
        }
    }
    best.ok_or_else(|| {
        let ranges = (1..=k_top)
            .filter_map(|k| attainable_range(space, ell, k).map(|(a, b)| format!("k = {k}: ≈[{a:.6}, {b:.6}]")))
            .collect::<Vec<_>>()
            .join("; ");
        BoundError::OutOfRange { m: m.to_string(), ranges: if ranges.is_empty() { reasons.join("; ") } else { ranges } }
    })
}

/// Approximate range of `L_{2k}(n, ℓ, s)` over the `s`-window, for messages.
pub fn attainable_range(space: &HammingSpace, ell: &Scalar, k: usize) -> Option<(f64, f64)> {
    let sys = EllSystem::build(space, ell, k).ok()?;
    if !matches!(sys.validate(), Ok(()) | Err(BoundError::KreinFailed { .. })) {
        return None;
    }
    let one_minus_ell = Scalar::one() - ell;
    let (ik, ik1) = (sys.moment_i(k), sys.moment_i(k - 1));
    let l_of = |p: &Scalar| {
        let d = &ik - p * &ik1;
        (!d.is_zero()).then(|| scalar::to_f64(&(&one_minus_ell * (Scalar::one() - p) / d)))
    };
    let hi = l_of(&Scalar::zero())?;
    let mut top = isolate_roots(&sys.one_zero.polys[k], &Scalar::from(num_bigint::BigInt::from(-2)), &Scalar::one(), 64).ok()?.pop()?;
    top.refine(64);
    let x = top.interval.mid();
    let p_lo = sys.ratio_at(&x)?.max(sys.ratio_at(ell)?);
    let lo = l_of(&p_lo)?;
    Some((lo.min(hi), lo.max(hi)))
}

/// Options of the upper bound.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct UpperOptions {
    /// Interpolate with `ℓ` as a double node (cross-check path).
    pub ell_double: bool,
}

/// Universal upper bound on the energy of `M`-point codes with inner
/// products in `[ℓ, s]`:
/// `U = p(1) M (M - L)/L + M² Σ ρ_i h(α_i)`, `p = -λ f_{2k} + H(f_{2k}; h)`.
pub fn energy_upper_bound(space: &HammingSpace, m: &Scalar, ell: &Scalar, s: &Scalar, k: usize, h: &Potential, prec: u32) -> Result<EnergyReport> {
    energy_upper_bound_with(space, m, ell, s, k, h, prec, UpperOptions::default())
}

#[allow(clippy::too_many_arguments)]
pub fn energy_upper_bound_with(
    space: &HammingSpace,
    m: &Scalar,
    ell: &Scalar,
    s: &Scalar,
    k: usize,
    h: &Potential,
    prec: u32,
    options: UpperOptions,
) -> Result<EnergyReport> {
    require_derivatives(h)?;
    check_m(space, m)?;
    let bits = prec + 32;
    let n = space.n();
    let params = ProblemParams::from_inner(space.clone(), ell.clone(), s.clone(), k)?;
    let inst = LevenshteinInstance::with_precision(&params, prec)?;
    let l = inst.value();
    if m > &l {
        return Err(BoundError::InvalidParams(format!("M = {m} exceeds L_{}(n, ℓ, s) = {l}", 2 * k)));
    }
    let rule = inst.rule.clone();
    if m == &l {
        let quad = quadrature_energy(&rule, m, h, n, bits)?;
        return Ok(EnergyReport {
            n,
            q: space.q(),
            k,
            m: m.clone(),
            ell: ell.clone(),
            s: Some(s.clone()),
            s_solved: None,
            potential: h.descriptor(),
            lower: None,
            upper: Some(quad.clone()),
            lambda: None,
            cardinality_bound: Some(l),
            cross_check: None,
            quadrature_energy: quad,
            rule,
            flags: EnergyFlags { forced: true, ..EnergyFlags::default() },
        });
    }
    let ell_mult = if options.ell_double { 2 } else { 1 };
    let g = hermite_interpolant(&rule_nodes(&rule, ell_mult, 1), h, n, bits)?;
    let gc = g.krawtchouk_coefficients(space);
    let top = gc.len() - 1;
    let mut lambda = Scalar::zero();
    let i_max = if options.ell_double { top } else { top.min(2 * k - 1) };
    for i in 1..=i_max {
        let fi = &inst.f_coeffs[i];
        if fi.is_positive() {
            let ratio = &gc[i].hi / fi;
            if ratio > lambda {
                lambda = ratio;
            }
        } else if gc[i].hi.is_positive() {
            return Err(BoundError::Precondition(format!("f_{i} = 0 while g_{i} is not certified ≤ 0, so no λ puts p in F_≤")));
        }
    }
    let f_poly = &inst.f;
    let p_coeffs: Vec<Interval> =
        gc.iter().enumerate().map(|(i, gi)| gi.add_scalar(&-(&lambda * inst.f_coeffs.get(i).cloned().unwrap_or_default()))).collect();
    let mut flags = EnergyFlags {
        p_nonpositive: p_coeffs.iter().skip(1).all(Interval::is_nonpositive)
            && inst.f_coeffs.iter().skip(top + 1).all(|c| !c.is_negative()),
        ..EnergyFlags::default()
    };
    let mut above = true;
    for t in space.grid().iter().filter(|t| *t >= ell && *t <= s) {
        let pv = g.eval_at(t).add_scalar(&-(&lambda * f_poly.eval(t)));
        let hv = h.eval(n, &Interval::point(t.clone()), bits)?;
        if pv.hi < hv.lo {
            above = false;
        }
    }
    flags.p_above_h = above;
    if !flags.p_nonpositive {
        return Err(BoundError::Precision("p_i ≤ 0 could not be certified".into()));
    }
    let p1 = g.eval_at(&Scalar::one()).add_scalar(&-(&lambda * f_poly.at_one()));
    let quad = quadrature_energy(&rule, m, h, n, bits)?;
    let factor = m * (m - &l) / &l;
    let upper = p1.mul_scalar(&factor).add(&quad).round_outward(bits);
    Ok(EnergyReport {
        n,
        q: space.q(),
        k,
        m: m.clone(),
        ell: ell.clone(),
        s: Some(s.clone()),
        s_solved: None,
        potential: h.descriptor(),
        lower: None,
        upper: Some(upper),
        lambda: Some(lambda),
        cardinality_bound: Some(l),
        cross_check: None,
        quadrature_energy: quad,
        rule,
        flags,
    })
}

/// The strip `[lower, upper]` containing the energy of every `M`-point code
/// with inner products in `[ℓ, s]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnergyStrip {
    pub lower: EnergyReport,
    pub upper: EnergyReport,
}

impl EnergyStrip {
    pub fn lower_value(&self) -> &Interval {
        self.lower.lower.as_ref().expect("lower bound present")
    }

    pub fn upper_value(&self) -> &Interval {
        self.upper.upper.as_ref().expect("upper bound present")
    }

    /// Certified `lower ≤ upper` (up to the enclosures).
    pub fn consistent(&self) -> bool {
        self.lower_value().lo <= self.upper_value().hi
    }
}

/// Lower bound determined by `M` (scanning `k ≤ n/2`) and upper bound
/// determined by `(ℓ, s, k)`.
pub fn energy_strip(space: &HammingSpace, m: &Scalar, ell: &Scalar, s: &Scalar, k: usize, h: &Potential, prec: u32) -> Result<EnergyStrip> {
    let upper = energy_upper_bound(space, m, ell, s, k, h, prec)?;
    let k_max = (space.n() as usize / 2).max(1);
    let lower = energy_lower_bound(space, ell, m, h, k_max, prec)?;
    Ok(EnergyStrip { lower, upper })
}
