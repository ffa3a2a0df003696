//! Refinement of the certificate polynomials over the grid `T_n`.
//!
//! Each double interior zero `α_i` of `f_{2k}` is replaced by the two grid
//! points around it: `f_ref = (t-ℓ)(t-s) ∏ (t-γ_{i,1})(t-γ_{i,2})`.  Since no
//! grid point lies strictly between the `γ` of one pair, `f_ref ≤ 0` on
//! `T_n ∩ [ℓ, s]` automatically; what may fail is the nonnegativity of its
//! Krawtchouk coefficients.  When `α_i` is itself a grid point both
//! neighbouring pairs are tried and the feasible choice with the smaller
//! bound is kept.
//!
//! For energies, `g_ref` interpolates `h` at the zeros of
//! `f_ref(t)(t - t_{n-d-1})` (or `t_{n-d+1}`).

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::interval::Interval;
use crate::algebra::poly::ExactPoly;
use crate::algebra::roots::RootBracket;
use crate::algebra::scalar::{self, Scalar};
use crate::energy::potential::require_derivatives;
use crate::energy::{hermite_interpolant, HermiteNode, Potential};
use crate::error::{BoundError, Result};
use crate::krawtchouk::HammingSpace;
use crate::levenshtein::{LevenshteinInstance, ProblemParams};

/// The extra interpolation node of `g_ref`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExtraNode {
    /// `t_{n-d-1}`, the grid point just below `s`.
    #[default]
    Below,
    /// `t_{n-d+1}`, the grid point just above `s`.
    Above,
}

/// Options of [`refine_polynomials`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RefineOptions {
    pub extra_node: ExtraNode,
    /// Code size for the refined energy bound.
    pub m: Option<Scalar>,
}

/// One choice of `γ`-pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Refinement {
    /// `γ` values, increasing, with repetitions.
    #[serde(with = "crate::serde_util::rational_vec")]
    pub gammas: Vec<Scalar>,
    pub f_ref: ExactPoly,
    #[serde(with = "crate::serde_util::rational_vec")]
    pub coeffs: Vec<Scalar>,
    /// `(f_ref)_0 > 0` and every other coefficient `≥ 0`.
    pub feasible: bool,
    /// First coefficient index violating feasibility.
    pub violating_index: Option<usize>,
    /// `f_ref ≤ 0` on `T_n ∩ [ℓ, s]`.
    pub nonpositive_on_grid: bool,
    /// `f_ref(1)/(f_ref)_0` when feasible.
    #[serde(with = "crate::serde_util::rational_opt")]
    pub bound: Option<Scalar>,
}

/// Refined energy data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnergyRefinement {
    pub potential: String,
    #[serde(with = "crate::serde_util::rational")]
    pub m: Scalar,
    /// Interpolation nodes with multiplicities.
    pub nodes: Vec<HermiteNode>,
    pub coeffs: Vec<Interval>,
    /// Every `g_i`, `i ≥ 1`, certified `≥ 0`.
    pub feasible: bool,
    /// `g_ref ≤ h` not contradicted on `T_n ∩ [ℓ, s]`.
    pub below_h: bool,
    /// `M(M g_0 - g_ref(1))` when feasible.
    pub bound: Option<Interval>,
}

/// Result of a refinement.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefineReport {
    pub n: u32,
    pub q: u32,
    pub k: usize,
    #[serde(with = "crate::serde_util::rational")]
    pub ell: Scalar,
    #[serde(with = "crate::serde_util::rational")]
    pub s: Scalar,
    #[serde(with = "crate::serde_util::rational")]
    pub original_bound: Scalar,
    /// Every choice that was tried.
    pub candidates: Vec<Refinement>,
    /// Index into `candidates` of the feasible choice with the smallest bound.
    pub chosen: Option<usize>,
    pub energy: Option<EnergyRefinement>,
}

impl RefineReport {
    pub fn chosen(&self) -> Option<&Refinement> {
        self.chosen.map(|i| &self.candidates[i])
    }

    /// The refined cardinality bound, or the original one when no
    /// refinement is feasible.
    pub fn bound(&self) -> Scalar {
        self.chosen().and_then(|r| r.bound.clone()).unwrap_or_else(|| self.original_bound.clone())
    }
}

/// Grid neighbours `(t_{j-1}, t_j)` enclosing a bracketed zero; two pairs
/// when the zero is itself a grid point.
fn neighbour_pairs(root: &RootBracket, grid: &[Scalar]) -> Vec<(Scalar, Scalar)> {
    if let Some(x) = root.interval.exact() {
        let i = grid.iter().position(|t| t == x);
        return match i {
            Some(i) => {
                let mut out = Vec::new();
                if i > 0 {
                    out.push((grid[i - 1].clone(), x.clone()));
                }
                if i + 1 < grid.len() {
                    out.push((x.clone(), grid[i + 1].clone()));
                }
                out
            }
            None => {
                let j = grid.iter().position(|t| t > x).expect("zero below 1");
                vec![(grid[j - 1].clone(), grid[j].clone())]
            }
        };
    }
    let below = |t: &Scalar| {
        if t <= &root.interval.lo {
            true
        } else if t >= &root.interval.hi {
            false
        } else {
            scalar::sign(&root.poly.eval(t)) == root.sign_lo
        }
    };
    let j = grid.iter().position(|t| !below(t)).expect("zero below 1");
    vec![(grid[j - 1].clone(), grid[j].clone())]
}

fn evaluate(space: &HammingSpace, ell: &Scalar, s: &Scalar, mut gammas: Vec<Scalar>) -> Refinement {
    gammas.sort();
    let mut roots = vec![ell.clone(), s.clone()];
    roots.extend(gammas.iter().cloned());
    let f_ref = ExactPoly::from_roots(&roots);
    let coeffs = space.to_krawtchouk(&f_ref);
    let violating_index = if !coeffs[0].is_positive() { Some(0) } else { coeffs.iter().position(Signed::is_negative) };
    let feasible = violating_index.is_none();
    let nonpositive_on_grid = space.grid().iter().filter(|t| *t >= ell && *t <= s).all(|t| !f_ref.eval(t).is_positive());
    let bound = feasible.then(|| f_ref.at_one() / &coeffs[0]);
    Refinement { gammas, f_ref, coeffs, feasible, violating_index, nonpositive_on_grid, bound }
}

/// Refines `f_{2k}` (and, with a potential and `M`, the energy interpolant)
/// over `T_n`.  For `k = 1` there are no interior zeros and the original
/// polynomial is returned as the only candidate.
pub fn refine_polynomials(params: &ProblemParams, h: Option<&Potential>, options: &RefineOptions, prec: u32) -> Result<RefineReport> {
    let inst = LevenshteinInstance::with_precision(params, prec)?;
    let space = &params.space;
    let (ell, s) = (&params.ell, &params.s);
    let grid = space.grid();

    let choices: Vec<Vec<(Scalar, Scalar)>> = inst.rule.interior.iter().map(|r| neighbour_pairs(r, grid)).collect();
    let mut candidates = Vec::new();
    let mut pick = vec![0usize; choices.len()];
    loop {
        let gammas = pick.iter().zip(&choices).flat_map(|(&i, c)| [c[i].0.clone(), c[i].1.clone()]).collect();
        candidates.push(evaluate(space, ell, s, gammas));
        // Odometer over the choices.
        let mut pos = 0;
        while pos < pick.len() {
            pick[pos] += 1;
            if pick[pos] < choices[pos].len() {
                break;
            }
            pick[pos] = 0;
            pos += 1;
        }
        if pos == pick.len() {
            break;
        }
    }
    let chosen = candidates
        .iter()
        .enumerate()
        .filter_map(|(i, c)| c.bound.as_ref().map(|b| (i, b)))
        .min_by(|a, b| a.1.cmp(b.1).then(a.0.cmp(&b.0)))
        .map(|(i, _)| i);

    let energy = match (h, &options.m, chosen) {
        (Some(h), Some(m), Some(ci)) if params.k >= 2 => Some(energy_refinement(space, params, &candidates[ci], h, m, options.extra_node, prec)?),
        _ => None,
    };
    Ok(RefineReport {
        n: params.n(),
        q: params.q(),
        k: params.k,
        ell: ell.clone(),
        s: s.clone(),
        original_bound: inst.value(),
        candidates,
        chosen,
        energy,
    })
}

fn energy_refinement(
    space: &HammingSpace,
    params: &ProblemParams,
    refinement: &Refinement,
    h: &Potential,
    m: &Scalar,
    extra: ExtraNode,
    prec: u32,
) -> Result<EnergyRefinement> {
    require_derivatives(h)?;
    let bits = prec + 32;
    let d = params.d as usize;
    let n = space.n() as usize;
    let extra_index = match extra {
        ExtraNode::Below => n.checked_sub(d + 1),
        ExtraNode::Above => (n - d + 1 <= n).then_some(n - d + 1),
    }
    .ok_or_else(|| BoundError::InvalidParams("the extra node falls outside T_n".into()))?;
    let mut zeros = vec![params.ell.clone(), params.s.clone(), space.t(extra_index).clone()];
    zeros.extend(refinement.gammas.iter().cloned());
    zeros.sort();
    let mut nodes: Vec<HermiteNode> = Vec::new();
    for z in zeros {
        match nodes.last_mut() {
            Some(last) if last.x.exact() == Some(&z) => last.multiplicity += 1,
            _ => nodes.push(HermiteNode::new(Interval::point(z), 1)),
        }
    }
    let g = hermite_interpolant(&nodes, h, space.n(), bits)?;
    let coeffs = g.krawtchouk_coefficients(space);
    let feasible = coeffs.iter().skip(1).all(Interval::is_nonnegative);
    let mut below_h = true;
    for t in space.grid().iter().filter(|t| *t >= &params.ell && *t <= &params.s) {
        below_h &= g.eval_at(t).lo <= h.eval(space.n(), &Interval::point(t.clone()), bits)?.hi;
    }
    let bound = (feasible && below_h)
        .then(|| coeffs[0].mul_scalar(m).sub(&g.eval_at(&Scalar::one())).mul_scalar(m).round_outward(bits));
    Ok(EnergyRefinement { potential: h.descriptor(), m: m.clone(), nodes, coeffs, feasible, below_h, bound })
}

/// Whether every coefficient of `f_ref` beyond the zeroth is nonnegative
/// and `(f_ref)_0 > 0`.
pub fn is_feasible(coeffs: &[Scalar]) -> bool {
    coeffs.first().is_some_and(|c| c > &Scalar::zero()) && coeffs.iter().all(|c| !c.is_negative())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::{int, rat};

    #[test]
    fn k1_is_identity() {
        let params = ProblemParams::from_inner(HammingSpace::new(6, 2).unwrap(), rat(-1, 3), rat(1, 3), 1).unwrap();
        let r = refine_polynomials(&params, None, &RefineOptions::default(), 128).unwrap();
        assert_eq!(r.candidates.len(), 1);
        assert_eq!(r.bound(), int(16));
        assert_eq!(r.chosen().unwrap().f_ref, LevenshteinInstance::new(&params).unwrap().f);
    }

    #[test]
    fn golay_projection_tries_both_pairs() {
        // The interior zero -1/23 is a grid point, so two choices exist.
        let params = ProblemParams::from_distances(23, 2, 8, 16, 2).unwrap();
        let r = refine_polynomials(&params, None, &RefineOptions::default(), 128).unwrap();
        assert_eq!(r.candidates.len(), 2);
        for c in &r.candidates {
            assert!(c.nonpositive_on_grid);
            assert_eq!(c.feasible, is_feasible(&c.coeffs));
            if let Some(b) = &c.bound {
                assert!(b <= &int(2048));
            }
        }
    }

    #[test]
    fn refinement_improves_and_reports_energy() {
        let params = ProblemParams::from_distances(10, 2, 3, 8, 2).unwrap();
        let options = RefineOptions { m: Some(int(20)), ..Default::default() };
        let r = refine_polynomials(&params, Some(&Potential::default()), &options, 128).unwrap();
        assert_eq!(r.original_bound, int(176));
        assert_eq!(r.bound(), int(144));
        let e = r.energy.unwrap();
        assert_eq!(e.nodes.iter().map(|n| n.multiplicity).sum::<usize>(), 2 * params.k + 1);
        assert!(e.feasible && e.below_h && e.bound.is_some());
    }

    #[test]
    fn infeasible_refinement_names_the_coefficient() {
        let params = ProblemParams::from_distances(17, 3, 8, 14, 2).unwrap();
        let r = refine_polynomials(&params, None, &RefineOptions::default(), 128).unwrap();
        assert!(r.chosen.is_none());
        assert!(r.candidates[0].violating_index.is_some());
        assert_eq!(r.bound(), int(1827));
    }
}
