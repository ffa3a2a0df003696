//! Interpolatory quadrature rules with respect to `μ_n`.
//!
//! For nodes that are the roots of `ω(t) = Σ ω_m t^m`, the weight of the node
//! `x` is `∫ ω(t)/((t-x) ω'(x)) dμ_n = G(x)/ω'(x)` with
//! `G(x) = Σ_j x^j Σ_{m>j} ω_m b_{m-1-j}` and `b_u = ∫ t^u dμ_n`.  `G` is an
//! exact rational polynomial, so exact nodes give exact weights and
//! bracketed nodes give certified interval weights.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::interval::{eval_poly_tight, Interval};
use crate::algebra::poly::ExactPoly;
use crate::algebra::roots::{isolate_roots, RootBracket};
use crate::algebra::scalar::Scalar;
use crate::error::{BoundError, Result};
use crate::krawtchouk::families::one_zero_family;
use crate::krawtchouk::HammingSpace;

/// The numerator polynomial `G` of the interpolatory weights of `ω`.
pub fn weight_numerator(omega: &ExactPoly, moments: &[Scalar]) -> ExactPoly {
    let deg = omega.degree().unwrap_or(0);
    let coeffs = (0..deg)
        .map(|j| ((j + 1)..=deg).fold(Scalar::zero(), |acc, m| acc + omega.coeff(m) * &moments[m - 1 - j]))
        .collect();
    ExactPoly::new(coeffs)
}

/// Weights `G(x)/ω'(x)` at the given nodes (each a root of `ω`).
pub fn lagrange_weights(omega: &ExactPoly, nodes: &[Interval], moments: &[Scalar], bits: u32) -> Result<Vec<Interval>> {
    let g = weight_numerator(omega, moments);
    let dw = omega.derivative();
    nodes
        .iter()
        .map(|x| match x.exact() {
            Some(x) => {
                let den = dw.eval(x);
                if den.is_zero() {
                    return Err(BoundError::Degenerate(format!("repeated quadrature node at {x}")));
                }
                Ok(Interval::point(g.eval(x) / den))
            }
            None => eval_poly_tight(&g, x, bits).div(&eval_poly_tight(&dw, x, bits)).map(|w| w.round_outward(bits)),
        })
        .collect()
}

/// The quadrature rule `f_0 = ρ_{k+1} f(1) + Σ_{i=0}^{k} ρ_i f(α_i)`, exact
/// for polynomials of degree at most `2k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadratureRule {
    /// `α_0 = ℓ, α_1..α_{k-1}, α_k = s`.
    pub nodes: Vec<Interval>,
    /// Certified brackets for the interior nodes `α_1..α_{k-1}`.
    pub interior: Vec<RootBracket>,
    /// `ρ_0..ρ_k`.
    pub weights: Vec<Interval>,
    /// `ρ_{k+1}`, the weight of the node `t = 1`.
    #[serde(with = "crate::serde_util::rational")]
    pub last_weight: Scalar,
}

impl QuadratureRule {
    /// `ρ_{k+1} p(1) + Σ ρ_i p(α_i)`.
    pub fn apply(&self, p: &ExactPoly, bits: u32) -> Interval {
        let start = Interval::point(&self.last_weight * p.at_one());
        self.nodes
            .iter()
            .zip(&self.weights)
            .fold(start, |acc, (x, w)| acc.add(&w.mul(&eval_poly_tight(p, x, bits))).round_outward(bits))
    }

    /// `ρ_{k+1} + Σ ρ_i - 1`; encloses zero for a correct rule.
    pub fn mass_residual(&self, bits: u32) -> Interval {
        self.apply(&ExactPoly::one(), bits).add_scalar(&-Scalar::one())
    }

    /// True when every weight (including `ρ_{k+1}`) is certified positive.
    pub fn weights_positive(&self) -> bool {
        self.weights.iter().all(Interval::is_positive) && self.last_weight > Scalar::zero()
    }
}

/// Radau rule for `μ_n` with the fixed node `t = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RadauRule10 {
    /// Brackets of the zeros of `Q_k^{1,0}`, increasing.
    pub nodes: Vec<RootBracket>,
    pub weights: Vec<Interval>,
    /// Weight of `t = 1`.
    #[serde(with = "crate::serde_util::rational")]
    pub endpoint_weight: Scalar,
}

impl RadauRule10 {
    pub fn apply(&self, p: &ExactPoly, bits: u32) -> Interval {
        let start = Interval::point(&self.endpoint_weight * p.at_one());
        self.nodes
            .iter()
            .zip(&self.weights)
            .fold(start, |acc, (x, w)| acc.add(&w.mul(&eval_poly_tight(p, &x.interval, bits))).round_outward(bits))
    }
}

/// Radau quadrature with nodes the zeros of `Q_k^{1,0}` and `t = 1`, exact
/// for polynomials of degree at most `2k`.
pub fn radau_rule_10(space: &HammingSpace, k: usize, prec: u32) -> Result<RadauRule10> {
    if k < 1 || k > space.n() as usize - 1 {
        return Err(BoundError::InvalidParams(format!("Radau rule needs 1 ≤ k ≤ n - 1, got k = {k}")));
    }
    let bits = prec + 32;
    let fam = one_zero_family(space, k)?;
    let qk = &fam.polys[k];
    let mut nodes = isolate_roots(qk, &-Scalar::one(), &Scalar::one(), prec)?;
    for b in nodes.iter_mut() {
        b.snap_to(space.grid());
    }
    if nodes.len() != k {
        return Err(BoundError::Precondition(format!("Q_k^(1,0) has {} zeros in (-1, 1), expected {k}", nodes.len())));
    }
    let omega = qk * &ExactPoly::linear_factor(&Scalar::one());
    let moments = space.moments(k + 1);
    let mut all: Vec<Interval> = nodes.iter().map(|b| b.interval.clone()).collect();
    all.push(Interval::one());
    let mut weights = lagrange_weights(&omega, &all, &moments, bits)?;
    let endpoint = weights.pop().expect("endpoint weight");
    let endpoint_weight = endpoint.exact().cloned().expect("exact node gives exact weight");
    Ok(RadauRule10 { nodes, weights, endpoint_weight })
}
