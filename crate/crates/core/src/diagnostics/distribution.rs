//! Distance distributions of codes attaining the cardinality bound.
//!
//! A code of size `L_{2k}(n, ℓ, s)` with inner products in `[ℓ, s]` has, from
//! every codeword, `A_i = ρ_i |C|` neighbours at the quadrature node `α_i`.
//! The same numbers solve the Vandermonde system
//! `1 + Σ_i A_i α_i^u = b_u |C|`, `u = 0..k`, which is solved here through
//! the Lagrange basis on the nodes as an independent second route.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::interval::Interval;
use crate::algebra::scalar::{self, Scalar};
use crate::energy::Potential;
use crate::error::{BoundError, Result};
use crate::krawtchouk::HammingSpace;
use crate::levenshtein::{LevenshteinInstance, ProblemParams};

/// One node of a distance distribution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistEntry {
    /// The node `α_i` (a point interval when known exactly).
    pub node: Interval,
    /// The distance `n(1-α_i)/2` when `α_i ∈ T_n`.
    pub distance: Option<u32>,
    /// Certified `A_{α_i}`.
    pub count: Interval,
    /// `A_{α_i}` when it is exactly a nonnegative integer.
    #[serde(with = "crate::serde_util::bigint_opt")]
    pub integer: Option<BigInt>,
}

/// The distance distribution forced on a code attaining `L_{2k}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceDistribution {
    pub n: u32,
    pub q: u32,
    pub k: usize,
    /// `|C| = L_{2k}(n, ℓ, s)`.
    #[serde(with = "crate::serde_util::rational")]
    pub size: Scalar,
    pub entries: Vec<DistEntry>,
    /// `Σ A_i - (|C| - 1)`; encloses zero.
    pub sum_residual: Interval,
    /// Every node lies on `T_n` and every count is a nonnegative integer.
    pub attainable: bool,
}

impl DistanceDistribution {
    /// `|C| Σ A_i h(α_i)`, the energy of an attaining code.
    pub fn energy(&self, h: &Potential, bits: u32) -> Result<Interval> {
        let mut acc = Interval::zero();
        for e in &self.entries {
            acc = acc.add(&e.count.mul(&h.eval(self.n, &e.node, bits)?)).round_outward(bits);
        }
        Ok(acc.mul_scalar(&self.size).round_outward(bits))
    }

    /// Exact counts keyed by distance, when attainable.
    pub fn by_distance(&self) -> Option<Vec<(u32, BigInt)>> {
        self.entries.iter().map(|e| Some((e.distance?, e.integer.clone()?))).collect()
    }
}

/// `b_0..b_{u_max}` with `b_u = ∫ t^u dμ_n`.
pub fn moments(space: &HammingSpace, u_max: usize) -> Vec<Scalar> {
    space.moments(u_max)
}

/// Product of `(t - z)` over interval roots, as interval coefficients.
fn interval_poly_from_roots(roots: &[&Interval], bits: u32) -> Vec<Interval> {
    let mut c = vec![Interval::one()];
    for z in roots {
        let mut next = vec![Interval::zero(); c.len() + 1];
        for (i, ci) in c.iter().enumerate() {
            next[i + 1] = next[i + 1].add(ci).round_outward(bits);
            next[i] = next[i].sub(&ci.mul(z)).round_outward(bits);
        }
        c = next;
    }
    c
}

/// Solves `Σ_i A_i α_i^u = b_u M - 1`, `u = 0..k`, for the `k+1` nodes, as
/// `A_i = M ∫ λ_i dμ_n - λ_i(1)` with `λ_i` the Lagrange basis polynomial
/// of the node `α_i`.
pub fn vandermonde_counts(space: &HammingSpace, nodes: &[Interval], size: &Scalar, bits: u32) -> Result<Vec<Interval>> {
    let b = space.moments(nodes.len());
    let mut out = Vec::with_capacity(nodes.len());
    for (i, xi) in nodes.iter().enumerate() {
        let others: Vec<&Interval> = nodes.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, x)| x).collect();
        let num = interval_poly_from_roots(&others, bits);
        let den = others.iter().fold(Interval::one(), |acc, z| acc.mul(&xi.sub(z)).round_outward(bits));
        if den.contains_zero() {
            return Err(BoundError::Inconsistent("Vandermonde nodes are not separated".into()));
        }
        let integral = num.iter().zip(&b).fold(Interval::zero(), |acc, (c, bu)| acc.add(&c.mul_scalar(bu)));
        let at_one = num.iter().fold(Interval::zero(), |acc, c| acc.add(c));
        out.push(integral.mul_scalar(size).sub(&at_one).div(&den)?.round_outward(bits));
    }
    Ok(out)
}

/// Distance distribution of a code attaining `L_{2k}(n, ℓ, s)`, computed as
/// `ρ_i L_{2k}` and checked against the Vandermonde solution.
pub fn distance_distribution(params: &ProblemParams, prec: u32) -> Result<DistanceDistribution> {
    let inst = LevenshteinInstance::with_precision(params, prec)?;
    let bits = prec + 32;
    let space = &params.space;
    let size = inst.value();
    let via_weights: Vec<Interval> = inst.rule.weights.iter().map(|w| w.mul_scalar(&size).round_outward(bits)).collect();
    let via_system = vandermonde_counts(space, &inst.rule.nodes, &size, bits)?;

    // Interior nodes lie on T_n iff Q_{k-1}^{1,ℓ,s} has k-1 zeros there.
    let grid_roots: Vec<&Scalar> =
        space.grid().iter().filter(|t| *t > &params.ell && *t < &params.s && inst.q_ells.eval(t).is_zero()).collect();
    let on_grid = grid_roots.len() == params.k - 1;

    let mut entries = Vec::with_capacity(via_weights.len());
    for (i, (a, b)) in via_weights.iter().zip(&via_system).enumerate() {
        let count = a.intersection(b).ok_or_else(|| {
            BoundError::Inconsistent(format!("A at node {i}: {a} from the weights, {b} from the Vandermonde system"))
        })?;
        let node = match (i, on_grid) {
            (0, _) => Interval::point(params.ell.clone()),
            (i, _) if i == params.k => Interval::point(params.s.clone()),
            (i, true) => Interval::point(grid_roots[i - 1].clone()),
            _ => inst.rule.nodes[i].clone(),
        };
        let distance = node.exact().and_then(|x| space.distance_of_inner(x));
        let integer = count.exact().filter(|c| c.is_integer() && !c.is_negative()).map(|c| c.to_integer());
        entries.push(DistEntry { node, distance, count, integer });
    }
    let total = entries.iter().fold(Interval::zero(), |acc, e| acc.add(&e.count));
    let sum_residual = total.add_scalar(&(Scalar::one() - &size)).round_outward(bits);
    if !sum_residual.contains_zero() {
        return Err(BoundError::Inconsistent(format!("Σ A_i - (|C| - 1) = {sum_residual}")));
    }
    let attainable = size.is_integer() && entries.iter().all(|e| e.distance.is_some() && e.integer.is_some());
    Ok(DistanceDistribution { n: params.n(), q: params.q(), k: params.k, size, entries, sum_residual, attainable })
}

/// Exact `k = 1` solution `(A_ℓ, A_s)` of `A_ℓ + A_s = M - 1`,
/// `ℓ A_ℓ + s A_s = b_1 M - 1` with `b_1 = (2-q)/q`.
pub fn k1_distribution(q: u32, ell: &Scalar, s: &Scalar, m: &Scalar) -> Result<(Scalar, Scalar)> {
    if ell >= s {
        return Err(BoundError::InvalidParams(format!("need ℓ < s, got ℓ = {ell}, s = {s}")));
    }
    let q = scalar::int(q as i64);
    let one = Scalar::one();
    let a_s = ((scalar::int(2) - &q) * m - &q - &q * ell * (m - &one)) / (&q * (s - ell));
    let a_ell = m - &one - &a_s;
    Ok((a_ell, a_s))
}

/// The `k = 1` closed forms in their commonly quoted shape
/// `A_ℓ = (q(1+s)(M-1) - 2M)/(q(s-ℓ))`, `A_s = (2M - q(1+ℓ)(M-1))/(q(s-ℓ))`.
/// They omit a `±2/(s-ℓ)` term and do not solve the linear system; kept
/// for comparison only.
pub fn k1_distribution_quoted(q: u32, ell: &Scalar, s: &Scalar, m: &Scalar) -> (Scalar, Scalar) {
    let q = scalar::int(q as i64);
    let one = Scalar::one();
    let den = &q * (s - ell);
    let a_ell = (&q * (&one + s) * (m - &one) - scalar::int(2) * m) / &den;
    let a_s = (scalar::int(2) * m - &q * (&one + ell) * (m - &one)) / &den;
    (a_ell, a_s)
}

/// Parameters `(n, ℓ, s, |C|)` of the two-weight codes of length
/// `N(q^m-1)/(q-1)` and size `q^{2m}`, with distances `(N-1)q^{m-1}` and
/// `N q^{m-1}`.
pub fn two_weight_params(q: u32, m: u32, big_n: u32) -> (u32, Scalar, Scalar, Scalar) {
    let qm = q.pow(m);
    let n = (qm - 1) / (q - 1) * big_n;
    let d = (big_n - 1) * q.pow(m - 1);
    let dmax = big_n * q.pow(m - 1);
    let to_inner = |dist: u32| Scalar::new(BigInt::from(n as i64 - 2 * dist as i64), BigInt::from(n));
    (n, to_inner(dmax), to_inner(d), Scalar::from(BigInt::from(qm).pow(2)))
}

/// The commonly quoted `A_s = q(q^m-1)N/(q-1)` for the two-weight family.
pub fn two_weight_a_s_quoted(q: u32, m: u32, big_n: u32) -> BigInt {
    BigInt::from(q) * (BigInt::from(q).pow(m) - 1) * BigInt::from(big_n) / BigInt::from(q - 1)
}

/// `A_s = (q^m-1)N` for the two-weight family: the number of codewords at
/// the smaller distance, from the linear system.
pub fn two_weight_a_s(q: u32, m: u32, big_n: u32) -> BigInt {
    (BigInt::from(q).pow(m) - 1) * BigInt::from(big_n)
}
