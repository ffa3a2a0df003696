//! The Hamming space `F_q^n`, its inner-product grid `T_n`, the measure
//! `μ_n` and the Krawtchouk basis.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::interval::Interval;
use crate::algebra::measure::DiscreteMeasure;
use crate::algebra::poly::ExactPoly;
use crate::algebra::scalar::{binomial, Scalar};
use crate::error::{BoundError, Result};

/// `F_q^n` together with the exact data of its Krawtchouk analysis.
///
/// The grid point `t_j = -1 + 2j/n` corresponds to Hamming distance
/// `d = n - j`, i.e. `t = 1 - 2d/n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "SpaceDescriptor", try_from = "SpaceDescriptor")]
pub struct HammingSpace {
    n: u32,
    q: u32,
    grid: Vec<Scalar>,
    r: Vec<BigInt>,
    weights: Vec<Scalar>,
    /// `kvals[i][d] = K_i(d)`, the integer Krawtchouk values.
    kvals: Vec<Vec<BigInt>>,
}

/// Serialized form of a [`HammingSpace`]: just its parameters.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpaceDescriptor {
    pub n: u32,
    pub q: u32,
}

impl From<HammingSpace> for SpaceDescriptor {
    fn from(s: HammingSpace) -> Self {
        SpaceDescriptor { n: s.n, q: s.q }
    }
}

impl TryFrom<SpaceDescriptor> for HammingSpace {
    type Error = BoundError;
    fn try_from(d: SpaceDescriptor) -> Result<Self> {
        HammingSpace::new(d.n, d.q)
    }
}

impl HammingSpace {
    /// Space with `n ≥ 2` (at most 512) and `q ≥ 2`.
    pub fn new(n: u32, q: u32) -> Result<Self> {
        if n < 2 {
            return Err(BoundError::InvalidParams(format!("code length n = {n} must be at least 2")));
        }
        if n > 512 {
            return Err(BoundError::InvalidParams(format!("code length n = {n} is too large")));
        }
        if q < 2 {
            return Err(BoundError::InvalidParams(format!("alphabet size q = {q} must be at least 2")));
        }
        let nn = n as i64;
        let grid = (0..=nn).map(|j| BigRational::new(BigInt::from(2 * j - nn), BigInt::from(nn))).collect();
        let qm1 = BigInt::from(q - 1);
        let r: Vec<BigInt> = (0..=n)
            .map(|i| num_traits::pow(qm1.clone(), i as usize) * binomial(n as u64, i as u64))
            .collect();
        let qn = num_traits::pow(BigInt::from(q), n as usize);
        let weights = (0..=n as usize).map(|j| BigRational::new(r[n as usize - j].clone(), qn.clone())).collect();
        let kvals = krawtchouk_table(n, q);
        Ok(HammingSpace { n, q, grid, r, weights, kvals })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// The grid `T_n`, increasing from `-1` to `1`.
    pub fn grid(&self) -> &[Scalar] {
        &self.grid
    }

    /// Grid point `t_j`.
    pub fn t(&self, j: usize) -> &Scalar {
        &self.grid[j]
    }

    /// Index `j` with `t_j = t`, when `t` is on the grid.
    pub fn grid_index(&self, t: &Scalar) -> Option<usize> {
        self.grid.binary_search(t).ok()
    }

    /// Inner product `1 - 2d/n` of distance `d`.
    pub fn inner_of_distance(&self, d: u32) -> Scalar {
        Scalar::one() - BigRational::new(BigInt::from(2 * d), BigInt::from(self.n))
    }

    /// Distance `n(1-t)/2` of a grid inner product.
    pub fn distance_of_inner(&self, t: &Scalar) -> Option<u32> {
        self.grid_index(t).map(|j| self.n - j as u32)
    }

    /// Norm `r_i = (q-1)^i C(n,i)` of `Q_i`.
    pub fn r(&self, i: usize) -> &BigInt {
        &self.r[i]
    }

    /// Partial sum `S_j = r_0 + … + r_j`.
    pub fn partial_sum(&self, j: usize) -> BigInt {
        self.r[..=j].iter().sum()
    }

    /// `μ_n` weight at `t_j`, `r_{n-j} / q^n`.
    pub fn weight(&self, j: usize) -> &Scalar {
        &self.weights[j]
    }

    /// Integer Krawtchouk value `K_i(d)`.
    pub fn kvalue(&self, i: usize, d: usize) -> &BigInt {
        &self.kvals[i][d]
    }

    /// `Q_i(t_j) = K_i(n - j) / r_i`.
    pub fn q_value(&self, i: usize, j: usize) -> Scalar {
        BigRational::new(self.kvals[i][self.n as usize - j].clone(), self.r[i].clone())
    }

    /// The measure `μ_n = q^{-n} Σ r_{n-j} δ_{t_j}`.
    pub fn base_measure(&self) -> DiscreteMeasure {
        let support = self.grid.iter().cloned().zip(self.weights.iter().cloned()).collect();
        DiscreteMeasure::new(support, Scalar::one()).expect("grid is sorted")
    }

    /// `∫ p dμ_n`.
    pub fn integrate(&self, p: &ExactPoly) -> Scalar {
        self.grid
            .iter()
            .zip(&self.weights)
            .fold(Scalar::zero(), |acc, (t, w)| acc + w * p.eval(t))
    }

    /// Moments `b_u = ∫ t^u dμ_n` for `u = 0..=u_max`.
    pub fn moments(&self, u_max: usize) -> Vec<Scalar> {
        self.base_measure().moments(u_max)
    }

    /// Values of `p` on the grid.
    pub fn grid_values(&self, p: &ExactPoly) -> Vec<Scalar> {
        self.grid.iter().map(|t| p.eval(t)).collect()
    }

    /// Krawtchouk coefficients of the function with the given grid values:
    /// `f_i = Σ_j μ_n(t_j) v_j K_i(n-j)` for `i = 0..=n`.
    pub fn coefficients_from_values(&self, values: &[Scalar]) -> Vec<Scalar> {
        let n = self.n as usize;
        (0..=n)
            .map(|i| {
                (0..=n).fold(Scalar::zero(), |acc, j| {
                    if values[j].is_zero() {
                        acc
                    } else {
                        acc + &self.weights[j] * &values[j] * BigRational::from_integer(self.kvals[i][n - j].clone())
                    }
                })
            })
            .collect()
    }

    /// Interval version of [`Self::coefficients_from_values`].
    pub fn coefficients_from_intervals(&self, values: &[Interval], max_index: usize, bits: u32) -> Vec<Interval> {
        let n = self.n as usize;
        (0..=max_index.min(n))
            .map(|i| {
                (0..=n)
                    .fold(Interval::zero(), |acc, j| {
                        let c = &self.weights[j] * BigRational::from_integer(self.kvals[i][n - j].clone());
                        acc.add(&values[j].mul_scalar(&c))
                    })
                    .round_outward(bits)
            })
            .collect()
    }

    /// Krawtchouk expansion `p = Σ f_i Q_i` (after reduction modulo
    /// `∏(t - t_j)` when `deg p > n`).  Returns `f_0..f_m` with
    /// `m = min(deg p, n)`.
    pub fn to_krawtchouk(&self, p: &ExactPoly) -> Vec<Scalar> {
        let deg = p.degree().unwrap_or(0).min(self.n as usize);
        let mut f = self.coefficients_from_values(&self.grid_values(p));
        f.truncate(deg + 1);
        f
    }

    /// `Σ f_i Q_i` in the monomial basis.
    pub fn from_krawtchouk(&self, f: &[Scalar]) -> ExactPoly {
        let polys = self.krawtchouk_polys(f.len().saturating_sub(1));
        f.iter()
            .zip(&polys)
            .fold(ExactPoly::zero(), |acc, (c, q)| &acc + &q.scale(c))
    }

    /// The unique polynomial of degree `≤ n` agreeing with `p` on `T_n`.
    pub fn reduce(&self, p: &ExactPoly) -> ExactPoly {
        if p.degree().unwrap_or(0) <= self.n as usize {
            return p.clone();
        }
        let pts: Vec<_> = self.grid.iter().map(|t| (t.clone(), p.eval(t))).collect();
        ExactPoly::interpolate(&pts)
    }

    /// Recurrence coefficients `(a_i, b_i, c_i)` of the normalised
    /// Krawtchouk polynomials.
    pub fn recurrence(&self, i: usize) -> (Scalar, Scalar, Scalar) {
        let n = BigInt::from(self.n);
        let q = BigInt::from(self.q);
        let i_big = BigInt::from(i as u64);
        let qn = &q * &n;
        let two = BigInt::from(2);
        let a = BigRational::new(-((&q - &two) * (&n - &two * &i_big)), qn.clone());
        let b = BigRational::new(&two * (&q - BigInt::one()) * (&n - &i_big), qn.clone());
        let c = BigRational::new(&two * &i_big, qn);
        (a, b, c)
    }

    /// Normalised Krawtchouk polynomials `Q_0..Q_max_deg` via the three-term
    /// recurrence `(t - a_i) Q_i = b_i Q_{i+1} + c_i Q_{i-1}`.
    pub fn krawtchouk_polys(&self, max_deg: usize) -> Vec<ExactPoly> {
        let max_deg = max_deg.min(self.n as usize);
        let mut out = vec![ExactPoly::one()];
        if max_deg == 0 {
            return out;
        }
        let q = BigInt::from(self.q);
        let two = BigInt::from(2);
        let den = &two * (&q - BigInt::one());
        out.push(ExactPoly::new(vec![
            BigRational::new(&q - &two, den.clone()),
            BigRational::new(q.clone(), den),
        ]));
        for i in 1..max_deg {
            let (a, b, c) = self.recurrence(i);
            let tq = &ExactPoly::new(vec![-a, Scalar::one()]) * &out[i];
            let next = (&tq - &out[i - 1].scale(&c)).scale(&(Scalar::one() / b));
            out.push(next);
        }
        out
    }
}

fn krawtchouk_table(n: u32, q: u32) -> Vec<Vec<BigInt>> {
    let n_us = n as usize;
    let qb = BigInt::from(q);
    let qm1 = BigInt::from(q - 1);
    let nb = BigInt::from(n);
    let mut table = vec![vec![BigInt::zero(); n_us + 1]; n_us + 1];
    for d in 0..=n_us {
        let db = BigInt::from(d as u64);
        table[0][d] = BigInt::one();
        if n_us >= 1 {
            table[1][d] = &qm1 * &nb - &qb * &db;
        }
        for i in 1..n_us {
            let ib = BigInt::from(i as u64);
            let lhs = (&qm1 * (&nb - &ib) + &ib - &qb * &db) * &table[i][d] - &qm1 * (&nb - &ib + 1) * &table[i - 1][d];
            table[i + 1][d] = lhs / BigInt::from(i as u64 + 1);
        }
    }
    table
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::{int, rat};

    #[test]
    fn norms_and_weights() {
        let s = HammingSpace::new(4, 2).unwrap();
        let r: Vec<i64> = (0..=4).map(|i| i64::try_from(s.r(i).clone()).unwrap()).collect();
        assert_eq!(r, vec![1, 4, 6, 4, 1]);
        let s2 = HammingSpace::new(2, 2).unwrap();
        let w: Vec<Scalar> = (0..=2).map(|j| s2.weight(j).clone()).collect();
        assert_eq!(w, vec![rat(1, 4), rat(1, 2), rat(1, 4)]);
        assert_eq!(s2.base_measure().total_mass(), int(1));
    }

    #[test]
    fn first_polynomials() {
        let s = HammingSpace::new(7, 2).unwrap();
        let q = s.krawtchouk_polys(2);
        assert_eq!(q[1], ExactPoly::x());
        let s3 = HammingSpace::new(5, 3).unwrap();
        let q3 = s3.krawtchouk_polys(1);
        assert_eq!(q3[1], ExactPoly::new(vec![rat(1, 4), rat(3, 4)]));
        let s4 = HammingSpace::new(4, 2).unwrap();
        let q2 = &s4.krawtchouk_polys(2)[2];
        assert_eq!(q2.eval(&int(-1)), int(1));
        assert_eq!(q2.eval(&int(1)), int(1));
    }

    #[test]
    fn polynomials_match_integer_values() {
        for (n, q) in [(6, 2), (5, 3), (4, 4)] {
            let s = HammingSpace::new(n, q).unwrap();
            let polys = s.krawtchouk_polys(n as usize);
            for (i, p) in polys.iter().enumerate() {
                for j in 0..=n as usize {
                    assert_eq!(p.eval(s.t(j)), s.q_value(i, j), "n={n} q={q} i={i} j={j}");
                }
            }
        }
    }

    #[test]
    fn expansion_examples() {
        let s = HammingSpace::new(4, 2).unwrap();
        assert_eq!(s.to_krawtchouk(&ExactPoly::one()), vec![int(1)]);
        assert_eq!(s.to_krawtchouk(&ExactPoly::x()), vec![int(0), int(1)]);
        let q2 = s.krawtchouk_polys(2)[2].clone();
        assert_eq!(s.to_krawtchouk(&q2), vec![int(0), int(0), int(1)]);
        assert_eq!(s.integrate(&ExactPoly::x()), int(0));
        assert_eq!(s.moments(2)[2], rat(1, 4));
    }
}
