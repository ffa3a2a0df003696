//! Hermite interpolation of a potential at certified nodes, in Newton form
//! with confluent divided differences.
//!
//! With interval nodes and interval derivative values, every divided
//! difference is an enclosure of the true one, so evaluations of the
//! interpolant enclose the exact interpolant at the exact nodes.

use serde::{Deserialize, Serialize};

use super::potential::Potential;
use crate::algebra::interval::Interval;
use crate::algebra::scalar::Scalar;
use crate::error::{BoundError, Result};
use crate::krawtchouk::HammingSpace;

/// A node with its multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HermiteNode {
    pub x: Interval,
    pub multiplicity: usize,
}

impl HermiteNode {
    pub fn new(x: Interval, multiplicity: usize) -> Self {
        HermiteNode { x, multiplicity }
    }
}

/// `g(t) = Σ_j c_j Π_{i<j} (t - z_i)` with certified `c_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HermiteInterpolant {
    /// Expanded node sequence `z_0, z_1, …` (repeated per multiplicity).
    pub z: Vec<Interval>,
    /// Newton coefficients.
    pub coeffs: Vec<Interval>,
    pub bits: u32,
}

impl HermiteInterpolant {
    /// Degree bound `#conditions - 1`.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Certified `g(t)`.
    pub fn eval(&self, t: &Interval) -> Interval {
        let bits = self.bits;
        let mut acc = self.coeffs.last().cloned().unwrap_or_else(Interval::zero);
        for j in (0..self.coeffs.len().saturating_sub(1)).rev() {
            acc = acc.mul(&t.sub(&self.z[j])).add(&self.coeffs[j]).round_outward(bits);
        }
        acc
    }

    pub fn eval_at(&self, t: &Scalar) -> Interval {
        self.eval(&Interval::point(t.clone()))
    }

    /// Certified Krawtchouk coefficients `g_0..g_m`, `m = min(deg, n)`,
    /// computed from values on `T_n`.
    pub fn krawtchouk_coefficients(&self, space: &HammingSpace) -> Vec<Interval> {
        let values: Vec<Interval> = space.grid().iter().map(|t| self.eval_at(t)).collect();
        let max_index = self.degree().min(space.n() as usize);
        space.coefficients_from_intervals(&values, max_index, self.bits)
    }
}

fn factorial(m: usize) -> Scalar {
    (1..=m).fold(Scalar::from(num_bigint::BigInt::from(1)), |acc, i| acc * Scalar::from(num_bigint::BigInt::from(i)))
}

/// Hermite interpolant of `h` matching `h^{(j)}(x)` for `j < multiplicity` at
/// every node.  Nodes must be pairwise separated (disjoint intervals).
pub fn hermite_interpolant(nodes: &[HermiteNode], h: &Potential, n: u32, bits: u32) -> Result<HermiteInterpolant> {
    for (a, na) in nodes.iter().enumerate() {
        if na.multiplicity == 0 {
            return Err(BoundError::InvalidParams("node multiplicity must be at least 1".into()));
        }
        for nb in &nodes[a + 1..] {
            if na.x.intersects(&nb.x) {
                return Err(BoundError::Precision(format!("interpolation nodes {} and {} are not separated", na.x, nb.x)));
            }
        }
    }
    // Expanded sequence with node ids and derivative tables h^{(j)}/j!.
    let mut z = Vec::new();
    let mut id = Vec::new();
    let mut derivs = Vec::new();
    for (a, node) in nodes.iter().enumerate() {
        let d: Vec<Interval> = (0..node.multiplicity)
            .map(|j| Ok(h.derivative(n, j, &node.x, bits)?.mul_scalar(&(Scalar::from(num_bigint::BigInt::from(1)) / factorial(j)))))
            .collect::<Result<_>>()?;
        for _ in 0..node.multiplicity {
            z.push(node.x.clone());
            id.push(a);
            derivs.push(d.clone());
        }
    }
    let count = z.len();
    // table[i] holds the divided difference f[z_{i-j}, …, z_i] for the current j.
    let mut table: Vec<Interval> = derivs.iter().map(|d| d[0].clone()).collect();
    let mut coeffs = vec![table[0].clone()];
    for j in 1..count {
        let mut next = table.clone();
        for i in j..count {
            next[i] = if id[i] == id[i - j] {
                derivs[i][j].clone()
            } else {
                table[i].sub(&table[i - 1]).div(&z[i].sub(&z[i - j]))?.round_outward(bits)
            };
        }
        table = next;
        coeffs.push(table[j].clone());
    }
    Ok(HermiteInterpolant { z, coeffs, bits })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::{int, rat, to_f64};

    #[test]
    fn single_node_gives_constant() {
        let h = Potential::exponential(int(1)).unwrap();
        let g = hermite_interpolant(&[HermiteNode::new(Interval::point(rat(-1, 2)), 1)], &h, 4, 128).unwrap();
        assert_eq!(g.degree(), 0);
        let v = g.eval_at(&rat(1, 3));
        assert!((to_f64(&v.mid()) - (-0.5f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn reproduces_polynomials() {
        // ((1+t)/2)^3 is reproduced by any interpolant with four conditions.
        let h = Potential::Monomial { m: 3 };
        let nodes = [HermiteNode::new(Interval::point(rat(-1, 2)), 1), HermiteNode::new(Interval::point(rat(1, 3)), 2), HermiteNode::new(Interval::point(rat(3, 4)), 1)];
        let g = hermite_interpolant(&nodes, &h, 4, 128).unwrap();
        for t in [rat(-1, 1), rat(0, 1), rat(1, 5), rat(1, 1)] {
            let expect = num_traits::pow((int(1) + &t) / int(2), 3);
            assert!(g.eval_at(&t).contains(&expect));
        }
    }

    #[test]
    fn matches_values_and_slopes() {
        let h = Potential::exponential(int(2)).unwrap();
        let a = Interval::new(rat(1, 7) - rat(1, 1 << 30), rat(1, 7) + rat(1, 1 << 30));
        let nodes = [HermiteNode::new(Interval::point(rat(-3, 5)), 1), HermiteNode::new(a.clone(), 2)];
        let g = hermite_interpolant(&nodes, &h, 6, 128).unwrap();
        let ga = g.eval(&a);
        let ha = h.eval(6, &a, 128).unwrap();
        assert!(ga.intersects(&ha));
        assert!(g.eval_at(&rat(-3, 5)).intersects(&h.eval(6, &Interval::point(rat(-3, 5)), 128).unwrap()));
    }
}
