//! Design strength and the MacWilliams transform of explicit codes.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::clique::check_budget;
use super::code::{distance, word_of_index, Code};
use crate::algebra::scalar::{self, Scalar};
use crate::error::{BoundError, Result};

/// `B'_0..B'_n` with `B'_j = (1/|C|) Σ_i B_i K_j(i)`, where `B_i` is the
/// average distance distribution; `B'_0 = 1` and `B'_j ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MacWilliamsVector {
    #[serde(with = "crate::serde_util::rational_vec")]
    pub values: Vec<Scalar>,
}

impl MacWilliamsVector {
    /// Largest `τ` with `B'_1 = … = B'_τ = 0`.
    pub fn strength(&self) -> usize {
        self.values.iter().skip(1).position(|b| !b.is_zero()).unwrap_or(self.values.len() - 1)
    }

    pub fn nonnegative(&self) -> bool {
        self.values.iter().all(|b| b >= &Scalar::zero())
    }
}

/// MacWilliams transform of the code's distance distribution.
pub fn macwilliams(code: &Code) -> Result<MacWilliamsVector> {
    if code.is_empty() {
        return Err(BoundError::InvalidParams("empty code".into()));
    }
    let space = code.space()?;
    let b = code.distance_distribution();
    let m = scalar::from_bigint(BigInt::from(code.len()));
    let n = code.n as usize;
    let values = (0..=n)
        .map(|j| (0..=n).fold(Scalar::zero(), |acc, i| acc + &b[i] * scalar::from_bigint(space.kvalue(j, i).clone())) / &m)
        .collect();
    Ok(MacWilliamsVector { values })
}

/// Largest `τ ≤ n` such that `Σ_{y ∈ C} ⟨x, y⟩^u = b_u |C|` for every
/// `x ∈ F_q^n` and every `u ≤ τ`, checked exactly over the whole space.
pub fn design_strength(code: &Code, budget: usize) -> Result<usize> {
    if code.is_empty() {
        return Err(BoundError::InvalidParams("empty code".into()));
    }
    let space = code.space()?;
    let total = check_budget(&space, budget)?;
    let n = code.n as usize;
    let b = space.moments(n);
    let m = scalar::from_bigint(BigInt::from(code.len()));
    // powers[d][u] = t^u for the inner product t of distance d.
    let powers: Vec<Vec<Scalar>> = (0..=n)
        .map(|dist| {
            let t = space.inner_of_distance(dist as u32);
            let mut row = vec![Scalar::one()];
            for u in 1..=n {
                let next = &row[u - 1] * &t;
                row.push(next);
            }
            row
        })
        .collect();
    let mut tau = n;
    for idx in 0..total {
        let x = word_of_index(code.n, code.q, idx);
        let mut counts = vec![0u64; n + 1];
        for y in &code.words {
            counts[distance(&x, y)] += 1;
        }
        for u in 1..=tau {
            let sum = counts.iter().enumerate().fold(Scalar::zero(), |acc, (dist, &c)| {
                if c == 0 {
                    acc
                } else {
                    acc + &powers[dist][u] * scalar::from_bigint(BigInt::from(c))
                }
            });
            if sum != &b[u] * &m {
                tau = u - 1;
                break;
            }
        }
        if tau == 0 {
            break;
        }
    }
    Ok(tau)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::clique::DEFAULT_BUDGET;

    #[test]
    fn whole_space_has_full_strength() {
        let c = Code::whole_space(4, 3).unwrap();
        assert_eq!(design_strength(&c, DEFAULT_BUDGET).unwrap(), 4);
        assert_eq!(macwilliams(&c).unwrap().strength(), 4);
    }

    #[test]
    fn even_weight_codes() {
        for n in [4, 5, 6, 7] {
            let c = Code::even_weight(n).unwrap();
            let mw = macwilliams(&c).unwrap();
            assert!(mw.nonnegative());
            // The dual is the repetition code, of minimum distance n.
            assert_eq!(design_strength(&c, DEFAULT_BUDGET).unwrap(), n as usize - 1);
            assert_eq!(mw.strength(), n as usize - 1);
        }
    }

    #[test]
    fn non_design_has_strength_zero() {
        let c = Code::new(5, 2, vec![vec![0, 0, 0, 0, 0], vec![1, 1, 0, 0, 0]]).unwrap();
        assert_eq!(design_strength(&c, DEFAULT_BUDGET).unwrap(), 0);
        let mw = macwilliams(&c).unwrap();
        assert_eq!(mw.strength(), 0);
        assert!(!mw.values[1].is_zero());
        assert!(mw.nonnegative());
    }

    #[test]
    fn strengths_agree_on_small_codes() {
        for mask in 1u32..256 {
            let idx: Vec<usize> = (0..8).filter(|i| mask >> i & 1 == 1).collect();
            let c = Code::from_indices(3, 2, &idx).unwrap();
            assert_eq!(design_strength(&c, DEFAULT_BUDGET).unwrap(), macwilliams(&c).unwrap().strength(), "{idx:?}");
        }
    }
}
