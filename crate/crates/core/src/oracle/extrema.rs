//! Exact minimum and maximum energies of `M`-point codes.
//!
//! Energy depends only on the pair-distance counts, so the enumeration
//! collects the distinct count vectors and evaluates the potential once per
//! vector.  Symmetry reduction: translate so that `0 ∈ C`, then map a
//! nonzero codeword of least weight `w` to `1^w 0^{n-w}` by a coordinate
//! permutation and per-coordinate symbol permutations fixing `0`.  Both
//! are isometries, so every code is equivalent to one containing `0` and
//! `1^w 0^{n-w}` whose other words have weight `≥ w`.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use super::clique::{check_budget, Graph, DEFAULT_BUDGET};
use super::code::{distance, energy_of_pair_counts, index_of_word, word_of_index, Code};
use crate::algebra::interval::Interval;
use crate::energy::Potential;
use crate::error::{BoundError, Result};
use crate::krawtchouk::HammingSpace;

/// Limit on the number of search nodes.
pub const NODE_BUDGET: u64 = 200_000_000;

/// Size limits of the energy enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest admissible `q^n`.
    pub space: usize,
    /// Largest admissible `M`.
    pub max_m: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { space: DEFAULT_BUDGET, max_m: 16 }
    }
}

/// Exact energy extrema with witnesses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnergyExtrema {
    pub m: usize,
    pub d: u32,
    pub dmax: u32,
    pub potential: String,
    pub min: Interval,
    pub max: Interval,
    pub min_witness: Code,
    pub max_witness: Code,
    /// Number of distinct pair-distance count vectors met.
    pub distributions: usize,
}

struct Search<'a> {
    graph: &'a Graph,
    words: &'a [Vec<u8>],
    found: HashMap<Vec<u64>, Vec<usize>>,
    nodes: u64,
}

impl Search<'_> {
    fn recurse(&mut self, chosen: &mut Vec<usize>, counts: &mut Vec<u64>, cand: &FixedBitSet, need: usize) -> Result<()> {
        self.nodes += 1;
        if self.nodes > NODE_BUDGET {
            return Err(BoundError::Budget(format!("energy enumeration exceeded {NODE_BUDGET} nodes")));
        }
        if need == 0 {
            self.found.entry(counts.clone()).or_insert_with(|| chosen.clone());
            return Ok(());
        }
        if cand.count_ones(..) < need {
            return Ok(());
        }
        for v in cand.ones() {
            let mut next = cand.clone();
            next.intersect_with(&self.graph.adj[v]);
            next.set_range(..v + 1, false);
            if next.count_ones(..) + 1 < need {
                continue;
            }
            for &u in chosen.iter() {
                counts[distance(&self.words[u], &self.words[v])] += 2;
            }
            chosen.push(v);
            self.recurse(chosen, counts, &next, need - 1)?;
            chosen.pop();
            for &u in chosen.iter() {
                counts[distance(&self.words[u], &self.words[v])] -= 2;
            }
        }
        Ok(())
    }
}

/// Exact `min E_h` and `max E_h` over codes of size `M` with all distances
/// in `[d, D]`; `None` when no such code exists.
pub fn exhaustive_energy_extrema(
    space: &HammingSpace,
    m: usize,
    d: u32,
    dmax: u32,
    h: &Potential,
    limits: Limits,
    bits: u32,
) -> Result<Option<EnergyExtrema>> {
    let max_m = limits.max_m;
    if d < 1 || d > dmax || dmax > space.n() {
        return Err(BoundError::InvalidParams(format!("need 1 ≤ d ≤ D ≤ n, got d = {d}, D = {dmax}, n = {}", space.n())));
    }
    if m < 2 || m > max_m {
        return Err(BoundError::Budget(format!("M = {m} must lie in [2, {max_m}]")));
    }
    let total = check_budget(space, limits.space)?;
    let (n, q) = (space.n(), space.q());
    let words: Vec<Vec<u8>> = (0..total).map(|i| word_of_index(n, q, i)).collect();
    let graph = Graph::new(&words, d as usize, dmax as usize);
    let weight = |i: usize| words[i].iter().filter(|&&c| c != 0).count();
    let mut search = Search { graph: &graph, words: &words, found: HashMap::new(), nodes: 0 };
    for w in d as usize..=dmax as usize {
        let x: Vec<u8> = (0..n as usize).map(|i| u8::from(i < w)).collect();
        let xi = index_of_word(q, &x);
        let mut cand = graph.adj[0].clone();
        cand.intersect_with(&graph.adj[xi]);
        for v in cand.clone().ones() {
            if weight(v) < w {
                cand.set(v, false);
            }
        }
        let mut counts = vec![0u64; n as usize + 1];
        counts[0] = m as u64;
        counts[w] += 2;
        search.recurse(&mut vec![0, xi], &mut counts, &cand, m - 2)?;
    }
    if search.found.is_empty() {
        return Ok(None);
    }
    let mut evaluated: Vec<(Interval, &Vec<usize>)> = Vec::with_capacity(search.found.len());
    for (counts, witness) in &search.found {
        evaluated.push((energy_of_pair_counts(space, counts, h, bits)?, witness));
    }
    // Deterministic choice among equal energies: the least witness.
    let min = evaluated.iter().min_by(|a, b| a.0.lo.cmp(&b.0.lo).then_with(|| sorted(a.1).cmp(&sorted(b.1)))).expect("nonempty");
    let max = evaluated.iter().max_by(|a, b| a.0.hi.cmp(&b.0.hi).then_with(|| sorted(b.1).cmp(&sorted(a.1)))).expect("nonempty");
    Ok(Some(EnergyExtrema {
        m,
        d,
        dmax,
        potential: h.descriptor(),
        min: min.0.clone(),
        max: max.0.clone(),
        min_witness: Code::from_indices(n, q, min.1)?,
        max_witness: Code::from_indices(n, q, max.1)?,
        distributions: search.found.len(),
    }))
}

fn sorted(v: &[usize]) -> Vec<usize> {
    let mut v = v.to_vec();
    v.sort_unstable();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::int;

    fn exp1() -> Potential {
        Potential::exponential(int(1)).unwrap()
    }

    #[test]
    fn two_points_at_fixed_distance() {
        let space = HammingSpace::new(5, 2).unwrap();
        let r = exhaustive_energy_extrema(&space, 2, 3, 3, &exp1(), Limits::default(), 160).unwrap().unwrap();
        assert_eq!(r.min, r.max);
        let t = space.inner_of_distance(3);
        assert!(r.min.intersects(&exp1().eval(5, &Interval::point(t), 160).unwrap().mul_scalar(&int(2))));
        assert_eq!(r.distributions, 1);
    }

    #[test]
    fn even_weight_code_is_the_unique_16_point_code() {
        let space = HammingSpace::new(5, 2).unwrap();
        let r = exhaustive_energy_extrema(&space, 16, 2, 4, &exp1(), Limits::default(), 160).unwrap().unwrap();
        assert_eq!(r.distributions, 1);
        let e = Code::even_weight(5).unwrap().energy(&exp1(), 160).unwrap();
        assert!(r.min.intersects(&e) && r.max.intersects(&e));
    }

    #[test]
    fn infeasible_is_explicit() {
        let space = HammingSpace::new(4, 2).unwrap();
        assert_eq!(exhaustive_energy_extrema(&space, 5, 2, 2, &exp1(), Limits::default(), 160).unwrap(), None);
    }

    #[test]
    fn matches_unreduced_enumeration() {
        // Compare with a plain enumeration of all 4-subsets of F_2^4.
        let space = HammingSpace::new(4, 2).unwrap();
        let h = exp1();
        let r = exhaustive_energy_extrema(&space, 4, 1, 3, &h, Limits::default(), 160).unwrap().unwrap();
        let mut lo: Option<Interval> = None;
        let mut hi: Option<Interval> = None;
        for mask in 0u32..(1 << 16) {
            if mask.count_ones() != 4 {
                continue;
            }
            let idx: Vec<usize> = (0..16).filter(|i| mask >> i & 1 == 1).collect();
            let c = Code::from_indices(4, 2, &idx).unwrap();
            if !c.within(1, 3) {
                continue;
            }
            let e = c.energy(&h, 160).unwrap();
            if lo.as_ref().is_none_or(|l| e.lo < l.lo) {
                lo = Some(e.clone());
            }
            if hi.as_ref().is_none_or(|x| e.hi > x.hi) {
                hi = Some(e);
            }
        }
        assert!(r.min.intersects(&lo.unwrap()));
        assert!(r.max.intersects(&hi.unwrap()));
    }
}
