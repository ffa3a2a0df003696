//! Exact maximum codes by clique search.
//!
//! Vertices are the words of `F_q^n`; two words are adjacent when their
//! distance lies in `[d, D]`.  Translations are isometries, so some maximum
//! code contains the zero word, and the lexicographically least maximum
//! code starts with it.  The search is branch and bound with a greedy
//! colouring bound.

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use super::code::{distance, space_size, word_of_index, Code};
use crate::error::{BoundError, Result};
use crate::krawtchouk::HammingSpace;

/// Default limit on `q^n` for exhaustive searches.
pub const DEFAULT_BUDGET: usize = 4096;

/// Exact `A_q(n, d, D)` with its lexicographically least witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaxCode {
    pub d: u32,
    pub dmax: u32,
    pub size: usize,
    pub witness: Code,
}

/// Adjacency structure on a vertex subset.
pub(crate) struct Graph {
    pub adj: Vec<FixedBitSet>,
}

impl Graph {
    pub(crate) fn new(words: &[Vec<u8>], d: usize, dmax: usize) -> Self {
        let m = words.len();
        let mut adj = vec![FixedBitSet::with_capacity(m); m];
        for a in 0..m {
            for b in a + 1..m {
                let dist = distance(&words[a], &words[b]);
                if dist >= d && dist <= dmax {
                    adj[a].insert(b);
                    adj[b].insert(a);
                }
            }
        }
        Graph { adj }
    }

    /// Greedy colouring of `p`: vertices in colour order with the running
    /// colour count, so `colors[i]` bounds the clique within `order[..=i]`.
    fn color_sort(&self, p: &FixedBitSet) -> (Vec<usize>, Vec<usize>) {
        let mut uncolored = p.clone();
        let mut order = Vec::with_capacity(p.count_ones(..));
        let mut colors = Vec::with_capacity(order.capacity());
        let mut color = 0;
        while !uncolored.is_clear() {
            color += 1;
            let mut q = uncolored.clone();
            while let Some(v) = q.ones().next() {
                uncolored.set(v, false);
                q.set(v, false);
                q.difference_with(&self.adj[v]);
                order.push(v);
                colors.push(color);
            }
        }
        (order, colors)
    }

    /// The larger of `floor` and the clique number of `p`; branches that
    /// cannot beat `floor` are pruned.
    pub(crate) fn max_clique_size(&self, p: &FixedBitSet, floor: usize) -> usize {
        let mut best = floor;
        self.expand(p.clone(), 0, &mut best);
        best
    }

    fn expand(&self, mut p: FixedBitSet, size: usize, best: &mut usize) {
        let (order, colors) = self.color_sort(&p);
        for idx in (0..order.len()).rev() {
            if size + colors[idx] <= *best {
                return;
            }
            let v = order[idx];
            let mut next = p.clone();
            next.intersect_with(&self.adj[v]);
            if next.is_clear() {
                if size + 1 > *best {
                    *best = size + 1;
                }
            } else {
                self.expand(next, size + 1, best);
            }
            p.set(v, false);
        }
    }

    /// Lexicographically least clique of size `target` inside `p`
    /// (vertices compared by index); `target` must be attainable.
    pub(crate) fn least_clique(&self, p: &FixedBitSet, target: usize) -> Vec<usize> {
        let mut chosen = Vec::new();
        let mut cand = p.clone();
        while chosen.len() < target {
            let need = target - chosen.len() - 1;
            let v = cand
                .ones()
                .find(|&v| {
                    let mut rest = cand.clone();
                    rest.intersect_with(&self.adj[v]);
                    rest.set_range(..v, false);
                    need == 0 || self.max_clique_size(&rest, need - 1) >= need
                })
                .expect("target clique size is attainable");
            chosen.push(v);
            cand.intersect_with(&self.adj[v]);
            cand.set_range(..v + 1, false);
        }
        chosen
    }
}

/// Checks `q^n` against the budget.
pub fn check_budget(space: &HammingSpace, budget: usize) -> Result<usize> {
    match space_size(space.n(), space.q()) {
        Some(total) if total <= budget => Ok(total),
        _ => Err(BoundError::Budget(format!("q^n = {}^{} exceeds the budget {budget}", space.q(), space.n()))),
    }
}

/// Exact maximum size of a code with all distances in `[d, D]`, with the
/// lexicographically least maximum code as witness.
pub fn exhaustive_max_code(space: &HammingSpace, d: u32, dmax: u32, budget: usize) -> Result<MaxCode> {
    if d < 1 || d > dmax || dmax > space.n() {
        return Err(BoundError::InvalidParams(format!("need 1 ≤ d ≤ D ≤ n, got d = {d}, D = {dmax}, n = {}", space.n())));
    }
    let total = check_budget(space, budget)?;
    let (n, q) = (space.n(), space.q());
    let words: Vec<Vec<u8>> = (0..total).map(|i| word_of_index(n, q, i)).collect();
    let graph = Graph::new(&words, d as usize, dmax as usize);
    // Neighbours of the zero word (index 0).
    let p = graph.adj[0].clone();
    let size = 1 + graph.max_clique_size(&p, 0);
    let mut witness = vec![0];
    witness.extend(graph.least_clique(&p, size - 1));
    Ok(MaxCode { d, dmax, size, witness: Code::from_indices(n, q, &witness)? })
}
