//! Explicit codes in `F_q^n`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::algebra::interval::Interval;
use crate::algebra::scalar::Scalar;
use crate::energy::Potential;
use crate::error::{BoundError, Result};
use crate::krawtchouk::HammingSpace;

/// A set of words, stored sorted and without repetitions.  Words are
/// indexed by their base-`q` value with the first coordinate most
/// significant, so sorting indices sorts words lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Code {
    pub n: u32,
    pub q: u32,
    pub words: Vec<Vec<u8>>,
}

/// Hamming distance of two words.
pub fn distance(x: &[u8], y: &[u8]) -> usize {
    x.iter().zip(y).filter(|(a, b)| a != b).count()
}

/// Word with the given base-`q` index.
pub fn word_of_index(n: u32, q: u32, mut index: usize) -> Vec<u8> {
    let mut w = vec![0u8; n as usize];
    for c in w.iter_mut().rev() {
        *c = (index % q as usize) as u8;
        index /= q as usize;
    }
    w
}

/// Base-`q` index of a word.
pub fn index_of_word(q: u32, w: &[u8]) -> usize {
    w.iter().fold(0, |acc, &c| acc * q as usize + c as usize)
}

/// `q^n`, or `None` when it does not fit in `usize`.
pub fn space_size(n: u32, q: u32) -> Option<usize> {
    (q as usize).checked_pow(n)
}

impl Code {
    /// Validates the alphabet and length of every word; sorts and dedups.
    pub fn new(n: u32, q: u32, mut words: Vec<Vec<u8>>) -> Result<Self> {
        if q < 2 || q > 256 || n < 1 {
            return Err(BoundError::InvalidParams(format!("unsupported code parameters n = {n}, q = {q}")));
        }
        for w in &words {
            if w.len() != n as usize || w.iter().any(|&c| c as u32 >= q) {
                return Err(BoundError::InvalidParams(format!("word {w:?} is not in F_{q}^{n}")));
            }
        }
        words.sort();
        words.dedup();
        Ok(Code { n, q, words })
    }

    pub fn from_indices(n: u32, q: u32, indices: &[usize]) -> Result<Self> {
        Code::new(n, q, indices.iter().map(|&i| word_of_index(n, q, i)).collect())
    }

    /// Every word of `F_q^n`.
    pub fn whole_space(n: u32, q: u32) -> Result<Self> {
        let total = space_size(n, q).ok_or_else(|| BoundError::Budget("q^n overflows".into()))?;
        Code::from_indices(n, q, &(0..total).collect::<Vec<_>>())
    }

    /// The binary words of even weight.
    pub fn even_weight(n: u32) -> Result<Self> {
        let total = space_size(n, 2).ok_or_else(|| BoundError::Budget("2^n overflows".into()))?;
        let idx: Vec<usize> = (0..total).filter(|i| i.count_ones() % 2 == 0).collect();
        Code::from_indices(n, 2, &idx)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn space(&self) -> Result<HammingSpace> {
        HammingSpace::new(self.n, self.q)
    }

    /// `P_i`: the number of ordered pairs of codewords at distance `i`.
    pub fn pair_counts(&self) -> Vec<u64> {
        let mut counts = vec![0u64; self.n as usize + 1];
        for (a, x) in self.words.iter().enumerate() {
            counts[0] += 1;
            for y in &self.words[a + 1..] {
                counts[distance(x, y)] += 2;
            }
        }
        counts
    }

    /// Average distance distribution `B_i = P_i / |C|`.
    pub fn distance_distribution(&self) -> Vec<Scalar> {
        let m = BigInt::from(self.len());
        self.pair_counts().into_iter().map(|c| Scalar::new(BigInt::from(c), m.clone())).collect()
    }

    /// Minimum and maximum distance between distinct codewords.
    pub fn distance_range(&self) -> Option<(usize, usize)> {
        let counts = self.pair_counts();
        let lo = (1..counts.len()).find(|&i| counts[i] > 0)?;
        let hi = (1..counts.len()).rev().find(|&i| counts[i] > 0)?;
        Some((lo, hi))
    }

    /// Inner products of distinct pairs lie in `[ℓ, s]`, i.e. distances in `[d, D]`.
    pub fn within(&self, d: usize, dmax: usize) -> bool {
        self.distance_range().is_none_or(|(lo, hi)| lo >= d && hi <= dmax)
    }

    /// `E_h(C) = Σ_{x ≠ y} h(⟨x, y⟩)` over ordered pairs.
    pub fn energy(&self, h: &Potential, bits: u32) -> Result<Interval> {
        let space = self.space()?;
        energy_of_pair_counts(&space, &self.pair_counts(), h, bits)
    }
}

/// Energy from ordered pair counts by distance.
pub fn energy_of_pair_counts(space: &HammingSpace, counts: &[u64], h: &Potential, bits: u32) -> Result<Interval> {
    let values = h.grid_values(space, bits)?;
    let n = space.n() as usize;
    let mut acc = Interval::zero();
    for (i, &c) in counts.iter().enumerate().skip(1) {
        if c > 0 {
            let v = values[n - i].as_ref().ok_or_else(|| BoundError::Potential("potential undefined at a code inner product".into()))?;
            acc = acc.add(&v.mul_scalar(&Scalar::from(BigInt::from(c)))).round_outward(bits);
        }
    }
    Ok(acc)
}

impl fmt::Display for Code {
    /// One word per line, symbols as base-36 digits.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for w in &self.words {
            let line: String = w.iter().map(|&c| std::char::from_digit(c as u32, 36).expect("q ≤ 36")).collect();
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

impl Code {
    /// Parses one word per line (blank lines ignored).
    pub fn parse(q: u32, text: &str) -> Result<Self> {
        let words: Vec<Vec<u8>> = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(|l| {
                l.chars()
                    .map(|c| c.to_digit(36).map(|d| d as u8).ok_or_else(|| BoundError::InvalidParams(format!("bad symbol {c:?}"))))
                    .collect::<Result<Vec<u8>>>()
            })
            .collect::<Result<_>>()?;
        let n = words.first().map(|w| w.len() as u32).ok_or_else(|| BoundError::InvalidParams("empty code".into()))?;
        Code::new(n, q, words)
    }
}

impl FromStr for Code {
    type Err = BoundError;

    /// Binary code, one word per line.
    fn from_str(s: &str) -> Result<Self> {
        Code::parse(2, s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::int;

    #[test]
    fn indices_round_trip() {
        for i in 0..81 {
            assert_eq!(index_of_word(3, &word_of_index(4, 3, i)), i);
        }
        assert_eq!(word_of_index(3, 2, 6), vec![1, 1, 0]);
    }

    #[test]
    fn even_weight_distribution() {
        let c = Code::even_weight(5).unwrap();
        assert_eq!(c.len(), 16);
        assert_eq!(c.distance_range(), Some((2, 4)));
        assert_eq!(c.distance_distribution(), vec![int(1), int(0), int(10), int(0), int(5), int(0)]);
    }

    #[test]
    fn text_round_trip() {
        let c = Code::new(4, 3, vec![vec![0, 1, 2, 0], vec![2, 2, 1, 0]]).unwrap();
        assert_eq!(Code::parse(3, &c.to_string()).unwrap(), c);
        assert!(Code::parse(2, "012\n").is_err());
    }
}
