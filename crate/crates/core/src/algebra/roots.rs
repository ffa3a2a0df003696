//! Certified real-root isolation with Sturm sequences.
//!
//! Root counts are exact (sign variations of the Sturm chain at rational
//! points); refinement is plain bisection on sign changes, so every bracket
//! carries a checkable certificate.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::interval::Interval;
use super::poly::ExactPoly;
use super::scalar::{self, rat, Scalar};
use crate::error::BoundError;

/// Sturm chain of a squarefree polynomial.
#[derive(Clone, Debug)]
pub struct SturmSequence {
    chain: Vec<ExactPoly>,
}

fn variations(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for s in signs {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

impl SturmSequence {
    /// Builds the chain of the squarefree part of `p`.
    pub fn new(p: &ExactPoly) -> Self {
        let p0 = p.squarefree_part();
        let mut chain = vec![p0.clone()];
        if p0.degree().unwrap_or(0) == 0 {
            return SturmSequence { chain };
        }
        chain.push(p0.derivative().normalize_abs());
        loop {
            let len = chain.len();
            let (_, r) = chain[len - 2].divrem(&chain[len - 1]).expect("nonzero");
            if r.is_zero() {
                break;
            }
            chain.push((-&r).normalize_abs());
        }
        SturmSequence { chain }
    }

    /// The squarefree polynomial the chain was built from.
    pub fn base(&self) -> &ExactPoly {
        &self.chain[0]
    }

    /// Sign variations at a rational point.
    pub fn variations_at(&self, x: &Scalar) -> usize {
        variations(self.chain.iter().map(|p| scalar::sign(&p.eval(x))))
    }

    fn variations_at_infinity(&self, positive: bool) -> usize {
        variations(self.chain.iter().map(|p| {
            let s = scalar::sign(&p.leading());
            let deg = p.degree().unwrap_or(0);
            if positive || deg % 2 == 0 {
                s
            } else {
                -s
            }
        }))
    }

    /// Number of distinct real roots in the half-open interval `(a, b]`.
    pub fn count_in(&self, a: &Scalar, b: &Scalar) -> usize {
        if a >= b {
            return 0;
        }
        self.variations_at(a) - self.variations_at(b)
    }

    /// Number of distinct real roots in `(-∞, x]`.
    pub fn count_at_most(&self, x: &Scalar) -> usize {
        self.variations_at_infinity(false) - self.variations_at(x)
    }

    /// Number of distinct real roots in `(x, ∞)`.
    pub fn count_above(&self, x: &Scalar) -> usize {
        self.variations_at(x) - self.variations_at_infinity(true)
    }

    /// Total number of distinct real roots.
    pub fn count_real(&self) -> usize {
        self.variations_at_infinity(false) - self.variations_at_infinity(true)
    }
}

/// A certified enclosure of exactly one real root of a squarefree polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootBracket {
    /// Squarefree polynomial whose root is enclosed.
    pub poly: ExactPoly,
    /// Enclosing interval; a point interval means the root is known exactly.
    pub interval: Interval,
    /// Sign of `poly` at `interval.lo` (0 only for exact roots).
    pub sign_lo: i8,
    /// Sign of `poly` at `interval.hi` (0 only for exact roots).
    pub sign_hi: i8,
}

impl RootBracket {
    /// Bracket for a root known exactly.
    pub fn exact(poly: ExactPoly, x: Scalar) -> Self {
        RootBracket { poly, interval: Interval::point(x), sign_lo: 0, sign_hi: 0 }
    }

    pub fn is_exact(&self) -> bool {
        self.interval.is_point()
    }

    /// Re-checks the certificate: a sign change between the endpoints (or an
    /// exact zero) together with a Sturm count of one.
    pub fn verify(&self) -> bool {
        if let Some(x) = self.interval.exact() {
            return self.poly.eval(x).is_zero();
        }
        let sl = scalar::sign(&self.poly.eval(&self.interval.lo));
        let sh = scalar::sign(&self.poly.eval(&self.interval.hi));
        if sl != self.sign_lo || sh != self.sign_hi || sl == 0 || sh == 0 || sl == sh {
            return false;
        }
        SturmSequence::new(&self.poly).count_in(&self.interval.lo, &self.interval.hi) == 1
    }

    /// Bisects until the width is at most `2^-prec` (or the root is hit exactly).
    pub fn refine(&mut self, prec: u32) {
        let target = Scalar::new(One::one(), num_bigint::BigInt::one() << prec);
        while !self.is_exact() && self.interval.width() > target {
            let m = self.interval.mid();
            let sm = scalar::sign(&self.poly.eval(&m));
            if sm == 0 {
                *self = RootBracket::exact(self.poly.clone(), m);
                return;
            }
            if sm == self.sign_lo {
                self.interval.lo = m;
            } else {
                self.interval.hi = m;
            }
        }
    }

    /// Replaces the bracket by an exact root when one of the candidate
    /// rationals lies inside and is a zero of the polynomial.
    pub fn snap_to(&mut self, candidates: &[Scalar]) {
        if self.is_exact() {
            return;
        }
        for c in candidates {
            if self.interval.contains(c) && self.poly.eval(c).is_zero() {
                *self = RootBracket::exact(self.poly.clone(), c.clone());
                return;
            }
        }
    }
}

/// Isolates every real root of `p` in the open interval `(lo, hi)` and refines
/// each bracket to width `≤ 2^-prec`.  The brackets are sorted increasingly.
///
/// Errors when the squarefree part of `p` vanishes at `lo` or `hi`.
pub fn isolate_roots(p: &ExactPoly, lo: &Scalar, hi: &Scalar, prec: u32) -> Result<Vec<RootBracket>, BoundError> {
    if p.is_zero() {
        return Err(BoundError::InvalidParams("cannot isolate roots of the zero polynomial".into()));
    }
    if lo >= hi {
        return Err(BoundError::InvalidParams("empty search interval".into()));
    }
    let sturm = SturmSequence::new(p);
    let base = sturm.base().clone();
    if base.eval(lo).is_zero() {
        return Err(BoundError::Degenerate(format!("polynomial has a root at the boundary {lo}")));
    }
    if base.eval(hi).is_zero() {
        return Err(BoundError::Degenerate(format!("polynomial has a root at the boundary {hi}")));
    }
    let mut out = Vec::new();
    let mut stack = vec![(lo.clone(), hi.clone(), sturm.count_in(lo, hi))];
    while let Some((a, b, count)) = stack.pop() {
        match count {
            0 => {}
            1 => {
                let mut br = RootBracket {
                    poly: base.clone(),
                    sign_lo: scalar::sign(&base.eval(&a)),
                    sign_hi: scalar::sign(&base.eval(&b)),
                    interval: Interval::new(a, b),
                };
                br.refine(prec);
                out.push(br);
            }
            _ => {
                // Split away from roots so every endpoint stays a non-root.
                let mut m = (&a + &b) / scalar::int(2);
                let mut j = 3u32;
                while base.eval(&m).is_zero() {
                    m = &a + (&b - &a) * (rat(1, 2) + Scalar::new(One::one(), num_bigint::BigInt::one() << j));
                    j += 1;
                }
                let left = sturm.count_in(&a, &m);
                stack.push((m.clone(), b, count - left));
                stack.push((a, m, left));
            }
        }
    }
    out.sort_by(|x, y| x.interval.lo.cmp(&y.interval.lo));
    Ok(out)
}

/// Largest real root of `p` inside `(lo, hi)`, if any.
pub fn largest_root(p: &ExactPoly, lo: &Scalar, hi: &Scalar, prec: u32) -> Result<Option<RootBracket>, BoundError> {
    Ok(isolate_roots(p, lo, hi, prec)?.pop())
}

/// Certified strict comparison of two roots: refines both brackets (up to
/// `max_prec` bits) until they separate.  Returns `None` when the roots
/// coincide exactly or cannot be separated.
pub fn compare_roots(a: &mut RootBracket, b: &mut RootBracket, start_prec: u32, max_prec: u32) -> Option<std::cmp::Ordering> {
    let mut prec = start_prec;
    loop {
        a.refine(prec);
        b.refine(prec);
        if let Some(o) = a.interval.certified_cmp(&b.interval) {
            return Some(o);
        }
        if a.is_exact() && b.is_exact() {
            return None;
        }
        if prec >= max_prec {
            return None;
        }
        prec = (prec * 2).min(max_prec);
    }
}

/// Sign of `p` at every point of the bracket; `None` when it changes or vanishes.
pub fn sign_on(p: &ExactPoly, x: &Interval, bits: u32) -> Option<i8> {
    let v = super::interval::eval_poly_tight(p, x, bits);
    if v.is_positive() {
        Some(1)
    } else if v.is_negative() {
        Some(-1)
    } else if v.is_point() && v.lo.is_zero() {
        Some(0)
    } else {
        None
    }
}

/// True when `x` is a zero of `p`.
pub fn is_root(p: &ExactPoly, x: &Scalar) -> bool {
    p.eval(x).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::int;

    #[test]
    fn isolates_two_simple_roots() {
        let p = ExactPoly::new(vec![rat(-1, 4), int(0), int(1)]);
        let roots = isolate_roots(&p, &int(-1), &int(1), 10).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots[0].interval.contains(&rat(-1, 2)));
        assert!(roots[1].interval.contains(&rat(1, 2)));
        for r in &roots {
            assert!(r.verify());
            assert!(r.interval.width_at_most_pow2(10));
        }
    }

    #[test]
    fn boundary_root_is_reported() {
        let p = ExactPoly::from_ints(&[-1, 0, 1]);
        assert!(matches!(isolate_roots(&p, &int(-1), &int(2), 10), Err(BoundError::Degenerate(_))));
    }

    #[test]
    fn repeated_roots_are_counted_once() {
        let p = ExactPoly::from_roots(&[rat(1, 3), rat(1, 3), rat(-2, 3)]);
        let s = SturmSequence::new(&p);
        assert_eq!(s.count_real(), 2);
        assert_eq!(s.count_at_most(&rat(1, 3)), 2);
        assert_eq!(s.count_above(&rat(1, 3)), 0);
        let roots = isolate_roots(&p, &int(-1), &int(1), 40).unwrap();
        assert_eq!(roots.len(), 2);
    }

    #[test]
    fn close_roots_are_separated() {
        let p = ExactPoly::from_roots(&[rat(1, 1000), rat(2, 1000), rat(3, 1000)]);
        let roots = isolate_roots(&p, &int(-1), &int(1), 64).unwrap();
        assert_eq!(roots.len(), 3);
        let mut roots = roots;
        for r in roots.iter_mut() {
            r.snap_to(&[rat(1, 1000), rat(2, 1000), rat(3, 1000)]);
            assert!(r.is_exact());
        }
    }
}
