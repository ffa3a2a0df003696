//! Finitely supported (possibly signed) measures with exact weights.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::poly::ExactPoly;
use super::scalar::Scalar;
use crate::error::BoundError;

/// Measure `normalization · Σ weight_i δ_{node_i}` with sorted distinct nodes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscreteMeasure {
    #[serde(with = "crate::serde_util::rational_pairs")]
    support: Vec<(Scalar, Scalar)>,
    #[serde(with = "crate::serde_util::rational")]
    normalization: Scalar,
}

impl DiscreteMeasure {
    /// Validates that nodes are strictly increasing.
    pub fn new(support: Vec<(Scalar, Scalar)>, normalization: Scalar) -> Result<Self, BoundError> {
        if support.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(BoundError::InvalidParams("measure nodes must be strictly increasing".into()));
        }
        Ok(DiscreteMeasure { support, normalization })
    }

    pub fn support(&self) -> &[(Scalar, Scalar)] {
        &self.support
    }

    pub fn normalization(&self) -> &Scalar {
        &self.normalization
    }

    /// Effective weight (normalization included) at support index `i`.
    pub fn weight(&self, i: usize) -> Scalar {
        &self.normalization * &self.support[i].1
    }

    /// Exact integral `∫ p dm`.
    pub fn integrate(&self, p: &ExactPoly) -> Scalar {
        self.integrate_with(|x| p.eval(x))
    }

    /// Exact integral of an arbitrary rational-valued function of the node.
    pub fn integrate_with(&self, f: impl Fn(&Scalar) -> Scalar) -> Scalar {
        let s = self
            .support
            .iter()
            .fold(Scalar::zero(), |acc, (x, w)| if w.is_zero() { acc } else { acc + w * f(x) });
        s * &self.normalization
    }

    pub fn total_mass(&self) -> Scalar {
        self.integrate(&ExactPoly::one())
    }

    /// The measure `normalization · density(t) · self`.
    pub fn with_density(&self, density: &ExactPoly, normalization: Scalar) -> DiscreteMeasure {
        let support = self
            .support
            .iter()
            .map(|(x, w)| (x.clone(), w * &self.normalization * density.eval(x)))
            .collect();
        DiscreteMeasure { support, normalization }
    }

    /// Moments `∫ t^j dm` for `j = 0..=max`.
    pub fn moments(&self, max: usize) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); max + 1];
        for (x, w) in &self.support {
            let mut pw = w * &self.normalization;
            for m in out.iter_mut() {
                *m += &pw;
                pw *= x;
            }
        }
        out
    }
}

/// Certificate of positive definiteness of the monomial Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DefinitenessCertificate {
    /// True when all leading principal minors are positive.
    pub positive_definite: bool,
    /// Pivots of the fraction-free elimination: ratios of consecutive leading
    /// principal minors (all positive iff positive definite).
    #[serde(with = "crate::serde_util::rational_vec")]
    pub pivots: Vec<Scalar>,
    /// First degree whose minor is non-positive, if any.
    pub failed_at: Option<usize>,
}

/// Decides exactly whether the Gram matrix of `1, t, …, t^degree` under `m`
/// is positive definite.
pub fn check_positive_definite(m: &DiscreteMeasure, degree: usize) -> DefinitenessCertificate {
    let mom = m.moments(2 * degree);
    let size = degree + 1;
    let mut a: Vec<Vec<Scalar>> = (0..size).map(|i| (0..size).map(|j| mom[i + j].clone()).collect()).collect();
    let mut pivots = Vec::new();
    for k in 0..size {
        let piv = a[k][k].clone();
        pivots.push(piv.clone());
        if !piv.is_positive() {
            return DefinitenessCertificate { positive_definite: false, pivots, failed_at: Some(k) };
        }
        for i in (k + 1)..size {
            let factor = &a[i][k] / &piv;
            if factor.is_zero() {
                continue;
            }
            for j in k..size {
                let sub = &factor * &a[k][j];
                a[i][j] -= sub;
            }
        }
    }
    DefinitenessCertificate { positive_definite: true, pivots, failed_at: None }
}

/// `∫ p² dm > 0` check for a single polynomial (used in property tests).
pub fn self_product_positive(m: &DiscreteMeasure, p: &ExactPoly) -> bool {
    m.integrate(&(p * p)).is_positive()
}

/// Unit total mass check.
pub fn is_probability(m: &DiscreteMeasure) -> bool {
    m.total_mass().is_one()
}
