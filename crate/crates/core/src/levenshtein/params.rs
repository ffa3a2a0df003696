//! Problem instances `(n, q, ℓ, s, k)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::algebra::scalar::Scalar;
use crate::error::{BoundError, Result};
use crate::krawtchouk::HammingSpace;

/// A bound problem: codes in `F_q^n` with inner products in `[ℓ, s]`
/// (distances in `[d, D]`), analysed with polynomials of degree `2k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "ParamsRecord", try_from = "ParamsRecord")]
pub struct ProblemParams {
    pub space: HammingSpace,
    pub ell: Scalar,
    pub s: Scalar,
    pub k: usize,
    /// Minimum distance `d = n(1-s)/2`.
    pub d: u32,
    /// Maximum distance `D = n(1-ℓ)/2`.
    pub dmax: u32,
}

/// Serialized form of [`ProblemParams`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ParamsRecord {
    pub n: u32,
    pub q: u32,
    pub d: u32,
    #[serde(rename = "D")]
    pub dmax: u32,
    pub k: usize,
    #[serde(with = "crate::serde_util::rational")]
    pub ell: Scalar,
    #[serde(with = "crate::serde_util::rational")]
    pub s: Scalar,
}

impl From<ProblemParams> for ParamsRecord {
    fn from(p: ProblemParams) -> Self {
        ParamsRecord { n: p.space.n(), q: p.space.q(), d: p.d, dmax: p.dmax, k: p.k, ell: p.ell, s: p.s }
    }
}

impl TryFrom<ParamsRecord> for ProblemParams {
    type Error = BoundError;
    fn try_from(r: ParamsRecord) -> Result<Self> {
        let p = ProblemParams::from_distances(r.n, r.q, r.d, r.dmax, r.k)?;
        if p.ell != r.ell || p.s != r.s {
            return Err(BoundError::InvalidParams("inner products disagree with distances".into()));
        }
        Ok(p)
    }
}

impl ProblemParams {
    /// Instance from distances: `ℓ = 1 - 2D/n`, `s = 1 - 2d/n`.
    pub fn from_distances(n: u32, q: u32, d: u32, dmax: u32, k: usize) -> Result<Self> {
        let space = HammingSpace::new(n, q)?;
        Self::with_space_distances(space, d, dmax, k)
    }

    /// Same as [`Self::from_distances`] on an existing space.
    pub fn with_space_distances(space: HammingSpace, d: u32, dmax: u32, k: usize) -> Result<Self> {
        let n = space.n();
        if d < 1 || d > n {
            return Err(BoundError::InvalidParams(format!("minimum distance d = {d} must lie in [1, {n}]")));
        }
        if dmax < 1 || dmax > n {
            return Err(BoundError::InvalidParams(format!("maximum distance D = {dmax} must lie in [1, {n}]")));
        }
        if d >= dmax {
            return Err(BoundError::InvalidParams(format!("need d < D, got d = {d}, D = {dmax}")));
        }
        if k < 1 {
            return Err(BoundError::InvalidParams("k must be at least 1".into()));
        }
        let ell = space.inner_of_distance(dmax);
        let s = space.inner_of_distance(d);
        Ok(ProblemParams { space, ell, s, k, d, dmax })
    }

    /// Instance from inner products, which must lie on the grid `T_n`.
    pub fn from_inner(space: HammingSpace, ell: Scalar, s: Scalar, k: usize) -> Result<Self> {
        let dmax = space
            .distance_of_inner(&ell)
            .ok_or_else(|| BoundError::InvalidParams(format!("ℓ = {ell} is not on the grid T_n")))?;
        let d = space
            .distance_of_inner(&s)
            .ok_or_else(|| BoundError::InvalidParams(format!("s = {s} is not on the grid T_n")))?;
        Self::with_space_distances(space, d, dmax, k)
    }

    /// Same instance with a different `k`.
    pub fn with_k(&self, k: usize) -> Self {
        ProblemParams { k, ..self.clone() }
    }

    pub fn n(&self) -> u32 {
        self.space.n()
    }

    pub fn q(&self) -> u32 {
        self.space.q()
    }
}

/// `ℓ = 1 - 2D/n` for a distance `D` (no range checks).
pub fn inner_from_distance(n: u32, dist: u32) -> Scalar {
    Scalar::one() - BigRational::new(BigInt::from(2 * dist), BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::rat;

    #[test]
    fn distances_and_inner_products_convert_exactly() {
        let p = ProblemParams::from_distances(23, 2, 8, 16, 2).unwrap();
        assert_eq!(p.ell, rat(-9, 23));
        assert_eq!(p.s, rat(7, 23));
        let back = ProblemParams::from_inner(p.space.clone(), p.ell.clone(), p.s.clone(), 2).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn invalid_distances_rejected() {
        assert!(ProblemParams::from_distances(6, 2, 7, 6, 1).is_err());
        assert!(ProblemParams::from_distances(6, 2, 3, 3, 1).is_err());
        assert!(ProblemParams::from_distances(6, 2, 0, 3, 1).is_err());
        let s = HammingSpace::new(6, 2).unwrap();
        assert!(ProblemParams::from_inner(s, rat(-1, 5), rat(1, 3), 1).is_err());
    }
}
