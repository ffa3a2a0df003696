//! Error type shared by all modules.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// The validity condition that failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Condition {
    /// `Q_{k+1}^{1,0}(ℓ) / Q_k^{1,0}(ℓ) < 1`.
    EllCondition,
    /// `ℓ` lies left of the smallest zero of `Q_k^{1,0}`.
    EllLocation,
    /// `t_{k,k}^{1,0} < s ≤ t_{k,k}^{1,ℓ}`.
    SLocation,
    /// `Q_k^{1,ℓ}(s)/Q_{k-1}^{1,ℓ}(s) > Q_k^{1,ℓ}(ℓ)/Q_{k-1}^{1,ℓ}(ℓ)`.
    SCondition,
    /// Normalising constant of a signed measure is not positive.
    LsRange,
    /// A quadrature node or weight violates its certified location/sign.
    Quadrature,
    /// The certificate polynomial is not in the positive cone.
    LpFeasibility,
}

impl std::fmt::Display for Condition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Condition::EllCondition => "ell-condition",
            Condition::EllLocation => "ell-location",
            Condition::SLocation => "s-location",
            Condition::SCondition => "s-condition",
            Condition::LsRange => "l-s-range",
            Condition::Quadrature => "quadrature",
            Condition::LpFeasibility => "lp-feasibility",
        };
        f.write_str(s)
    }
}

/// Errors raised by the bound computations.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum BoundError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("{condition} violated: {detail}")]
    ConditionViolated { condition: Condition, detail: String },
    #[error("degenerate boundary case: {0}")]
    Degenerate(String),
    #[error("strengthened Krein condition fails for index pairs {pairs:?}")]
    KreinFailed { pairs: Vec<(usize, usize)> },
    #[error("no valid k in 1..={k_max}")]
    NoValidK { k_max: usize },
    #[error("cardinality {m} is outside the attainable range {ranges}")]
    OutOfRange { m: String, ranges: String },
    #[error("precision exhausted: {0}")]
    Precision(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("potential error: {0}")]
    Potential(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("division by the zero polynomial")]
    DivisionByZero,
}

impl BoundError {
    pub(crate) fn violated(condition: Condition, detail: impl Into<String>) -> Self {
        BoundError::ConditionViolated { condition, detail: detail.into() }
    }

    /// Process exit code used by the command-line front end:
    /// 2 bad parameters, 3 no valid k, 4 internal inconsistency.
    pub fn exit_code(&self) -> i32 {
        match self {
            BoundError::NoValidK { .. } => 3,
            BoundError::Precision(_) | BoundError::Inconsistent(_) => 4,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, BoundError>;
