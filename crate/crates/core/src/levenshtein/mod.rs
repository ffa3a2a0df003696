//! Levenshtein-type upper bounds on code size for inner products in `[ℓ, s]`.

pub mod bound;
pub mod closed_forms;
pub mod params;
pub mod quadrature;
pub mod system;

pub use bound::{
    adjacent_1ells, cardinality_bound, levenshtein_polynomial, quadrature, select_k, BoundFlags, BoundReport, KSelection,
    LevenshteinInstance,
};
pub use params::ProblemParams;
pub use quadrature::{radau_rule_10, QuadratureRule, RadauRule10};
pub use system::{adjacent_1ell, krein_check, EllFlags, EllSystem, KreinReport};
