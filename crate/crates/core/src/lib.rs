//! Levenshtein-type bounds for codes in Hamming spaces.
//!
//! The crate computes, with exact rational arithmetic and certified
//! intervals:
//!
//! * upper bounds `L_{2k}(n, ℓ, s)` on the size of a code in `F_q^n` whose
//!   pairwise inner products `1 - 2d(x,y)/n` lie in `[ℓ, s]`;
//! * universal lower and upper bounds on the potential energy of such codes;
//! * diagnostics: distance distributions of attaining codes, optimality
//!   test functions, improving polynomials and grid refinements;
//! * a brute-force oracle (maximum cliques, energy extrema, design strength)
//!   for validating everything at desk scale.

pub mod algebra;
pub mod diagnostics;
pub mod energy;
pub mod error;
pub mod krawtchouk;
pub mod levenshtein;
pub mod oracle;
pub mod serde_util;

pub use error::{BoundError, Condition, Result};
