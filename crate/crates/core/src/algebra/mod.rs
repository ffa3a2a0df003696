//! Exact rational arithmetic, polynomials, intervals, root isolation and
//! discrete measures: the substrate every other module builds on.

pub mod interval;
pub mod measure;
pub mod poly;
pub mod roots;
pub mod scalar;
pub mod transcendental;

pub use interval::{CertifiedValue, Interval};
pub use measure::{check_positive_definite, DefinitenessCertificate, DiscreteMeasure};
pub use poly::ExactPoly;
pub use roots::{isolate_roots, RootBracket, SturmSequence};
pub use scalar::{rat, Scalar};
