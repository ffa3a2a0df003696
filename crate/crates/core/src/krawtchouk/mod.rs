//! Krawtchouk polynomials, the adjacent families built from them, and the
//! measures they are orthogonal under.

pub mod families;
pub mod space;

pub use families::{
    adjacent_family, gram_schmidt, kernel_family, krawtchouk_family, one_one_family, one_zero_family, signed_measure,
    AdjacentTag, FamilyTag, OrthoFamily, Recurrence, SignedKind,
};
pub use space::HammingSpace;
