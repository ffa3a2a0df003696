//! Brute-force ground truth at desk scale: exact maximum codes, exact
//! energy extrema, design strength and MacWilliams transforms.

pub mod clique;
pub mod code;
pub mod design;
pub mod extrema;

pub use clique::{exhaustive_max_code, MaxCode, DEFAULT_BUDGET};
pub use code::Code;
pub use design::{design_strength, macwilliams, MacWilliamsVector};
pub use extrema::{exhaustive_energy_extrema, EnergyExtrema, Limits};
