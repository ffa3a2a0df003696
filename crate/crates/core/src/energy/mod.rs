//! Potentials, Hermite interpolation and universal energy bounds.

pub mod bounds;
pub mod hermite;
pub mod potential;

pub use bounds::{
    cardinality_rule, energy_lower_bound, energy_lower_bound_at_k, energy_strip, energy_upper_bound, energy_upper_bound_with, EnergyFlags,
    EnergyReport, EnergyStrip, UpperOptions,
};
pub use hermite::{hermite_interpolant, HermiteInterpolant, HermiteNode};
pub use potential::{Potential, PotentialSpec};
