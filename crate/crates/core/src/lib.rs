//! Resonant Casimir–Polder shift of a driven two-level atom near a
//! non-dispersive dielectric half-space.

pub mod error;
pub mod integrands;
pub mod optics;
pub mod potential;
pub mod quadrature;
pub mod units;

pub use error::{Error, Result};
pub use potential::{
    pc_asymptotic, pc_decompose, pc_shift, shift_general, shift_parallel_dielectric, PcDecomposition, PcPart,
    Regime, ShiftResult,
};
pub use quadrature::{QuadratureResult, QuadratureSettings};
pub use units::{AtomModel, DriveField, Excitation, Medium, Scenario};
