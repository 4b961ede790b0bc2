use crate::optics::Polarization;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// The drive frequency sits exactly on the atomic transition.
    #[error("drive frequency {omega_l:e} rad/s is resonant with the transition at {omega0:e} rad/s")]
    ResonantDrive { omega0: f64, omega_l: f64 },

    #[error("invalid {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    /// `k_z + k_z^d` (or the TM analogue) vanished; grazing or branch-point input.
    #[error("{polarization:?} reflection denominator vanishes at k_z = {kz}, k_par = {kpar}")]
    DegenerateDenominator {
        polarization: Polarization,
        kz: num_complex::Complex64,
        kpar: f64,
    },

    #[error("quadrature error estimate {estimate:e} above target {target:e} after {panels} panels")]
    ToleranceNotMet {
        estimate: f64,
        target: f64,
        panels: usize,
    },

    #[error("integrand is not finite at {at}")]
    NonFiniteIntegrand { at: f64 },

    #[error("integrand does not decay beyond kappa = {kappa_max:e}")]
    NonDecayingIntegrand { kappa_max: f64 },

    #[error("operation requires field and dipole both along x: {0}")]
    NotParallel(&'static str),

    #[error("exact intensity needs the drive photon number; drive was given as a classical intensity")]
    MissingPhotonNumber,
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
