//! Physical constants, the scenario data model, and the conversion between SI
//! and the internal natural units.
//!
//! Internally every quantity is expressed with ħ = c = ε₀ = 1 and the metre as
//! the unit of length. In that system frequencies become wave numbers (m⁻¹),
//! energies become m⁻¹, squared dipole moments become m², and the squared
//! drive mode amplitude becomes m⁻³.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Reduced Planck constant (J·s), CODATA 2018.
pub const HBAR: f64 = 1.054_571_817e-34;

/// Speed of light in vacuum (m/s), exact.
pub const C: f64 = 299_792_458.0;

/// Vacuum permittivity (F/m), CODATA 2018.
pub const EPSILON0: f64 = 8.854_187_812_8e-12;

/// Relative detuning |ω₀ − ω_L|/ω₀ below which a drive is flagged as near-resonant.
pub const RESONANCE_GUARD: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConstants {
    pub hbar: f64,
    pub c: f64,
    pub epsilon0: f64,
}

impl PhysicalConstants {
    pub const CODATA2018: PhysicalConstants = PhysicalConstants {
        hbar: HBAR,
        c: C,
        epsilon0: EPSILON0,
    };
}

fn check_nonneg3(name: &'static str, v: [f64; 3]) -> Result<()> {
    if v.iter().all(|x| x.is_finite() && *x >= 0.0) {
        Ok(())
    } else {
        Err(Error::invalid(name, format!("components must be finite and >= 0, got {v:?}")))
    }
}

fn check_positive(name: &'static str, x: f64) -> Result<()> {
    if x.is_finite() && x > 0.0 {
        Ok(())
    } else {
        Err(Error::invalid(name, format!("must be finite and > 0, got {x}")))
    }
}

/// Two-level atom with a diagonal dipole: only |d_x|², |d_y|², |d_z|² matter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AtomModel {
    omega0: f64,
    d2: [f64; 3],
}

impl AtomModel {
    /// `omega0` in rad/s, squared dipole components in C²·m².
    pub fn new(omega0: f64, d2: [f64; 3]) -> Result<Self> {
        check_positive("transition frequency", omega0)?;
        check_nonneg3("squared dipole", d2)?;
        Ok(AtomModel { omega0, d2 })
    }

    /// Same as [`AtomModel::new`] but takes the dipole components themselves (C·m).
    pub fn from_dipole(omega0: f64, d: [f64; 3]) -> Result<Self> {
        Self::new(omega0, d.map(|x| x * x))
    }

    pub fn omega0(&self) -> f64 {
        self.omega0
    }

    pub fn d2(&self) -> [f64; 3] {
        self.d2
    }

    /// |d_∥|² = |d_x|² + |d_y|².
    pub fn dpar2(&self) -> f64 {
        self.d2[0] + self.d2[1]
    }

    /// |d|².
    pub fn dtotal2(&self) -> f64 {
        self.d2.iter().sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Excitation {
    /// Fock state with N_L photons.
    Photons(u64),
    /// Classical drive of the given intensity (W/m²).
    ClassicalIntensity(f64),
}

/// Monochromatic drive mode.
///
/// For a Fock drive `amplitude2` holds the squared single-photon field
/// amplitude |g_i|² of each Cartesian component (V²/m²), so that the mean
/// squared field is Σ|g_i|²(2N_L+1). For a classical drive it holds the
/// relative polarization weights, normalized to unit sum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DriveField {
    omega_l: f64,
    excitation: Excitation,
    amplitude2: [f64; 3],
}

impl DriveField {
    pub fn fock(omega_l: f64, photons: u64, amplitude2: [f64; 3]) -> Result<Self> {
        check_positive("drive frequency", omega_l)?;
        check_nonneg3("squared drive amplitude", amplitude2)?;
        Ok(DriveField {
            omega_l,
            excitation: Excitation::Photons(photons),
            amplitude2,
        })
    }

    pub fn classical(omega_l: f64, intensity: f64, polarization2: [f64; 3]) -> Result<Self> {
        check_positive("drive frequency", omega_l)?;
        if !(intensity.is_finite() && intensity >= 0.0) {
            return Err(Error::invalid("intensity", format!("must be finite and >= 0, got {intensity}")));
        }
        check_nonneg3("squared drive amplitude", polarization2)?;
        let sum: f64 = polarization2.iter().sum();
        let amplitude2 = if sum > 0.0 {
            polarization2.map(|w| w / sum)
        } else {
            [0.0; 3]
        };
        Ok(DriveField {
            omega_l,
            excitation: Excitation::ClassicalIntensity(intensity),
            amplitude2,
        })
    }

    pub fn omega_l(&self) -> f64 {
        self.omega_l
    }

    pub fn excitation(&self) -> Excitation {
        self.excitation
    }

    pub fn amplitude2(&self) -> [f64; 3] {
        self.amplitude2
    }

    pub fn photons(&self) -> Option<u64> {
        match self.excitation {
            Excitation::Photons(n) => Some(n),
            Excitation::ClassicalIntensity(_) => None,
        }
    }
}

/// Half-space material filling z < 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Medium {
    PerfectConductor,
    /// Real, frequency-independent refractive index n ≥ 1.
    Dielectric(f64),
}

impl Medium {
    /// `n = +inf` maps to [`Medium::PerfectConductor`].
    pub fn from_index(n: f64) -> Result<Self> {
        if n == f64::INFINITY {
            return Ok(Medium::PerfectConductor);
        }
        let m = Medium::Dielectric(n);
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Medium::PerfectConductor => Ok(()),
            Medium::Dielectric(n) if n.is_finite() && n >= 1.0 => Ok(()),
            Medium::Dielectric(n) => Err(Error::invalid(
                "refractive index",
                format!("refractive index must be >= 1, got {n}"),
            )),
        }
    }

    /// κ at which the medium-side wave turns from propagating to evanescent,
    /// √(n²−1); `None` when there is no such window.
    pub fn tir_edge(&self) -> Option<f64> {
        match *self {
            Medium::Dielectric(n) if n > 1.0 => Some((n * n - 1.0).sqrt()),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub atom: AtomModel,
    pub drive: DriveField,
    pub medium: Medium,
    /// Atom-surface distance (m).
    pub z: f64,
}

impl Scenario {
    pub fn new(atom: AtomModel, drive: DriveField, medium: Medium, z: f64) -> Result<Self> {
        let s = Scenario { atom, drive, medium, z };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        self.medium.validate()?;
        check_positive("distance", self.z)
    }

    pub fn with_z(&self, z: f64) -> Result<Self> {
        Scenario::new(self.atom, self.drive, self.medium, z)
    }

    pub fn with_medium(&self, medium: Medium) -> Result<Self> {
        Scenario::new(self.atom, self.drive, medium, self.z)
    }

    pub fn zeta(&self) -> f64 {
        zeta(self.drive.omega_l(), self.z)
    }

    pub fn check_resonance(&self) -> Result<()> {
        check_resonance(self.atom.omega0(), self.drive.omega_l())
    }

    /// True when the drive is within [`RESONANCE_GUARD`] of the transition.
    pub fn near_resonance(&self) -> bool {
        let w0 = self.atom.omega0();
        ((w0 - self.drive.omega_l()) / w0).abs() < RESONANCE_GUARD
    }

    /// Field and dipole both along x, as required by the closed forms.
    pub fn check_parallel(&self) -> Result<()> {
        let d2 = self.atom.d2();
        let e2 = self.drive.amplitude2();
        if d2[1] != 0.0 || d2[2] != 0.0 {
            return Err(Error::NotParallel("dipole has y or z components"));
        }
        if e2[1] != 0.0 || e2[2] != 0.0 {
            return Err(Error::NotParallel("drive amplitude has y or z components"));
        }
        Ok(())
    }
}

pub(crate) fn check_resonance(omega0: f64, omega_l: f64) -> Result<()> {
    if omega0 == omega_l {
        Err(Error::ResonantDrive { omega0, omega_l })
    } else {
        Ok(())
    }
}

/// Dimensionless distance ζ = 2ω_L z / c.
pub fn zeta(omega_l: f64, z: f64) -> f64 {
    2.0 * omega_l * z / C
}

/// Dynamic polarizability α(ω_L) = (2/ħ) ω|d|²/(ω² − ω_L²) in C²·m²/J, using
/// the full |d|² of the atom.
pub fn polarizability(atom: &AtomModel, omega_l: f64) -> Result<f64> {
    let w0 = atom.omega0();
    check_resonance(w0, omega_l)?;
    Ok(2.0 / HBAR * w0 * atom.dtotal2() / (w0 * w0 - omega_l * omega_l))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum IntensityMode {
    /// ½⟨N_L|E²|N_L⟩, including the vacuum term.
    Exact,
    /// Classical correspondence N_L|E₀|²ω_L/(4π).
    Classical,
}

/// Drive intensity in W/m².
pub fn intensity(drive: &DriveField, mode: IntensityMode) -> Result<f64> {
    match (drive.excitation(), mode) {
        (Excitation::ClassicalIntensity(i), IntensityMode::Classical) => Ok(i),
        (Excitation::ClassicalIntensity(_), IntensityMode::Exact) => Err(Error::MissingPhotonNumber),
        (Excitation::Photons(n), _) => {
            let omega = drive.omega_l() / C;
            let e2: f64 = drive
                .amplitude2()
                .iter()
                .map(|g2| amplitude2_to_natural(*g2, drive.omega_l()))
                .sum();
            let n = n as f64;
            let natural = match mode {
                IntensityMode::Exact => e2 * omega * (2.0 * n + 1.0) / (8.0 * PI),
                IntensityMode::Classical => e2 * n * omega / (4.0 * PI),
            };
            Ok(intensity_to_si(natural))
        }
    }
}

/// Energy in natural units (m⁻¹) to joules.
pub fn energy_to_si(e: f64) -> f64 {
    e * HBAR * C
}

pub fn energy_to_natural(e: f64) -> f64 {
    e / (HBAR * C)
}

fn intensity_to_si(i: f64) -> f64 {
    i * HBAR * C * C
}

fn intensity_to_natural(i: f64) -> f64 {
    i / (HBAR * C * C)
}

/// Squared single-photon field amplitude (V²/m²) to the natural mode amplitude E₀² (m⁻³).
fn amplitude2_to_natural(g2: f64, omega_l: f64) -> f64 {
    4.0 * PI * EPSILON0 * g2 / (HBAR * omega_l)
}

fn amplitude2_to_si(e2: f64, omega_l: f64) -> f64 {
    e2 * HBAR * omega_l / (4.0 * PI * EPSILON0)
}

/// A [`Scenario`] expressed in ħ = c = ε₀ = 1 units with lengths in metres.
///
/// A classical drive is carried as photon number 1 with the mode amplitude
/// chosen so that N_L|E_i|²ω_L/(4π) reproduces each component's intensity;
/// only the product N_L|E_i|² enters the resonant shift.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NaturalScenario {
    /// ω (m⁻¹).
    pub omega0: f64,
    /// ω_L (m⁻¹).
    pub omega_l: f64,
    /// |d_i|² (m²).
    pub d2: [f64; 3],
    /// E_i² (m⁻³).
    pub e2: [f64; 3],
    pub photons: f64,
    /// z (m).
    pub z: f64,
    pub medium: Medium,
    pub classical: bool,
}

impl NaturalScenario {
    pub fn from_si(s: &Scenario) -> Self {
        let omega_l = s.drive.omega_l();
        let d2 = s.atom.d2().map(|d| d / (EPSILON0 * HBAR * C));
        let (photons, e2, classical) = match s.drive.excitation() {
            Excitation::Photons(n) => (
                n as f64,
                s.drive.amplitude2().map(|g2| amplitude2_to_natural(g2, omega_l)),
                false,
            ),
            Excitation::ClassicalIntensity(i) => {
                let per_mode = 4.0 * PI * intensity_to_natural(i) / (omega_l / C);
                (1.0, s.drive.amplitude2().map(|w| w * per_mode), true)
            }
        };
        NaturalScenario {
            omega0: s.atom.omega0() / C,
            omega_l: omega_l / C,
            d2,
            e2,
            photons,
            z: s.z,
            medium: s.medium,
            classical,
        }
    }

    /// Inverse of [`NaturalScenario::from_si`].
    pub fn to_si(&self) -> Result<Scenario> {
        let omega_l = self.omega_l * C;
        let atom = AtomModel::new(self.omega0 * C, self.d2.map(|d| d * EPSILON0 * HBAR * C))?;
        let drive = if self.classical {
            let total: f64 = self.e2.iter().sum();
            let intensity = intensity_to_si(self.photons * total * self.omega_l / (4.0 * PI));
            DriveField::classical(omega_l, intensity, self.e2)?
        } else {
            DriveField::fock(
                omega_l,
                self.photons.round() as u64,
                self.e2.map(|e| amplitude2_to_si(e, omega_l)),
            )?
        };
        Scenario::new(atom, drive, self.medium, self.z)
    }

    pub fn zeta(&self) -> f64 {
        2.0 * self.omega_l * self.z
    }
}

/// The worked ¹³³Cs example: ω = 1.55×10¹⁴ s⁻¹, d = 5.85×10⁻²⁹ C·m,
/// ω_L = 1.50×10¹⁴ s⁻¹, I = 5 W/cm², dipole and field along x.
pub mod cesium {
    use super::*;

    pub const OMEGA0: f64 = 1.55e14;
    pub const DIPOLE: f64 = 5.85e-29;
    pub const OMEGA_L: f64 = 1.50e14;
    /// 5 W/cm² in W/m².
    pub const INTENSITY: f64 = 5.0e4;

    pub fn atom() -> AtomModel {
        AtomModel::from_dipole(OMEGA0, [DIPOLE, 0.0, 0.0]).expect("valid constants")
    }

    pub fn drive() -> DriveField {
        DriveField::classical(OMEGA_L, INTENSITY, [1.0, 0.0, 0.0]).expect("valid constants")
    }

    pub fn scenario(medium: Medium, z: f64) -> Result<Scenario> {
        Scenario::new(atom(), drive(), medium, z)
    }
}
