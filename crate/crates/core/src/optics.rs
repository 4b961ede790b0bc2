//! Wave vectors, Fresnel coefficients, polarization bases and vacuum-side
//! mode functions of a dielectric half-space.
//!
//! Conventions: the medium fills z < 0, the vacuum z > 0. Barred quantities
//! are obtained by k_z → −k_z. All wave vectors are in natural units (c = 1),
//! so |k| is the mode frequency.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::units::Medium;

pub type CVec3 = [Complex64; 3];
pub type CMat3 = [[Complex64; 3]; 3];

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Polarization {
    TE,
    TM,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveVector {
    pub kx: f64,
    pub ky: f64,
    pub kz: Complex64,
}

impl WaveVector {
    pub fn new(kx: f64, ky: f64, kz: Complex64) -> Self {
        WaveVector { kx, ky, kz }
    }

    pub fn real(kx: f64, ky: f64, kz: f64) -> Self {
        WaveVector::new(kx, ky, Complex64::new(kz, 0.0))
    }

    pub fn kpar(&self) -> f64 {
        self.kx.hypot(self.ky)
    }

    /// k² = k_z² + k_∥² (bilinear, no conjugation).
    pub fn k2(&self) -> Complex64 {
        self.kz * self.kz + self.kx * self.kx + self.ky * self.ky
    }

    /// ω = √(k_z² + k_∥²), principal root.
    pub fn omega(&self) -> Complex64 {
        self.k2().sqrt()
    }

    pub fn reflected(&self) -> WaveVector {
        WaveVector::new(self.kx, self.ky, -self.kz)
    }

    fn components(&self) -> CVec3 {
        [self.kx.into(), self.ky.into(), self.kz]
    }

    /// Unit in-plane direction (cos φ, sin φ); φ = 0 when k_∥ = 0.
    fn azimuth(&self) -> (f64, f64) {
        let kpar = self.kpar();
        if kpar == 0.0 {
            (1.0, 0.0)
        } else {
            (self.kx / kpar, self.ky / kpar)
        }
    }
}

fn dot(a: &CVec3, b: &CVec3) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// TE/TM polarization vectors for a wave vector and for its mirror image.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarizationBasis {
    pub te: CVec3,
    pub tm: CVec3,
    pub te_bar: CVec3,
    pub tm_bar: CVec3,
}

impl PolarizationBasis {
    /// e_TE = (k_y, −k_x, 0)/k_∥ and e_TM = (k_x k_z, k_y k_z, −k_∥²)/(k k_∥).
    /// At k_∥ = 0 the azimuth is taken as φ = 0, giving e_TE = (0, −1, 0).
    pub fn new(k: &WaveVector) -> Self {
        PolarizationBasis {
            te: te_vector(k),
            tm: tm_vector(k),
            te_bar: te_vector(&k.reflected()),
            tm_bar: tm_vector(&k.reflected()),
        }
    }

    pub fn vector(&self, pol: Polarization) -> (CVec3, CVec3) {
        match pol {
            Polarization::TE => (self.te, self.te_bar),
            Polarization::TM => (self.tm, self.tm_bar),
        }
    }
}

fn te_vector(k: &WaveVector) -> CVec3 {
    let (c, s) = k.azimuth();
    [s.into(), (-c).into(), Complex64::new(0.0, 0.0)]
}

fn tm_vector(k: &WaveVector) -> CVec3 {
    let (c, s) = k.azimuth();
    let norm = k.omega();
    [c * k.kz / norm, s * k.kz / norm, -k.kpar() / norm]
}

/// Perpendicular wave number inside the medium, k_z^d = √(n²k_z² + k_∥²(n²−1)),
/// on the branch Im ≥ 0 (positive root for a positive real radicand).
pub fn kz_in_medium(kz: Complex64, kpar: f64, n: f64) -> Complex64 {
    if n == 1.0 {
        return kz;
    }
    let n2 = n * n;
    let radicand = n2 * kz * kz + kpar * kpar * (n2 - 1.0);
    let root = radicand.sqrt();
    if root.im < 0.0 {
        -root
    } else {
        root
    }
}

/// Fresnel reflection coefficient seen from the vacuum side.
pub fn reflection(pol: Polarization, kz: Complex64, kpar: f64, medium: Medium) -> Result<Complex64> {
    let n = match medium {
        Medium::PerfectConductor => {
            return Ok(match pol {
                Polarization::TE => Complex64::new(-1.0, 0.0),
                Polarization::TM => Complex64::new(1.0, 0.0),
            })
        }
        Medium::Dielectric(n) => n,
    };
    if n == 1.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let kzd = kz_in_medium(kz, kpar, n);
    let lhs = match pol {
        Polarization::TE => kz,
        Polarization::TM => n * n * kz,
    };
    let den = lhs + kzd;
    let r = (lhs - kzd) / den;
    if den.norm() == 0.0 || !r.is_finite() {
        return Err(Error::DegenerateDenominator {
            polarization: pol,
            kz,
            kpar,
        });
    }
    Ok(r)
}

/// (R_TE, R_TM) at the drive pole, for χ = k_z/ω_L on either branch: real
/// χ = τ ∈ [0, 1] (k_∥ = ω_L√(1−τ²)) or χ = iκ (k_∥ = ω_L√(1+κ²)).
///
/// Fresnel coefficients are homogeneous of degree zero in (k_z, k_∥), so ω_L
/// drops out.
pub fn reflection_at_pole(chi: Complex64, medium: Medium) -> Result<(Complex64, Complex64)> {
    let chi2 = chi * chi;
    if chi2.im != 0.0 || !chi2.re.is_finite() || chi2.re > 1.0 {
        return Err(Error::invalid(
            "integration variable",
            format!("chi = {chi} is on neither the traveling nor the evanescent branch"),
        ));
    }
    let kpar = (1.0 - chi2.re).sqrt();
    Ok((
        reflection(Polarization::TE, chi, kpar, medium)?,
        reflection(Polarization::TM, chi, kpar, medium)?,
    ))
}

/// Dyadic product e_kλ ⊗ ē_kλ.
pub fn polarization_outer(k: &WaveVector, pol: Polarization) -> CMat3 {
    let (e, e_bar) = PolarizationBasis::new(k).vector(pol);
    let mut m = [[Complex64::new(0.0, 0.0); 3]; 3];
    for (i, row) in m.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            *entry = e[i] * e_bar[j];
        }
    }
    m
}

/// Incident-plus-reflected vacuum mode
/// f = −i√(ω/2(2π)³) [e^{ik·r} e_kλ + R e^{ik̄·r} ē_kλ], for z > 0.
pub fn mode_ir(r: [f64; 3], k: &WaveVector, pol: Polarization, medium: Medium) -> Result<CVec3> {
    if r[2] < 0.0 || r[2].is_nan() {
        return Err(Error::invalid("position", format!("z must be >= 0, got {}", r[2])));
    }
    let refl = reflection(pol, k.kz, k.kpar(), medium)?;
    let (e, e_bar) = PolarizationBasis::new(k).vector(pol);
    let rc: CVec3 = r.map(Complex64::from);
    let incident = (I * dot(&k.components(), &rc)).exp();
    let reflected = refl * (I * dot(&k.reflected().components(), &rc)).exp();
    let prefactor = -I * (k.omega() / (2.0 * (2.0 * PI).powi(3))).sqrt();
    Ok([0, 1, 2].map(|i| prefactor * (incident * e[i] + reflected * e_bar[i])))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Branch {
    Traveling,
    Evanescent,
}

/// Location of the ω = ω_L pole in the complex k_z plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoleClass {
    pub branch: Branch,
    /// +√(ω_L² − k_∥²) on the traveling branch (the pole pair is ±this value),
    /// i√(k_∥² − ω_L²) on the evanescent branch.
    pub kz_pole: Complex64,
}

impl PoleClass {
    pub fn poles(&self) -> Vec<Complex64> {
        match self.branch {
            Branch::Traveling => vec![self.kz_pole, -self.kz_pole],
            Branch::Evanescent => vec![self.kz_pole],
        }
    }
}

/// k_∥ = ω_L is classified as traveling with k_z = 0.
pub fn classify_pole(kpar: f64, omega_l: f64) -> PoleClass {
    if kpar <= omega_l {
        PoleClass {
            branch: Branch::Traveling,
            kz_pole: Complex64::new((omega_l * omega_l - kpar * kpar).sqrt(), 0.0),
        }
    } else {
        PoleClass {
            branch: Branch::Evanescent,
            kz_pole: Complex64::new(0.0, (kpar * kpar - omega_l * omega_l).sqrt()),
        }
    }
}
