//! Pole-residue integrands of the four fourth-order diagrams and their total.
//!
//! Every function takes the integration variable χ = k_z/ω_L: real τ ∈ [0, 1]
//! on the traveling branch, iκ on the evanescent branch. Reflection
//! coefficients are evaluated on shell at ω = ω_L.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::optics::reflection_at_pole;
use crate::units::{Medium, NaturalScenario};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Natural-unit parameters with the dipole/field weights precomputed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrandParams {
    pub photons: f64,
    pub omega0: f64,
    pub omega_l: f64,
    pub e2: [f64; 3],
    pub d2: [f64; 3],
    pub z: f64,
    pub dpar2: f64,
    /// E_x²|d_x|⁴ + E_y²|d_y|⁴.
    quartic_par: f64,
    /// 2E_z²|d_z|⁴.
    quartic_z: f64,
    /// E_z²|d_z|²|d_∥|² + (E_x² + E_y²)|d_x|²|d_y|².
    cross_par: f64,
    /// 2(E_x²|d_x|² + E_y²|d_y|²)|d_z|².
    cross_z: f64,
}

impl IntegrandParams {
    pub fn new(s: &NaturalScenario) -> Result<Self> {
        if s.omega0 == s.omega_l {
            return Err(Error::ResonantDrive {
                omega0: s.omega0 * crate::units::C,
                omega_l: s.omega_l * crate::units::C,
            });
        }
        let [ex, ey, ez] = s.e2;
        let [dx, dy, dz] = s.d2;
        let dpar2 = dx + dy;
        Ok(IntegrandParams {
            photons: s.photons,
            omega0: s.omega0,
            omega_l: s.omega_l,
            e2: s.e2,
            d2: s.d2,
            z: s.z,
            dpar2,
            quartic_par: ex * dx * dx + ey * dy * dy,
            quartic_z: 2.0 * ez * dz * dz,
            cross_par: ez * dz * dpar2 + (ex + ey) * dx * dy,
            cross_z: 2.0 * (ex * dx + ey * dy) * dz,
        })
    }

    /// −iN_Lω_L⁴/(32π²) e^{2iω_Lχz}.
    fn prefactor(&self, chi: Complex64) -> Complex64 {
        let wl = self.omega_l;
        -I * self.photons * wl.powi(4) / (32.0 * PI * PI) * (2.0 * I * wl * chi * self.z).exp()
    }
}

/// (R_TE − χ²R_TM, (1 − χ²)R_TM) at the drive pole.
fn brackets(chi: Complex64, medium: Medium) -> Result<(Complex64, Complex64)> {
    let (te, tm) = reflection_at_pole(chi, medium)?;
    let chi2 = chi * chi;
    Ok((te - chi2 * tm, (1.0 - chi2) * tm))
}

/// Integrand of diagram `index` (1 to 4).
pub fn s_i(index: usize, chi: Complex64, params: &IntegrandParams, medium: Medium) -> Result<Complex64> {
    let w = params.omega0;
    let wl = params.omega_l;
    let (x, y) = brackets(chi, medium)?;
    let [ex, ey, ez] = params.e2;
    let [dx, dy, dz] = params.d2;
    let pre = params.prefactor(chi);
    match index {
        1 | 4 => {
            let den = if index == 1 { (w + wl) * (w + wl) } else { (w - wl) * (w - wl) };
            let weight = ex * dx + ey * dy + ez * dz;
            Ok(pre / den * weight * (params.dpar2 * x + 2.0 * dz * y))
        }
        2 | 3 => {
            let den = (w + wl) * (w - wl);
            Ok(pre / den * ((ex * dx * dx + ey * dy * dy) * x + 2.0 * ez * dz * dz * y))
        }
        _ => Err(Error::invalid("diagram index", format!("expected 1..=4, got {index}"))),
    }
}

/// Total integrand, written in closed form rather than as the diagram sum.
pub fn s_tot(chi: Complex64, params: &IntegrandParams, medium: Medium) -> Result<Complex64> {
    let w2 = params.omega0 * params.omega0;
    let wl2 = params.omega_l * params.omega_l;
    let (x, y) = brackets(chi, medium)?;
    let quartic = params.quartic_par * x + params.quartic_z * y;
    let cross = params.cross_par * x + params.cross_z * y;
    let det = (w2 - wl2) * (w2 - wl2);
    Ok(params.prefactor(chi) / det * (4.0 * w2 * quartic + 2.0 * (w2 + wl2) * cross))
}

/// Total integrand for field and dipole both along x.
pub fn s_parallel(chi: Complex64, params: &IntegrandParams, medium: Medium) -> Result<Complex64> {
    let [_, ey, ez] = params.e2;
    let [dx, dy, dz] = params.d2;
    if ey != 0.0 || ez != 0.0 || dy != 0.0 || dz != 0.0 {
        return Err(Error::NotParallel("integrand requires E and d along x"));
    }
    let w2 = params.omega0 * params.omega0;
    let wl2 = params.omega_l * params.omega_l;
    let (x, _) = brackets(chi, medium)?;
    let wl = params.omega_l;
    let pre = -I * params.photons * wl.powi(4) / (8.0 * PI * PI) * w2 / ((w2 - wl2) * (w2 - wl2));
    Ok(pre * params.e2[0] * dx * dx * (2.0 * I * wl * chi * params.z).exp() * x)
}
