//! Resonant energy shift: general-alignment quadrature, the explicit parallel
//! dielectric integrals, and the perfect-conductor closed forms.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::Result;
use crate::integrands::{s_tot, IntegrandParams};
use crate::quadrature::{
    integrate_evanescent_with_breakpoints, integrate_traveling, QuadratureResult, QuadratureSettings,
};
use crate::units::{
    energy_to_si, intensity, polarizability, IntensityMode, Medium, NaturalScenario, Scenario, C, EPSILON0,
};

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShiftDiagnostics {
    pub traveling: QuadratureResult,
    pub evanescent: QuadratureResult,
    /// |ω − ω_L|/ω fell inside the resonance guard band.
    pub near_resonance: bool,
}

/// Shift contributions in joules.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShiftResult {
    pub traveling: f64,
    pub evanescent: f64,
    pub total: f64,
    pub zeta: f64,
    pub diagnostics: ShiftDiagnostics,
}

impl ShiftResult {
    fn new(traveling: f64, evanescent: f64, zeta: f64, diagnostics: ShiftDiagnostics) -> Self {
        ShiftResult {
            traveling,
            evanescent,
            total: traveling + evanescent,
            zeta,
            diagnostics,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PcPart {
    Evanescent,
    Traveling,
    Total,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    NearField,
    Retarded,
}

/// The perfect-conductor total split as −cosζ/ζ³, −sinζ/ζ² and +cosζ/ζ, in joules.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PcDecomposition {
    pub term_cos3: f64,
    pub term_sin2: f64,
    pub term_cos1: f64,
}

impl PcDecomposition {
    pub fn sum(&self) -> f64 {
        self.term_cos3 + self.term_sin2 + self.term_cos1
    }
}

fn prepare(scenario: &Scenario) -> Result<bool> {
    scenario.validate()?;
    scenario.check_resonance()?;
    let near = scenario.near_resonance();
    if near {
        log::warn!(
            "drive at {:e} rad/s is within the resonance guard band of {:e} rad/s",
            scenario.drive.omega_l(),
            scenario.atom.omega0()
        );
    }
    Ok(near)
}

/// Traveling, evanescent and total shift for arbitrary alignment.
pub fn shift_general(scenario: &Scenario, settings: &QuadratureSettings) -> Result<ShiftResult> {
    let near_resonance = prepare(scenario)?;
    let natural = NaturalScenario::from_si(scenario);
    let params = IntegrandParams::new(&natural)?;
    let medium = scenario.medium;
    let zeta = natural.zeta();
    let f = |chi: Complex64| s_tot(chi, &params, medium);
    let traveling = integrate_traveling(f, zeta, settings)?;
    let edges: Vec<f64> = medium.tir_edge().into_iter().collect();
    let evanescent = integrate_evanescent_with_breakpoints(f, zeta, &edges, settings)?;
    Ok(ShiftResult::new(
        energy_to_si(traveling.value),
        -energy_to_si(evanescent.value),
        zeta,
        ShiftDiagnostics {
            traveling,
            evanescent,
            near_resonance,
        },
    ))
}

/// I_cl α² ω_L³ / (8π c⁴ ε₀²) in joules.
fn parallel_prefactor(scenario: &Scenario) -> Result<f64> {
    let omega_l = scenario.drive.omega_l();
    let alpha = polarizability(&scenario.atom, omega_l)?;
    let i_cl = intensity(&scenario.drive, IntensityMode::Classical)?;
    Ok(i_cl * alpha * alpha * omega_l.powi(3) / (8.0 * PI * C.powi(4) * EPSILON0 * EPSILON0))
}

/// √(n² − 1 + τ²), the medium-side wave number over ω_L for propagating incidence.
fn traveling_reflection(tau: f64, n: f64) -> (f64, f64) {
    let root = (n * n - 1.0 + tau * tau).sqrt();
    ((tau - root) / (tau + root), (n * n * tau - root) / (n * n * tau + root))
}

/// Evanescent incidence at κ with s = √(1 − n² + κ²); inside the
/// total-internal-reflection window s = −i√(n² − 1 − κ²).
fn evanescent_reflection(kappa: f64, n: f64) -> (Complex64, Complex64) {
    let radicand = 1.0 - n * n + kappa * kappa;
    let s = if radicand >= 0.0 {
        Complex64::new(radicand.sqrt(), 0.0)
    } else {
        Complex64::new(0.0, -(-radicand).sqrt())
    };
    let n2k = n * n * kappa;
    ((kappa - s) / (kappa + s), (n2k - s) / (n2k + s))
}

/// Shift for field and dipole along x using the explicit finite-n integrals.
pub fn shift_parallel_dielectric(scenario: &Scenario, settings: &QuadratureSettings) -> Result<ShiftResult> {
    let near_resonance = prepare(scenario)?;
    scenario.check_parallel()?;
    let pref = parallel_prefactor(scenario)?;
    let zeta = scenario.zeta();
    let reflect_tr = |t: f64| match scenario.medium {
        Medium::PerfectConductor => (-1.0, 1.0),
        Medium::Dielectric(n) if n == 1.0 => (0.0, 0.0),
        Medium::Dielectric(n) => traveling_reflection(t, n),
    };
    let reflect_ev = |k: f64| match scenario.medium {
        Medium::PerfectConductor => (Complex64::new(-1.0, 0.0), Complex64::new(1.0, 0.0)),
        Medium::Dielectric(n) if n == 1.0 => (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)),
        Medium::Dielectric(n) => evanescent_reflection(k, n),
    };
    let traveling = integrate_traveling(
        |chi| {
            let t = chi.re;
            let (te, tm) = reflect_tr(t);
            Ok(I * (I * zeta * t).exp() * (te - t * t * tm))
        },
        zeta,
        settings,
    )?;
    let edges: Vec<f64> = scenario.medium.tir_edge().into_iter().collect();
    let evanescent = integrate_evanescent_with_breakpoints(
        |chi| {
            let k = chi.im;
            let (te, tm) = reflect_ev(k);
            Ok(-I * (-zeta * k).exp() * (te + k * k * tm))
        },
        zeta,
        &edges,
        settings,
    )?;
    Ok(ShiftResult::new(
        -pref * traveling.value,
        -pref * evanescent.value,
        zeta,
        ShiftDiagnostics {
            traveling,
            evanescent,
            near_resonance,
        },
    ))
}

/// I_cl α² / (32π c ε₀² z³) in joules.
fn pc_scale(scenario: &Scenario) -> Result<f64> {
    prepare(scenario)?;
    scenario.check_parallel()?;
    let alpha = polarizability(&scenario.atom, scenario.drive.omega_l())?;
    let i_cl = intensity(&scenario.drive, IntensityMode::Classical)?;
    Ok(i_cl * alpha * alpha / (32.0 * PI * C * EPSILON0 * EPSILON0 * scenario.z.powi(3)))
}

/// −1 + ζ²/2 + (1 − ζ²)cosζ + ζ sinζ; a power series below ζ = 1 where the
/// closed form cancels to O(ζ⁴).
fn traveling_bracket(zeta: f64) -> f64 {
    if zeta >= 1.0 {
        let (s, c) = zeta.sin_cos();
        return -1.0 + 0.5 * zeta * zeta + (1.0 - zeta * zeta) * c + zeta * s;
    }
    let z2 = zeta * zeta;
    // Coefficient of ζ^{2m}: (−1)^m [1/(2m)! + 1/(2m−2)! − 1/(2m−1)!].
    let (mut f2m2, mut f2m1, mut f2m) = (2.0, 6.0, 24.0);
    let mut power = z2 * z2;
    let mut sum = 0.0;
    for m in 2..30 {
        let coeff = 1.0 / f2m + 1.0 / f2m2 - 1.0 / f2m1;
        let term = if m % 2 == 0 { coeff } else { -coeff } * power;
        sum += term;
        if term.abs() <= 1e-18 * sum.abs() {
            break;
        }
        f2m2 = f2m;
        f2m1 = f2m * (2 * m + 1) as f64;
        f2m = f2m1 * (2 * m + 2) as f64;
        power *= z2;
    }
    sum
}

/// Perfect-conductor closed forms for field and dipole along x. The medium
/// field of the scenario is not consulted.
pub fn pc_shift(part: PcPart, scenario: &Scenario) -> Result<f64> {
    let p0 = pc_scale(scenario)?;
    let zeta = scenario.zeta();
    let (s, c) = zeta.sin_cos();
    Ok(match part {
        PcPart::Evanescent => -p0 * (1.0 - 0.5 * zeta * zeta),
        PcPart::Traveling => -p0 * traveling_bracket(zeta),
        PcPart::Total => p0 * ((zeta * zeta - 1.0) * c - zeta * s),
    })
}

/// Leading near-field (−I_cl α²/(32π c ε₀² z³)) or retarded
/// (I_cl α² ω_L² cosζ/(8π c³ ε₀² z)) behaviour.
pub fn pc_asymptotic(regime: Regime, scenario: &Scenario) -> Result<f64> {
    let p0 = pc_scale(scenario)?;
    Ok(match regime {
        Regime::NearField => -p0,
        Regime::Retarded => {
            let omega_l = scenario.drive.omega_l();
            let alpha = polarizability(&scenario.atom, omega_l)?;
            let i_cl = intensity(&scenario.drive, IntensityMode::Classical)?;
            i_cl * alpha * alpha * omega_l * omega_l * scenario.zeta().cos()
                / (8.0 * PI * C.powi(3) * EPSILON0 * EPSILON0 * scenario.z)
        }
    })
}

/// Three-term form of the perfect-conductor total. The common prefactor is
/// I_cl α² ω_L³/(4π c⁴ ε₀²), which makes the terms sum to [`pc_shift`] total;
/// `term_cos3` alone is the non-retarded model with a cosine phase attached.
pub fn pc_decompose(scenario: &Scenario) -> Result<PcDecomposition> {
    let p0 = pc_scale(scenario)?;
    let zeta = scenario.zeta();
    let (s, c) = zeta.sin_cos();
    // I_cl α² ω_L³/(4π c⁴ ε₀²) = p0 ζ³.
    Ok(PcDecomposition {
        term_cos3: -p0 * c,
        term_sin2: -p0 * zeta * s,
        term_cos1: p0 * zeta * zeta * c,
    })
}
