//! Adaptive Gauss–Kronrod (10/21) kernels for the two branch integrals.
//!
//! The traveling kernel starts from panels no wider than a fixed number of
//! half-periods of the e^{iζτ} phase; the evanescent kernel starts from a
//! geometric partition of [0, κ_max] anchored at the decay length 1/ζ. Both
//! then bisect the panel with the largest error until the summed estimate
//! meets max(absTol, relTol·|I|).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::collections::BinaryHeap;
use std::f64::consts::PI;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSettings {
    pub rel_tol: f64,
    /// Absolute floor, natural units.
    pub abs_tol: f64,
    pub max_panels: usize,
    /// Initial traveling panels span at most this many periods of e^{2iζτ}.
    pub oscillations_per_panel: f64,
    /// Multiplies the evanescent cutoff κ_max = max(20, 40/ζ).
    pub truncation_scale: f64,
}

impl Default for QuadratureSettings {
    fn default() -> Self {
        QuadratureSettings {
            rel_tol: 1e-10,
            abs_tol: 1e-30,
            max_panels: 10_000,
            oscillations_per_panel: 1.0,
            truncation_scale: 1.0,
        }
    }
}

impl QuadratureSettings {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol.is_finite()) {
            return Err(Error::invalid("rel_tol", format!("must be > 0, got {}", self.rel_tol)));
        }
        if !(self.abs_tol >= 0.0 && self.abs_tol.is_finite()) {
            return Err(Error::invalid("abs_tol", format!("must be >= 0, got {}", self.abs_tol)));
        }
        if self.max_panels < 1 {
            return Err(Error::invalid("max_panels", "must be >= 1"));
        }
        if !(self.oscillations_per_panel > 0.0 && self.oscillations_per_panel.is_finite()) {
            return Err(Error::invalid("oscillations_per_panel", "must be > 0"));
        }
        if !(self.truncation_scale >= 1.0 && self.truncation_scale.is_finite()) {
            return Err(Error::invalid("truncation_scale", "must be >= 1"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureResult {
    /// Real part of the integral.
    pub value: f64,
    pub error_estimate: f64,
    pub panels_used: usize,
    /// Imaginary part of the integral, reported but not part of the result.
    pub imaginary: f64,
}

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_729_941_759_570,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

/// 10-point Gauss weights for the odd-indexed Kronrod nodes.
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == std::cmp::Ordering::Equal
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    /// Largest error first; ties broken by position so refinement is deterministic.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

/// One 21-point Kronrod panel with the QUADPACK error rescaling.
fn gk21<F>(f: &F, a: f64, b: f64) -> Result<Panel>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let eval = |x: f64| -> Result<Complex64> {
        let v = f(x)?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFiniteIntegrand { at: x })
        }
    };
    let fc = eval(centre)?;
    let mut kronrod = fc * WGK[10];
    let mut resabs = fc.norm() * WGK[10];
    let mut gauss = Complex64::new(0.0, 0.0);
    let mut values = [(Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)); 10];
    for (j, v) in values.iter_mut().enumerate() {
        let dx = half * XGK[j];
        let f1 = eval(centre - dx)?;
        let f2 = eval(centre + dx)?;
        kronrod += (f1 + f2) * WGK[j];
        resabs += (f1.norm() + f2.norm()) * WGK[j];
        if j % 2 == 1 {
            gauss += (f1 + f2) * WG[j / 2];
        }
        *v = (f1, f2);
    }
    let mean = kronrod * 0.5;
    let mut resasc = WGK[10] * (fc - mean).norm();
    for (j, (f1, f2)) in values.iter().enumerate() {
        resasc += WGK[j] * ((f1 - mean).norm() + (f2 - mean).norm());
    }
    let scale = half.abs();
    let (resabs, resasc) = (resabs * scale, resasc * scale);
    let mut error = ((kronrod - gauss) * half).norm();
    if resasc != 0.0 && error != 0.0 {
        error = resasc * (200.0 * error / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * resabs);
    }
    Ok(Panel {
        a,
        b,
        value: kronrod * half,
        error,
    })
}

/// Adaptive refinement starting from the partition `cuts` (sorted, ≥ 2 points).
fn adaptive<F>(f: &F, cuts: &[f64], settings: &QuadratureSettings, extra_error: f64) -> Result<(Complex64, f64, usize)>
where
    F: Fn(f64) -> Result<Complex64>,
{
    settings.validate()?;
    let mut heap = BinaryHeap::new();
    for w in cuts.windows(2) {
        if w[1] > w[0] {
            heap.push(gk21(f, w[0], w[1])?);
        }
    }
    loop {
        let value: Complex64 = heap.iter().map(|p| p.value).sum();
        let error: f64 = heap.iter().map(|p| p.error).sum::<f64>() + extra_error;
        let target = settings.abs_tol.max(settings.rel_tol * value.norm());
        if error <= target {
            return Ok((value, error, heap.len()));
        }
        if heap.len() >= settings.max_panels {
            return Err(Error::ToleranceNotMet {
                estimate: error,
                target,
                panels: heap.len(),
            });
        }
        let worst = heap.pop().expect("at least one panel");
        let mid = 0.5 * (worst.a + worst.b);
        if !(mid > worst.a && mid < worst.b) {
            return Err(Error::ToleranceNotMet {
                estimate: error,
                target,
                panels: heap.len() + 1,
            });
        }
        heap.push(gk21(f, worst.a, mid)?);
        heap.push(gk21(f, mid, worst.b)?);
    }
}

/// Re ∫₀¹ f(τ) dτ for an integrand carrying the phase e^{iζτ}.
pub fn integrate_traveling<F>(f: F, zeta: f64, settings: &QuadratureSettings) -> Result<QuadratureResult>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    if !(zeta >= 0.0 && zeta.is_finite()) {
        return Err(Error::invalid("zeta", format!("must be finite and >= 0, got {zeta}")));
    }
    settings.validate()?;
    let width = settings.oscillations_per_panel * PI / zeta;
    let panels = if width >= 1.0 { 1 } else { (1.0 / width).ceil() as usize };
    if panels > settings.max_panels {
        return Err(Error::ToleranceNotMet {
            estimate: f64::INFINITY,
            target: settings.abs_tol,
            panels,
        });
    }
    let cuts: Vec<f64> = (0..=panels).map(|k| k as f64 / panels as f64).collect();
    let g = |t: f64| f(Complex64::new(t, 0.0));
    let (value, error, panels_used) = adaptive(&g, &cuts, settings, 0.0)?;
    Ok(QuadratureResult {
        value: value.re,
        error_estimate: error,
        panels_used,
        imaginary: value.im,
    })
}

/// Re ∫₀^∞ i·f(iκ) dκ.
pub fn integrate_evanescent<F>(f: F, zeta: f64, settings: &QuadratureSettings) -> Result<QuadratureResult>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    integrate_evanescent_with_breakpoints(f, zeta, &[], settings)
}

/// As [`integrate_evanescent`], with extra panel boundaries at known
/// non-smooth points of the integrand (e.g. the total-internal-reflection edge).
pub fn integrate_evanescent_with_breakpoints<F>(
    f: F,
    zeta: f64,
    breakpoints: &[f64],
    settings: &QuadratureSettings,
) -> Result<QuadratureResult>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    if !(zeta > 0.0 && zeta.is_finite()) {
        return Err(Error::invalid("zeta", format!("must be finite and > 0, got {zeta}")));
    }
    settings.validate()?;
    let g = |k: f64| f(Complex64::new(0.0, k)).map(|v| Complex64::new(0.0, 1.0) * v);
    let kappa_max = 20f64.max(40.0 / zeta) * settings.truncation_scale;

    let at_max = g(kappa_max)?.norm();
    let beyond = g(2.0 * kappa_max)?.norm();
    if !(at_max.is_finite() && beyond.is_finite()) {
        return Err(Error::NonFiniteIntegrand { at: kappa_max });
    }
    if beyond > at_max && beyond > 0.0 {
        return Err(Error::NonDecayingIntegrand { kappa_max });
    }
    // Tail beyond κ_max, bounded by an exponential fitted through the two samples.
    let tail = if at_max == 0.0 {
        0.0
    } else if beyond == 0.0 {
        at_max * kappa_max * f64::EPSILON
    } else {
        let rate = (at_max / beyond).ln() / kappa_max;
        if rate > 0.0 {
            at_max / rate
        } else {
            at_max * kappa_max
        }
    };

    let mut cuts = vec![0.0, kappa_max];
    let mut k = 0.25 / zeta;
    while k < kappa_max {
        cuts.push(k);
        k *= 2.0;
    }
    cuts.extend(breakpoints.iter().copied().filter(|b| *b > 0.0 && *b < kappa_max));
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();

    let (value, error, panels_used) = adaptive(&g, &cuts, settings, tail)?;
    Ok(QuadratureResult {
        value: value.re,
        error_estimate: error,
        panels_used,
        imaginary: value.im,
    })
}
