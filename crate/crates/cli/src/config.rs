use std::fmt;
use std::path::Path;

use fockcp_core::units::{AtomModel, DriveField, Medium, Scenario};
use fockcp_core::QuadratureSettings;
use serde::{Deserialize, Serialize};

pub const RELTOL_ENV: &str = "FOCKCP_RELTOL";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    Fig4,
    Fig5,
    CsDefault,
}

impl Preset {
    pub fn name(self) -> &'static str {
        match self {
            Preset::Fig4 => "fig4",
            Preset::Fig5 => "fig5",
            Preset::CsDefault => "cs-default",
        }
    }

    pub fn source(self) -> &'static str {
        match self {
            Preset::Fig4 => include_str!("../presets/fig4.toml"),
            Preset::Fig5 => include_str!("../presets/fig5.toml"),
            Preset::CsDefault => include_str!("../presets/cs-default.toml"),
        }
    }
}

/// A configuration problem, located in the source when possible.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    pub origin: String,
    pub line: Option<usize>,
    pub field: Option<String>,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.origin)?;
        if let Some(line) = self.line {
            write!(f, ":{line}")?;
        }
        if let Some(field) = &self.field {
            write!(f, ": {field}")?;
        }
        write!(f, ": {}", self.message)
    }
}

impl std::error::Error for ConfigError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// Quadrature of the full alignment-dependent integrand.
    General,
    /// Explicit finite-n integrals for field and dipole along x.
    Parallel,
    /// Perfect-conductor closed forms.
    ClosedForm,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    atom: RawAtom,
    drive: RawDrive,
    medium: RawMedium,
    sweep: Option<RawSweep>,
    quadrature: Option<RawQuadrature>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAtom {
    transition_frequency_rad_per_s: f64,
    dipole_c_m: Option<[f64; 3]>,
    dipole_squared_c2_m2: Option<[f64; 3]>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDrive {
    frequency_rad_per_s: f64,
    photons: Option<u64>,
    amplitude_squared_v2_per_m2: Option<[f64; 3]>,
    intensity_w_per_cm2: Option<f64>,
    intensity_w_per_m2: Option<f64>,
    polarization: Option<[f64; 3]>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMedium {
    refractive_index: Option<f64>,
    refractive_indices: Option<Vec<f64>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSweep {
    z_min_m: f64,
    z_max_m: f64,
    points: usize,
    spacing: Spacing,
    method: Option<Method>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawQuadrature {
    rel_tol: Option<f64>,
    abs_tol: Option<f64>,
    max_panels: Option<usize>,
    oscillations_per_panel: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepSpec {
    pub z_min: f64,
    pub z_max: f64,
    pub points: usize,
    pub spacing: Spacing,
}

impl SweepSpec {
    pub const MAX_POINTS: usize = 1_000_000;

    pub fn z(&self, i: usize) -> f64 {
        if i + 1 == self.points {
            return self.z_max;
        }
        let t = i as f64 / (self.points - 1) as f64;
        match self.spacing {
            Spacing::Linear => self.z_min + (self.z_max - self.z_min) * t,
            Spacing::Log => (self.z_min.ln() + (self.z_max.ln() - self.z_min.ln()) * t).exp(),
        }
    }

    pub fn distances(&self) -> Vec<f64> {
        (0..self.points).map(|i| self.z(i)).collect()
    }
}

/// A fully resolved and validated configuration.
#[derive(Debug, Clone)]
pub struct Config {
    pub origin: String,
    pub atom: AtomModel,
    pub drive: DriveField,
    pub media: Vec<Medium>,
    pub sweep: Option<SweepSpec>,
    pub method: Method,
    pub settings: QuadratureSettings,
}

impl Config {
    /// Scenario for the first medium at distance `z`.
    pub fn scenario(&self, medium: Medium, z: f64) -> fockcp_core::Result<Scenario> {
        Scenario::new(self.atom, self.drive, medium, z)
    }
}

pub fn load_file(path: &Path) -> Result<Config, ConfigError> {
    let origin = path.display().to_string();
    let source = std::fs::read_to_string(path).map_err(|e| ConfigError {
        origin: origin.clone(),
        line: None,
        field: None,
        message: format!("cannot read: {e}"),
    })?;
    parse(&source, &origin)
}

pub fn load_preset(preset: Preset) -> Result<Config, ConfigError> {
    parse(preset.source(), &format!("preset {}", preset.name()))
}

/// 1-based line of `key` inside `[section]`, if it appears literally.
fn line_of(source: &str, section: &str, key: &str) -> Option<usize> {
    let mut current = String::new();
    for (i, line) in source.lines().enumerate() {
        let t = line.trim();
        if let Some(name) = t.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            current = name.trim().to_string();
            if key.is_empty() && current == section {
                return Some(i + 1);
            }
            continue;
        }
        if current == section && !key.is_empty() {
            if let Some((k, _)) = t.split_once('=') {
                if k.trim() == key {
                    return Some(i + 1);
                }
            }
        }
    }
    None
}

struct Resolver<'a> {
    source: &'a str,
    origin: &'a str,
}

impl Resolver<'_> {
    fn err(&self, section: &str, key: &str, message: impl Into<String>) -> ConfigError {
        let line = line_of(self.source, section, key).or_else(|| line_of(self.source, section, ""));
        ConfigError {
            origin: self.origin.to_string(),
            line,
            field: Some(if key.is_empty() { section.to_string() } else { format!("{section}.{key}") }),
            message: message.into(),
        }
    }

    fn core(&self, section: &str, key: &str, e: fockcp_core::Error) -> ConfigError {
        self.err(section, key, e.to_string())
    }
}

pub fn parse(source: &str, origin: &str) -> Result<Config, ConfigError> {
    let raw: RawConfig = toml::from_str(source).map_err(|e| {
        let line = e.span().map(|s| source[..s.start.min(source.len())].matches('\n').count() + 1);
        ConfigError {
            origin: origin.to_string(),
            line,
            field: None,
            message: e.message().trim().to_string(),
        }
    })?;
    let r = Resolver { source, origin };

    let atom = match (raw.atom.dipole_c_m, raw.atom.dipole_squared_c2_m2) {
        (Some(d), None) => AtomModel::from_dipole(raw.atom.transition_frequency_rad_per_s, d),
        (None, Some(d2)) => AtomModel::new(raw.atom.transition_frequency_rad_per_s, d2),
        _ => return Err(r.err("atom", "", "give exactly one of dipole_c_m or dipole_squared_c2_m2")),
    }
    .map_err(|e| r.core("atom", "transition_frequency_rad_per_s", e))?;

    let d = &raw.drive;
    let intensity = match (d.intensity_w_per_cm2, d.intensity_w_per_m2) {
        (Some(i), None) => Some((i * 1e4, "intensity_w_per_cm2")),
        (None, Some(i)) => Some((i, "intensity_w_per_m2")),
        (None, None) => None,
        _ => return Err(r.err("drive", "intensity_w_per_m2", "give intensity in one unit only")),
    };
    let drive = match (d.photons, intensity) {
        (Some(n), None) => {
            if d.polarization.is_some() {
                return Err(r.err("drive", "polarization", "a Fock drive takes amplitude_squared_v2_per_m2"));
            }
            let amp = d
                .amplitude_squared_v2_per_m2
                .ok_or_else(|| r.err("drive", "amplitude_squared_v2_per_m2", "required with photons"))?;
            DriveField::fock(d.frequency_rad_per_s, n, amp).map_err(|e| r.core("drive", "amplitude_squared_v2_per_m2", e))?
        }
        (None, Some((i, key))) => {
            if d.amplitude_squared_v2_per_m2.is_some() {
                return Err(r.err("drive", "amplitude_squared_v2_per_m2", "a classical drive takes polarization"));
            }
            let pol = d.polarization.unwrap_or([1.0, 0.0, 0.0]);
            DriveField::classical(d.frequency_rad_per_s, i, pol).map_err(|e| r.core("drive", key, e))?
        }
        _ => return Err(r.err("drive", "", "give exactly one of photons or an intensity")),
    };

    let media: Vec<(f64, &str)> = match (raw.medium.refractive_index, &raw.medium.refractive_indices) {
        (Some(n), None) => vec![(n, "refractive_index")],
        (None, Some(list)) if !list.is_empty() => list.iter().map(|n| (*n, "refractive_indices")).collect(),
        _ => return Err(r.err("medium", "", "give refractive_index or a non-empty refractive_indices")),
    };
    let media = media
        .into_iter()
        .map(|(n, key)| {
            if n.is_nan() || n < 1.0 {
                Err(r.err("medium", key, format!("refractive index must be >= 1, got {n}")))
            } else {
                Medium::from_index(n).map_err(|e| r.core("medium", key, e))
            }
        })
        .collect::<Result<Vec<_>, _>>()?;

    let (sweep, method) = match &raw.sweep {
        None => (None, Method::General),
        Some(s) => {
            if !(s.z_min_m > 0.0 && s.z_min_m.is_finite()) {
                return Err(r.err("sweep", "z_min_m", "must be > 0"));
            }
            if !(s.z_max_m > s.z_min_m && s.z_max_m.is_finite()) {
                return Err(r.err("sweep", "z_max_m", "must be finite and greater than z_min_m"));
            }
            if s.points < 2 || s.points > SweepSpec::MAX_POINTS {
                return Err(r.err("sweep", "points", format!("must be in 2..={}", SweepSpec::MAX_POINTS)));
            }
            let spec = SweepSpec {
                z_min: s.z_min_m,
                z_max: s.z_max_m,
                points: s.points,
                spacing: s.spacing,
            };
            (Some(spec), s.method.unwrap_or(Method::General))
        }
    };

    let mut settings = QuadratureSettings::default();
    if let Some(q) = &raw.quadrature {
        settings.rel_tol = q.rel_tol.unwrap_or(settings.rel_tol);
        settings.abs_tol = q.abs_tol.unwrap_or(settings.abs_tol);
        settings.max_panels = q.max_panels.unwrap_or(settings.max_panels);
        settings.oscillations_per_panel = q.oscillations_per_panel.unwrap_or(settings.oscillations_per_panel);
    }
    if let Ok(value) = std::env::var(RELTOL_ENV) {
        settings.rel_tol = value.trim().parse().map_err(|_| ConfigError {
            origin: RELTOL_ENV.to_string(),
            line: None,
            field: None,
            message: format!("not a number: {value:?}"),
        })?;
    }
    if let Err(e) = settings.validate() {
        let key = match &e {
            fockcp_core::Error::InvalidParameter { name, .. } => *name,
            _ => "",
        };
        return Err(r.core("quadrature", key, e));
    }

    let config = Config {
        origin: origin.to_string(),
        atom,
        drive,
        media,
        sweep,
        method,
        settings,
    };
    check_method(&config, &r)?;
    Ok(config)
}

fn check_method(config: &Config, r: &Resolver) -> Result<(), ConfigError> {
    let probe = config
        .scenario(config.media[0], 1e-6)
        .map_err(|e| r.core("medium", "", e))?;
    match config.method {
        Method::General => Ok(()),
        Method::Parallel => probe
            .check_parallel()
            .map_err(|e| r.err("sweep", "method", format!("parallel method: {e}"))),
        Method::ClosedForm => {
            probe
                .check_parallel()
                .map_err(|e| r.err("sweep", "method", format!("closed-form method: {e}")))?;
            if config.media.iter().any(|m| *m != Medium::PerfectConductor) {
                return Err(r.err("sweep", "method", "closed-form method needs refractive_index = inf"));
            }
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BASE: &str = r#"
[atom]
transition_frequency_rad_per_s = 1.55e14
dipole_c_m = [5.85e-29, 0.0, 0.0]

[drive]
frequency_rad_per_s = 1.50e14
intensity_w_per_cm2 = 5.0

[medium]
refractive_index = 2.0
"#;

    #[test]
    fn presets_parse() {
        for p in [Preset::Fig4, Preset::Fig5, Preset::CsDefault] {
            let c = load_preset(p).unwrap();
            assert!(c.sweep.is_some(), "{}", p.name());
        }
        assert_eq!(load_preset(Preset::Fig5).unwrap().media.len(), 4);
        assert_eq!(load_preset(Preset::Fig4).unwrap().media, vec![Medium::PerfectConductor]);
    }

    #[test]
    fn intensity_units() {
        let c = parse(BASE, "t").unwrap();
        assert_eq!(
            fockcp_core::units::intensity(&c.drive, fockcp_core::units::IntensityMode::Classical).unwrap(),
            5e4
        );
    }

    #[test]
    fn index_below_one_located() {
        let e = parse(&BASE.replace("refractive_index = 2.0", "refractive_index = 0.5"), "t").unwrap_err();
        assert_eq!(e.line, Some(11));
        assert_eq!(e.field.as_deref(), Some("medium.refractive_index"));
        assert!(e.message.contains("refractive index must be >= 1"));
    }

    #[test]
    fn missing_drive_frequency_named() {
        let e = parse(&BASE.replace("frequency_rad_per_s = 1.50e14\n", ""), "t").unwrap_err();
        assert!(e.message.contains("frequency_rad_per_s"), "{e}");
        assert!(e.line.is_some());
    }

    #[test]
    fn unknown_key_rejected() {
        let e = parse(&BASE.replace("[medium]", "[medium]\ncolour = 3"), "t").unwrap_err();
        assert!(e.message.contains("colour"), "{e}");
    }

    #[test]
    fn resonance_left_to_evaluation() {
        let c = parse(&BASE.replace("1.50e14", "1.55e14"), "t").unwrap();
        assert!(c.scenario(c.media[0], 1e-6).unwrap().check_resonance().is_err());
    }

    #[test]
    fn sweep_bounds() {
        let with = |s: &str| format!("{BASE}\n[sweep]\n{s}\n");
        assert!(parse(&with("z_min_m = 1e-6\nz_max_m = 1e-7\npoints = 5\nspacing = \"log\""), "t").is_err());
        assert!(parse(&with("z_min_m = 1e-7\nz_max_m = 1e-6\npoints = 1\nspacing = \"log\""), "t").is_err());
        let c = parse(&with("z_min_m = 1e-7\nz_max_m = 1e-6\npoints = 10\nspacing = \"linear\""), "t").unwrap();
        let z = c.sweep.unwrap().distances();
        assert_eq!(z.len(), 10);
        assert_eq!(z[0], 1e-7);
        assert_eq!(z[9], 1e-6);
    }

    #[test]
    fn closed_form_needs_conductor() {
        let s = format!("{BASE}\n[sweep]\nz_min_m = 1e-7\nz_max_m = 1e-6\npoints = 3\nspacing = \"log\"\nmethod = \"closed-form\"\n");
        let e = parse(&s, "t").unwrap_err();
        assert_eq!(e.field.as_deref(), Some("sweep.method"));
    }

    #[test]
    fn fock_drive() {
        let s = BASE.replace(
            "intensity_w_per_cm2 = 5.0",
            "photons = 1000\namplitude_squared_v2_per_m2 = [1e4, 0.0, 0.0]",
        );
        let c = parse(&s, "t").unwrap();
        assert_eq!(c.drive.photons(), Some(1000));
    }
}
