use std::io::{self, Write};

use fockcp_core::units::{
    intensity, polarizability, Excitation, IntensityMode, NaturalScenario, PhysicalConstants,
};
use serde::Serialize;

use crate::config::{Config, Method, Spacing, SweepSpec};
use crate::sweep::{medium_label, OutputRow};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// `key = value` lines describing the resolved configuration.
pub fn describe(config: &Config) -> Vec<String> {
    let k = PhysicalConstants::CODATA2018;
    let mut out = vec![
        format!("source = {}", config.origin),
        format!(
            "constants = CODATA 2018: hbar {:e} J s, c {:e} m/s, epsilon0 {:e} F/m",
            k.hbar, k.c, k.epsilon0
        ),
        format!("atom.transition_frequency_rad_per_s = {:e}", config.atom.omega0()),
        format!("atom.dipole_squared_c2_m2 = {}", triple(config.atom.d2())),
        format!("drive.frequency_rad_per_s = {:e}", config.drive.omega_l()),
    ];
    match config.drive.excitation() {
        Excitation::Photons(n) => {
            out.push(format!("drive.photons = {n}"));
            out.push(format!("drive.amplitude_squared_v2_per_m2 = {}", triple(config.drive.amplitude2())));
            if let Ok(i) = intensity(&config.drive, IntensityMode::Exact) {
                out.push(format!("drive.intensity_exact_w_per_m2 = {i:e}"));
            }
        }
        Excitation::ClassicalIntensity(i) => {
            out.push(format!("drive.intensity_w_per_m2 = {i:e}"));
            out.push(format!("drive.polarization_weights = {}", triple(config.drive.amplitude2())));
        }
    }
    if let Ok(i) = intensity(&config.drive, IntensityMode::Classical) {
        out.push(format!("drive.intensity_classical_w_per_m2 = {i:e}"));
    }
    if let Ok(alpha) = polarizability(&config.atom, config.drive.omega_l()) {
        out.push(format!("polarizability_c2_m2_per_j = {alpha:e}"));
    }
    let media: Vec<String> = config.media.iter().map(|m| medium_label(*m)).collect();
    out.push(format!("medium = {}", media.join(", ")));
    if let Ok(s) = config.scenario(config.media[0], 1.0) {
        let n = NaturalScenario::from_si(&s);
        out.push(format!("natural.omega0_per_m = {:e}", n.omega0));
        out.push(format!("natural.omega_l_per_m = {:e}", n.omega_l));
        out.push(format!("natural.dipole_squared_m2 = {}", triple(n.d2)));
        out.push(format!("natural.field_squared_per_m3 = {}", triple(n.e2)));
        out.push(format!("natural.photons = {}", n.photons));
        let detuning = (s.atom.omega0() - s.drive.omega_l()).abs() / s.atom.omega0();
        out.push(format!("relative_detuning = {detuning:e}"));
        if s.near_resonance() {
            out.push("warning = drive inside the resonance guard band".to_string());
        }
    }
    if let Some(sw) = &config.sweep {
        out.push(format!(
            "sweep = z from {:e} m to {:e} m, {} points, {}",
            sw.z_min,
            sw.z_max,
            sw.points,
            match sw.spacing {
                Spacing::Linear => "linear",
                Spacing::Log => "log",
            }
        ));
    }
    out.push(format!("method = {}", method_name(config.method)));
    let q = &config.settings;
    out.push(format!(
        "quadrature = rel_tol {:e}, abs_tol {:e}, max_panels {}, oscillations_per_panel {}",
        q.rel_tol, q.abs_tol, q.max_panels, q.oscillations_per_panel
    ));
    out
}

fn triple(v: [f64; 3]) -> String {
    format!("[{:e}, {:e}, {:e}]", v[0], v[1], v[2])
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::General => "general",
        Method::Parallel => "parallel",
        Method::ClosedForm => "closed-form",
    }
}

fn unix_time() -> u64 {
    std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

pub fn write_csv(w: &mut dyn Write, config: &Config, columns: &[String], rows: &[OutputRow]) -> io::Result<()> {
    writeln!(w, "# fockcp {}", env!("CARGO_PKG_VERSION"))?;
    writeln!(w, "# generated_unix_s = {}", unix_time())?;
    for line in describe(config) {
        writeln!(w, "# {line}")?;
    }
    writeln!(w, "# units = z in m, zeta dimensionless, shifts and models in J")?;
    writeln!(w, "{}", columns.join(","))?;
    for row in rows {
        let cells: Vec<String> = row.values().iter().map(|v| format!("{v:.16e}")).collect();
        writeln!(w, "{}", cells.join(","))?;
    }
    Ok(())
}

#[derive(Serialize)]
struct JsonDocument<'a> {
    tool: &'static str,
    version: &'static str,
    generated_unix_s: u64,
    configuration: Vec<String>,
    sweep: Option<&'a SweepSpec>,
    units: &'static str,
    columns: &'a [String],
    rows: Vec<Vec<f64>>,
}

pub fn write_json(w: &mut dyn Write, config: &Config, columns: &[String], rows: &[OutputRow]) -> io::Result<()> {
    let doc = JsonDocument {
        tool: "fockcp",
        version: env!("CARGO_PKG_VERSION"),
        generated_unix_s: unix_time(),
        configuration: describe(config),
        sweep: config.sweep.as_ref(),
        units: "z in m, zeta dimensionless, shifts and models in J",
        columns,
        rows: rows.iter().map(|r| r.values()).collect(),
    };
    serde_json::to_writer_pretty(&mut *w, &doc)?;
    writeln!(w)
}
