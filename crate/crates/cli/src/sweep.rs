use fockcp_core::units::Medium;
use fockcp_core::{pc_asymptotic, pc_decompose, pc_shift, shift_general, shift_parallel_dielectric, PcPart, Regime};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{Config, Method, SweepSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize)]
pub enum Compare {
    /// −I α²/(32π c ε₀² z³).
    NearField,
    /// I α² ω_L² cos(2ω_L z/c)/(8π c³ ε₀² z).
    Retarded,
    /// The −cosζ/ζ³ term alone.
    PriorModel,
}

impl Compare {
    fn column(self) -> &'static str {
        match self {
            Compare::NearField => "near_field_model",
            Compare::Retarded => "retarded_model",
            Compare::PriorModel => "prior_model",
        }
    }
}

/// One distance: (traveling, evanescent, total) per medium, then comparison columns.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutputRow {
    pub z: f64,
    pub zeta: f64,
    pub shifts: Vec<[f64; 3]>,
    pub compare: Vec<f64>,
}

impl OutputRow {
    pub fn values(&self) -> Vec<f64> {
        let mut v = vec![self.z, self.zeta];
        v.extend(self.shifts.iter().flatten());
        v.extend(&self.compare);
        v
    }
}

pub fn medium_label(m: Medium) -> String {
    match m {
        Medium::PerfectConductor => "pc".to_string(),
        Medium::Dielectric(n) => format!("n{n}"),
    }
}

pub fn columns(config: &Config, compare: &[Compare]) -> Vec<String> {
    let mut cols = vec!["z".to_string(), "zeta".to_string()];
    let single = config.media.len() == 1;
    for m in &config.media {
        for part in ["shift_tr", "shift_ev", "shift_total"] {
            cols.push(if single { part.to_string() } else { format!("{part}_{}", medium_label(*m)) });
        }
    }
    cols.extend(compare.iter().map(|c| c.column().to_string()));
    cols
}

fn row(config: &Config, compare: &[Compare], z: f64) -> fockcp_core::Result<OutputRow> {
    let mut shifts = Vec::with_capacity(config.media.len());
    let mut zeta = 0.0;
    for &medium in &config.media {
        let s = config.scenario(medium, z)?;
        zeta = s.zeta();
        let (tr, ev) = match config.method {
            Method::General => {
                let r = shift_general(&s, &config.settings)?;
                (r.traveling, r.evanescent)
            }
            Method::Parallel => {
                let r = shift_parallel_dielectric(&s, &config.settings)?;
                (r.traveling, r.evanescent)
            }
            Method::ClosedForm => (pc_shift(PcPart::Traveling, &s)?, pc_shift(PcPart::Evanescent, &s)?),
        };
        shifts.push([tr, ev, tr + ev]);
    }
    let base = config.scenario(config.media[0], z)?;
    let compare = compare
        .iter()
        .map(|c| match c {
            Compare::NearField => pc_asymptotic(Regime::NearField, &base),
            Compare::Retarded => pc_asymptotic(Regime::Retarded, &base),
            Compare::PriorModel => pc_decompose(&base).map(|d| d.term_cos3),
        })
        .collect::<fockcp_core::Result<Vec<_>>>()?;
    Ok(OutputRow { z, zeta, shifts, compare })
}

/// Rows in distance order; the first failing distance (in order) is reported.
pub fn run(config: &Config, sweep: &SweepSpec, compare: &[Compare], parallel: bool) -> fockcp_core::Result<Vec<OutputRow>> {
    let z = sweep.distances();
    if parallel {
        let rows: Vec<_> = z.par_iter().map(|&z| row(config, compare, z)).collect();
        rows.into_iter().collect()
    } else {
        z.iter().map(|&z| row(config, compare, z)).collect()
    }
}
