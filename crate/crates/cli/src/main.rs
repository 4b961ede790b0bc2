mod config;
mod output;
mod sweep;

use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::{Config, ConfigError, Preset};
use output::Format;
use sweep::Compare;

#[derive(Parser)]
#[command(name = "fockcp", version, about = "Resonant Casimir-Polder shift of a driven atom near a half-space")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the shift over a distance sweep.
    Sweep(SweepArgs),
    /// Parse a configuration and print it in SI and natural units.
    Validate {
        #[arg(long)]
        config: PathBuf,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum PresetArg {
    Fig4,
    Fig5,
    CsDefault,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, required_unless_present = "preset", conflicts_with = "preset")]
    config: Option<PathBuf>,
    #[arg(long, value_enum)]
    preset: Option<PresetArg>,
    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Extra perfect-conductor model columns (repeatable).
    #[arg(long, value_enum)]
    compare: Vec<Compare>,
    /// Evaluate distances on all cores.
    #[arg(long)]
    parallel: bool,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

enum Failure {
    Config(ConfigError),
    Resonant(String),
    Tolerance(String),
    Other(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Other(_) => 1,
            Failure::Config(_) => 2,
            Failure::Resonant(_) => 3,
            Failure::Tolerance(_) => 4,
        }
    }

    fn from_core(e: fockcp_core::Error, origin: &str) -> Self {
        use fockcp_core::Error as E;
        match e {
            E::ResonantDrive { .. } => Failure::Resonant(e.to_string()),
            E::ToleranceNotMet { .. } => Failure::Tolerance(e.to_string()),
            E::InvalidParameter { .. } | E::NotParallel(_) | E::MissingPhotonNumber => Failure::Config(ConfigError {
                origin: origin.to_string(),
                line: None,
                field: None,
                message: e.to_string(),
            }),
            _ => Failure::Other(e.to_string()),
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Config(e) => write!(f, "config error: {e}"),
            Failure::Resonant(m) => write!(f, "resonant drive: {m}"),
            Failure::Tolerance(m) => write!(f, "tolerance not met: {m}"),
            Failure::Other(m) => write!(f, "error: {m}"),
        }
    }
}

fn load(args: &SweepArgs) -> Result<Config, Failure> {
    match (&args.config, args.preset) {
        (Some(path), _) => config::load_file(path),
        (None, Some(p)) => config::load_preset(match p {
            PresetArg::Fig4 => Preset::Fig4,
            PresetArg::Fig5 => Preset::Fig5,
            PresetArg::CsDefault => Preset::CsDefault,
        }),
        (None, None) => unreachable!("clap requires --config or --preset"),
    }
    .map_err(Failure::Config)
}

fn run_sweep(args: &SweepArgs) -> Result<(), Failure> {
    let config = load(args)?;
    let spec = config.sweep.ok_or_else(|| {
        Failure::Config(ConfigError {
            origin: config.origin.clone(),
            line: None,
            field: Some("sweep".into()),
            message: "a [sweep] section is required".into(),
        })
    })?;
    if !args.compare.is_empty() {
        let probe = config
            .scenario(config.media[0], spec.z_min)
            .map_err(|e| Failure::from_core(e, &config.origin))?;
        probe.check_parallel().map_err(|e| {
            Failure::Config(ConfigError {
                origin: config.origin.clone(),
                line: None,
                field: Some("--compare".into()),
                message: format!("model columns need field and dipole along x ({e})"),
            })
        })?;
    }
    let columns = sweep::columns(&config, &args.compare);

    // Opened before the sweep so an unwritable path fails fast; removed on any later failure.
    let file = match &args.out {
        Some(path) => Some(
            File::create(path).map_err(|e| Failure::Other(format!("cannot create {}: {e}", path.display())))?,
        ),
        None => None,
    };
    let result = sweep::run(&config, &spec, &args.compare, args.parallel)
        .map_err(|e| Failure::from_core(e, &config.origin))
        .and_then(|rows| {
            let mut sink: Box<dyn Write> = match file {
                Some(f) => Box::new(BufWriter::new(f)),
                None => Box::new(BufWriter::new(io::stdout().lock())),
            };
            let written = match args.format {
                Format::Csv => output::write_csv(&mut sink, &config, &columns, &rows),
                Format::Json => output::write_json(&mut sink, &config, &columns, &rows),
            };
            match written.and_then(|_| sink.flush()) {
                Err(e) if e.kind() != io::ErrorKind::BrokenPipe => {
                    return Err(Failure::Other(format!("write failed: {e}")));
                }
                _ => {}
            }
            Ok(rows.len())
        });
    match result {
        Ok(n) => {
            if let Some(path) = &args.out {
                log::info!("wrote {n} rows to {}", path.display());
            }
            Ok(())
        }
        Err(e) => {
            if let Some(path) = &args.out {
                remove_partial(path);
            }
            Err(e)
        }
    }
}

fn remove_partial(path: &Path) {
    if let Err(e) = fs::remove_file(path) {
        log::warn!("could not remove partial output {}: {e}", path.display());
    }
}

fn run_validate(path: &Path) -> Result<(), Failure> {
    let config = config::load_file(path).map_err(Failure::Config)?;
    for line in output::describe(&config) {
        println!("{line}");
    }
    let probe = config
        .scenario(config.media[0], 1.0)
        .map_err(|e| Failure::from_core(e, &config.origin))?;
    if let Err(e) = probe.check_resonance() {
        return Err(Failure::Config(ConfigError {
            origin: config.origin.clone(),
            line: None,
            field: Some("drive.frequency_rad_per_s".into()),
            message: e.to_string(),
        }));
    }
    println!("status = ok");
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Sweep(args) => run_sweep(args),
        Command::Validate { config } => run_validate(config),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("fockcp: {e}");
            ExitCode::from(e.code())
        }
    }
}
