use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use triqubath::model::DephasingPoint;
use triqubath::scalar::parse_scalar;
use triqubath::sweep::{self, output, Channel, Overrides, SweepConfig};
use triqubath::Error;

#[derive(Parser)]
#[command(name = "triqubath", version, about = "Three qubits dephasing in a common bath")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Class map over the (f, φ) grid: CSV rows, optional PPM image.
    Sweep {
        #[command(flatten)]
        common: Common,
        /// Write a class map image here.
        #[arg(long)]
        ppm: Option<PathBuf>,
    },
    /// Negativities and bounds along f at a single φ.
    Curve {
        #[command(flatten)]
        common: Common,
    },
    /// The f → ∞ state, its special case and negativities, as JSON.
    Asymptotic {
        #[command(flatten)]
        common: Common,
    },
    /// (t, f, φ) along the configured bath and time axis.
    Bathpath {
        #[command(flatten)]
        common: Common,
    },
    /// Full entanglement report at one (f, φ), as JSON.
    Point {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_parser = scalar)]
        f: f64,
    },
}

#[derive(Args)]
struct Common {
    /// JSON run configuration.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_parser = scalar)]
    lambda2: Option<f64>,
    #[arg(long, value_parser = scalar)]
    lambda3: Option<f64>,
    #[arg(long, value_parser = scalar)]
    phi: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Output file instead of the configured one; `-` for stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn scalar(s: &str) -> Result<f64, String> {
    parse_scalar(s).map_err(|e| e.to_string())
}

impl Common {
    fn load(&self, phi_overrides_grid: bool) -> triqubath::Result<SweepConfig> {
        let mut cfg = match &self.config {
            Some(p) => SweepConfig::from_path(p)?,
            None => SweepConfig::default(),
        };
        cfg.apply(&Overrides {
            lambda2: self.lambda2,
            lambda3: self.lambda3,
            phi: if phi_overrides_grid { self.phi } else { None },
            seed: self.seed,
            out: self.out.clone(),
        })?;
        Ok(cfg)
    }
}

fn write_to(path: Option<&Path>, bytes: &[u8]) -> triqubath::Result<()> {
    match path {
        Some(p) if p != Path::new("-") => std::fs::write(p, bytes)?,
        _ => std::io::stdout().lock().write_all(bytes)?,
    }
    Ok(())
}

fn json(value: &impl serde::Serialize) -> Vec<u8> {
    let mut s = serde_json::to_string_pretty(value).expect("serializable report");
    s.push('\n');
    s.into_bytes()
}

fn run(cli: Cli) -> triqubath::Result<()> {
    let threads = sweep::threads_from_env()?;
    match cli.command {
        Command::Sweep { common, ppm } => {
            let cfg = common.load(true)?;
            let rows = sweep::run_sweep(&cfg, threads)?;
            let mut csv = Vec::new();
            output::write_rows(&mut csv, &rows)?;
            write_to(cfg.output.csv.as_deref(), &csv)?;
            if let Some(path) = ppm.or(cfg.output.ppm.clone()) {
                std::fs::write(path, sweep::emit_map(&rows, Channel::Class)?)?;
            }
        }
        Command::Curve { common } => {
            let cfg = common.load(true)?;
            let rows = sweep::run_curve(&cfg, threads)?;
            let mut csv = Vec::new();
            output::write_rows(&mut csv, &rows)?;
            write_to(cfg.output.csv.as_deref(), &csv)?;
        }
        Command::Asymptotic { common } => {
            let cfg = common.load(false)?;
            let rho0 = cfg.initial_state.density_matrix()?;
            let report = sweep::run_asymptotic(&cfg.coupling()?, &rho0)?;
            write_to(common.out.as_deref(), &json(&report))?;
        }
        Command::Bathpath { common } => {
            let cfg = common.load(false)?;
            let (times, points) = sweep::run_bath_path(&cfg)?;
            let mut csv = Vec::new();
            output::write_path(&mut csv, &times, &points)?;
            write_to(cfg.output.csv.as_deref(), &csv)?;
        }
        Command::Point { common, f } => {
            let cfg = common.load(false)?;
            let phi = common.phi.ok_or_else(|| Error::Config {
                field: "--phi".into(),
                message: "required for a point".into(),
            })?;
            let p = DephasingPoint::new(f, phi)?;
            let report = sweep::point(&cfg, &p)?;
            write_to(common.out.as_deref(), &json(&report))?;
        }
    }
    Ok(())
}

fn report(kind: &str, message: &str, field: Option<&str>) {
    let mut v = serde_json::json!({ "error": kind, "message": message });
    if let Some(f) = field {
        v["field"] = serde_json::Value::from(f);
    }
    eprintln!("{v}");
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            report("usage", e.to_string().trim(), None);
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let field = match &e {
                Error::Config { field, .. } => Some(field.as_str()),
                _ => None,
            };
            report(e.kind(), &e.to_string(), field);
            ExitCode::from(if e.is_numerical() { 2 } else { 1 })
        }
    }
}
