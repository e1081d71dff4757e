//! Grid sweeps, curves, asymptotic reports, bath paths and single points.
//!
//! Every grid point draws its optimizer starts from a generator keyed by the
//! config seed and the point's row index, and results land in a table indexed
//! by position, so output does not depend on the number of worker threads.

pub mod config;
pub mod output;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bath;
use crate::error::{Error, Result};
use crate::linalg::DensityMatrix;
use crate::measures::{classify_with_threshold, negativities, EntanglementReport};
use crate::model::{asymptotic_state, detect_special_case, evolve, CouplingParams, DephasingPoint, SpecialCase};

pub use config::{Axis, Grid, InitialState, Overrides, SweepConfig};
pub use output::{emit_map, format_rational, read_rows, write_rows, Channel, SweepRow};

/// Environment variable holding the worker count.
pub const THREADS_ENV: &str = "TRIQUBATH_THREADS";

/// Worker count from [`THREADS_ENV`], if set to a positive integer.
pub fn threads_from_env() -> Result<Option<usize>> {
    match std::env::var(THREADS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(Error::config(THREADS_ENV, format!("expected a positive integer, got `{v}`"))),
        },
        Err(_) => Ok(None),
    }
}

fn pool(threads: Option<usize>) -> Result<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        b = b.num_threads(n);
    }
    b.build().map_err(|e| Error::config(THREADS_ENV, e.to_string()))
}

fn evaluate(
    cfg: &SweepConfig,
    rho0: &DensityMatrix,
    c: &CouplingParams,
    points: &[(f64, f64)],
    threads: Option<usize>,
) -> Result<Vec<SweepRow>> {
    let pool = pool(threads)?;
    pool.install(|| {
        points
            .par_iter()
            .enumerate()
            .map(|(index, &(f, phi))| {
                let p = DephasingPoint::new(f, phi)?;
                let rho = evolve(rho0, c, &p)?;
                let r = classify_with_threshold(&rho, &cfg.optimizer, index as u64, cfg.thresholds.detection)?;
                Ok(SweepRow::new(f, phi, &r))
            })
            .collect()
    })
}

/// One row per grid point, `φ` outer and `f` inner.
pub fn run_sweep(cfg: &SweepConfig, threads: Option<usize>) -> Result<Vec<SweepRow>> {
    cfg.validate_common()?;
    let c = cfg.coupling()?;
    let grid = cfg.grid()?;
    let rho0 = cfg.initial_state.density_matrix()?;
    let fs = grid.f.values();
    let points: Vec<(f64, f64)> = grid
        .phi
        .values()
        .into_iter()
        .flat_map(|phi| fs.iter().map(move |&f| (f, phi)))
        .collect();
    evaluate(cfg, &rho0, &c, &points, threads)
}

/// A sweep over `f` at one `φ`.
pub fn run_curve(cfg: &SweepConfig, threads: Option<usize>) -> Result<Vec<SweepRow>> {
    let grid = cfg.grid()?;
    if grid.phi.count != 1 {
        return Err(Error::config("grid.phi", "a curve needs a single φ (count 1, or --phi)"));
    }
    run_sweep(cfg, threads)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticReport {
    pub lambda2: f64,
    pub lambda3: f64,
    pub case: SpecialCase,
    /// Eigenspaces of the coupling operator, as basis indices.
    pub eigenspaces: Vec<Vec<usize>>,
    /// Real and imaginary parts, entries written as fractions where exact.
    pub re: Vec<Vec<String>>,
    pub im: Vec<Vec<String>>,
    pub negativity: [f64; 3],
    #[serde(skip)]
    pub state: Option<DensityMatrix>,
}

/// The `f → ∞` state of `rho0`, its special case and negativities.
pub fn run_asymptotic(c: &CouplingParams, rho0: &DensityMatrix) -> Result<AsymptoticReport> {
    let state = asymptotic_state(c, rho0)?;
    let m = state.matrix();
    let table = |part: fn(num_complex::Complex64) -> f64| -> Vec<Vec<String>> {
        (0..8)
            .map(|i| (0..8).map(|j| format_rational(part(m[(i, j)]))).collect())
            .collect()
    };
    Ok(AsymptoticReport {
        lambda2: c.lambda2(),
        lambda3: c.lambda3(),
        case: detect_special_case(c),
        eigenspaces: crate::model::eigenspaces(c),
        re: table(|z| z.re),
        im: table(|z| z.im),
        negativity: negativities(&state)?,
        state: Some(state),
    })
}

/// `(t, f(t), φ(t))` on the configured time axis.
pub fn run_bath_path(cfg: &SweepConfig) -> Result<(Vec<f64>, Vec<(f64, f64)>)> {
    let spec = cfg.bath()?;
    let times = cfg.times()?.values();
    let p = bath::path(spec, &times)?;
    Ok((p.times, p.points.iter().map(|q| (q.f, q.phi)).collect()))
}

/// Full report at one point, optimizer keyed by stream 0.
pub fn point(cfg: &SweepConfig, p: &DephasingPoint) -> Result<EntanglementReport> {
    cfg.validate_common()?;
    let c = cfg.coupling()?;
    let rho0 = cfg.initial_state.density_matrix()?;
    let rho = evolve(&rho0, &c, p)?;
    classify_with_threshold(&rho, &cfg.optimizer, 0, cfg.thresholds.detection)
}
