//! JSON run configuration.
//!
//! ```json
//! {
//!   "coupling": {"lambda2": "2/3", "lambda3": "1/3"},
//!   "initial_state": "plus",
//!   "grid": {
//!     "f": {"min": 0, "max": 2, "count": 128},
//!     "phi": {"min": 0, "max": "381pi/128", "count": 128}
//!   },
//!   "optimizer": {"starts": 32, "seed": 0, "max_iterations": 2000},
//!   "thresholds": {"detection": 1e-9},
//!   "bath": {"kind": "ohmic", "eta": 0.05, "omega_c": 10, "beta": "inf"},
//!   "times": {"min": 0, "max": 5, "count": 51},
//!   "output": {"csv": "fig1.csv", "ppm": "fig1.ppm"}
//! }
//! ```
//!
//! `initial_state` is `"plus"`, `{"product": [[α1, β1], [α2, β2], [α3, β3]]}`
//! (each factor normalized on load; amplitudes are numbers, rational or π
//! strings, or `[re, im]` pairs) or `{"density_matrix": {"re": [[...]],
//! "im": [[...]]}}`.

use std::path::{Path, PathBuf};

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::bath::BathSpec;
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, DensityMatrix};
use crate::luopt::OptimizerConfig;
use crate::measures::DETECTION_THRESHOLD;
use crate::model::{initial_product_state, CouplingParams, ProductState};
use crate::scalar::Scalar;

/// Evenly spaced values `min + (max − min) i/(count − 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Axis {
    pub min: Scalar,
    pub max: Scalar,
    pub count: usize,
}

impl Axis {
    pub fn new(min: f64, max: f64, count: usize) -> Self {
        Self {
            min: Scalar(min),
            max: Scalar(max),
            count,
        }
    }

    pub fn single(value: f64) -> Self {
        Self::new(value, value, 1)
    }

    pub fn validate(&self, field: &str) -> Result<()> {
        let (lo, hi) = (self.min.0, self.max.0);
        if self.count == 0 {
            return Err(Error::config(format!("{field}.count"), "must be at least 1"));
        }
        if !(lo.is_finite() && hi.is_finite()) {
            return Err(Error::config(field, "bounds must be finite"));
        }
        if lo < 0.0 {
            return Err(Error::config(format!("{field}.min"), "must be nonnegative"));
        }
        if hi < lo {
            return Err(Error::config(format!("{field}.max"), "must not be below min"));
        }
        if self.count == 1 && hi != lo {
            return Err(Error::config(format!("{field}.count"), "a single point needs min = max"));
        }
        Ok(())
    }

    pub fn values(&self) -> Vec<f64> {
        let (lo, hi) = (self.min.0, self.max.0);
        if self.count == 1 {
            return vec![lo];
        }
        let last = (self.count - 1) as f64;
        (0..self.count)
            .map(|i| if i + 1 == self.count { hi } else { lo + (hi - lo) * (i as f64 / last) })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grid {
    pub f: Axis,
    pub phi: Axis,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Amplitude {
    Real(Scalar),
    Complex([Scalar; 2]),
}

impl Amplitude {
    fn value(&self) -> C64 {
        match self {
            Amplitude::Real(x) => C64::new(x.0, 0.0),
            Amplitude::Complex([re, im]) => C64::new(re.0, im.0),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixSpec {
    pub re: Vec<Vec<Scalar>>,
    #[serde(default)]
    pub im: Option<Vec<Vec<Scalar>>>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InitialState {
    #[default]
    Plus,
    Product([[Amplitude; 2]; 3]),
    DensityMatrix(MatrixSpec),
}

impl InitialState {
    pub fn density_matrix(&self) -> Result<DensityMatrix> {
        match self {
            InitialState::Plus => Ok(initial_product_state(&ProductState::plus())),
            InitialState::Product(factors) => {
                let f = factors.map(|[a, b]| [a.value(), b.value()]);
                let ps = ProductState::normalized(f)
                    .map_err(|e| Error::config("initial_state.product", e.to_string()))?;
                Ok(initial_product_state(&ps))
            }
            InitialState::DensityMatrix(spec) => {
                let n = spec.re.len();
                if n != 8 || spec.re.iter().any(|r| r.len() != 8) {
                    return Err(Error::config("initial_state.density_matrix.re", "must be 8x8"));
                }
                if let Some(im) = &spec.im {
                    if im.len() != 8 || im.iter().any(|r| r.len() != 8) {
                        return Err(Error::config("initial_state.density_matrix.im", "must be 8x8"));
                    }
                }
                let m = ComplexMatrix::from_fn(8, |i, j| {
                    let im = spec.im.as_ref().map_or(0.0, |m| m[i][j].0);
                    C64::new(spec.re[i][j].0, im)
                })?;
                DensityMatrix::new(m).map_err(|e| Error::config("initial_state.density_matrix", e.to_string()))
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Thresholds {
    pub detection: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Self {
            detection: DETECTION_THRESHOLD,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Output {
    pub csv: Option<PathBuf>,
    pub ppm: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    #[serde(default)]
    pub coupling: Option<CouplingParams>,
    #[serde(default)]
    pub initial_state: InitialState,
    #[serde(default)]
    pub grid: Option<Grid>,
    #[serde(default)]
    pub optimizer: OptimizerConfig,
    #[serde(default)]
    pub thresholds: Thresholds,
    #[serde(default)]
    pub bath: Option<BathSpec>,
    #[serde(default)]
    pub times: Option<Axis>,
    #[serde(default)]
    pub output: Output,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            coupling: None,
            initial_state: InitialState::Plus,
            grid: None,
            optimizer: OptimizerConfig::default(),
            thresholds: Thresholds::default(),
            bath: None,
            times: None,
            output: Output::default(),
        }
    }
}

/// Command-line replacements applied on top of a loaded config.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Overrides {
    pub lambda2: Option<f64>,
    pub lambda3: Option<f64>,
    pub phi: Option<f64>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
}

impl SweepConfig {
    pub fn from_json_str(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| {
            Error::config(
                format!("line {}, column {}", e.line(), e.column()),
                e.to_string(),
            )
        })
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::config("--config", format!("{}: {e}", path.display())))?;
        Self::from_json_str(&text)
    }

    pub fn apply(&mut self, o: &Overrides) -> Result<()> {
        if o.lambda2.is_some() || o.lambda3.is_some() {
            let (l2, l3) = match (self.coupling, o.lambda2, o.lambda3) {
                (_, Some(a), Some(b)) => (a, b),
                (Some(c), a, b) => (a.unwrap_or(c.lambda2()), b.unwrap_or(c.lambda3())),
                (None, _, _) => {
                    return Err(Error::config("coupling", "give both --lambda2 and --lambda3"));
                }
            };
            self.coupling =
                Some(CouplingParams::new(l2, l3).map_err(|e| Error::config("coupling", e.to_string()))?);
        }
        if let Some(phi) = o.phi {
            let f = self
                .grid
                .map(|g| g.f)
                .ok_or_else(|| Error::config("grid.f", "needed when overriding φ"))?;
            self.grid = Some(Grid { f, phi: Axis::single(phi) });
        }
        if let Some(seed) = o.seed {
            self.optimizer.seed = seed;
        }
        if let Some(out) = &o.out {
            self.output.csv = Some(out.clone());
        }
        Ok(())
    }

    pub fn coupling(&self) -> Result<CouplingParams> {
        self.coupling
            .ok_or_else(|| Error::config("coupling", "missing (set it in the config or with --lambda2/--lambda3)"))
    }

    pub fn grid(&self) -> Result<Grid> {
        let g = self.grid.ok_or_else(|| Error::config("grid", "missing"))?;
        g.f.validate("grid.f")?;
        g.phi.validate("grid.phi")?;
        Ok(g)
    }

    pub fn bath(&self) -> Result<&BathSpec> {
        self.bath.as_ref().ok_or_else(|| Error::config("bath", "missing"))
    }

    pub fn times(&self) -> Result<Axis> {
        let t = self.times.ok_or_else(|| Error::config("times", "missing"))?;
        t.validate("times")?;
        Ok(t)
    }

    pub fn validate_common(&self) -> Result<()> {
        self.optimizer.validate()?;
        let d = self.thresholds.detection;
        if !(d.is_finite() && d >= 0.0) {
            return Err(Error::config("thresholds.detection", "must be finite and nonnegative"));
        }
        Ok(())
    }
}
