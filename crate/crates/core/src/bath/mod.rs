//! From bath parameters and time to the dephasing coordinates `(f, φ)`.
//!
//! Units are `ħ = m = 1` unless a mode carries its own mass. For a discrete
//! bath
//!
//! ```text
//! f(t) = Σ_j g_j² (1 + 2n̄_j) / (2 m_j ω_j³) · (1 − cos ω_j t)
//! φ(t) = Σ_j g_j² c_j / (2 m_j ω_j²) · (t − sin(ω_j t)/ω_j)
//! ```
//!
//! with `c_j = 1 + 2n̄_j` or `c_j = 1` depending on [`PhiThermalFactor`].
//! The continuum replaces `g_j²/(2 m_j ω_j)` by `J(ω) dω`, here
//! `J(ω) = η ω e^{−ω/ω_c}`.

mod quadrature;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::model::DephasingPoint;
pub use quadrature::{integrate, Tolerance};

/// Spectral weight beyond `CUTOFF_SPAN · ω_c` is below `e^{−60}`.
const CUTOFF_SPAN: f64 = 60.0;
/// Below this `ωt`, the oscillating brackets use their Taylor series.
const SMALL_PHASE: f64 = 1e-3;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BathMode {
    pub g: f64,
    pub omega: f64,
    #[serde(default = "unit_mass")]
    pub m: f64,
}

fn unit_mass() -> f64 {
    1.0
}

impl BathMode {
    pub fn new(g: f64, omega: f64) -> Result<Self> {
        Self::with_mass(g, omega, 1.0)
    }

    pub fn with_mass(g: f64, omega: f64, m: f64) -> Result<Self> {
        let mode = Self { g, omega, m };
        mode.validate()?;
        Ok(mode)
    }

    fn validate(&self) -> Result<()> {
        if !self.g.is_finite() {
            return Err(Error::InvalidBath(format!("coupling g = {} is not finite", self.g)));
        }
        if !(self.omega.is_finite() && self.omega > 0.0) {
            return Err(Error::InvalidBath(format!("need ω > 0, got {}", self.omega)));
        }
        if !(self.m.is_finite() && self.m > 0.0) {
            return Err(Error::InvalidBath(format!("need m > 0, got {}", self.m)));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum BathModel {
    Discrete { modes: Vec<BathMode> },
    /// `J(ω) = η ω e^{−ω/ω_c}`.
    Ohmic { eta: f64, omega_c: f64 },
}

/// Whether `φ(t)` carries the thermal factor `1 + 2n̄`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PhiThermalFactor {
    /// `1 + 2n̄`, the same weight as in `f(t)`.
    #[default]
    Thermal,
    /// 1: the imaginary part of the correlation function of a harmonic bath
    /// does not depend on temperature.
    Unit,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawBathSpec", into = "RawBathSpec")]
pub struct BathSpec {
    model: BathModel,
    beta: f64,
    phi_thermal_factor: PhiThermalFactor,
}

#[derive(Serialize, Deserialize)]
struct RawBathSpec {
    #[serde(flatten)]
    model: BathModel,
    #[serde(default = "infinite", with = "beta_serde")]
    beta: f64,
    #[serde(default)]
    phi_thermal_factor: PhiThermalFactor,
}

fn infinite() -> f64 {
    f64::INFINITY
}

impl TryFrom<RawBathSpec> for BathSpec {
    type Error = Error;
    fn try_from(raw: RawBathSpec) -> Result<Self> {
        BathSpec::new(raw.model, raw.beta, raw.phi_thermal_factor)
    }
}

impl From<BathSpec> for RawBathSpec {
    fn from(s: BathSpec) -> Self {
        RawBathSpec {
            model: s.model,
            beta: s.beta,
            phi_thermal_factor: s.phi_thermal_factor,
        }
    }
}

/// `beta` as a JSON number, or `"inf"` for zero temperature.
mod beta_serde {
    use super::*;

    pub fn serialize<S: Serializer>(beta: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
        if beta.is_infinite() {
            s.serialize_str("inf")
        } else {
            s.serialize_f64(*beta)
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<f64, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Number(f64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Number(x) => Ok(x),
            Raw::Text(t) => match t.trim() {
                "inf" | "infinity" | "Infinity" | "∞" => Ok(f64::INFINITY),
                other => crate::scalar::parse_scalar(other).map_err(serde::de::Error::custom),
            },
        }
    }
}

impl BathSpec {
    pub fn new(model: BathModel, beta: f64, phi_thermal_factor: PhiThermalFactor) -> Result<Self> {
        if beta.is_nan() || beta <= 0.0 {
            return Err(Error::InvalidBath(format!("need β > 0 or +∞, got {beta}")));
        }
        match &model {
            BathModel::Discrete { modes } => {
                for mode in modes {
                    mode.validate()?;
                }
            }
            BathModel::Ohmic { eta, omega_c } => {
                if !(eta.is_finite() && *eta >= 0.0) {
                    return Err(Error::InvalidBath(format!("need η ≥ 0, got {eta}")));
                }
                if !(omega_c.is_finite() && *omega_c > 0.0) {
                    return Err(Error::InvalidBath(format!("need ω_c > 0, got {omega_c}")));
                }
            }
        }
        Ok(Self {
            model,
            beta,
            phi_thermal_factor,
        })
    }

    pub fn discrete(modes: Vec<BathMode>, beta: f64) -> Result<Self> {
        Self::new(BathModel::Discrete { modes }, beta, PhiThermalFactor::Thermal)
    }

    pub fn ohmic(eta: f64, omega_c: f64, beta: f64) -> Result<Self> {
        Self::new(BathModel::Ohmic { eta, omega_c }, beta, PhiThermalFactor::Thermal)
    }

    pub fn with_phi_thermal_factor(mut self, factor: PhiThermalFactor) -> Self {
        self.phi_thermal_factor = factor;
        self
    }

    pub fn model(&self) -> &BathModel {
        &self.model
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn phi_thermal_factor(&self) -> PhiThermalFactor {
        self.phi_thermal_factor
    }

    /// `Σ_j g_j² c_j / (2 m_j ω_j²)`, the large-time slope of `φ(t)`; for the
    /// ohmic model `∫ J(ω) c(ω) / ω dω`, infinite at finite temperature with
    /// the thermal factor in `φ`.
    pub fn phi_slope(&self) -> f64 {
        match &self.model {
            BathModel::Discrete { modes } => modes
                .iter()
                .map(|m| m.g * m.g * self.phi_factor(m.omega) / (2.0 * m.m * m.omega * m.omega))
                .sum(),
            BathModel::Ohmic { eta, omega_c } => {
                if self.beta.is_infinite() || self.phi_thermal_factor == PhiThermalFactor::Unit {
                    eta * omega_c
                } else {
                    // (1 + 2n̄) ~ 2/(βω) makes ∫ J c / ω diverge at ω → 0
                    f64::INFINITY
                }
            }
        }
    }

    fn thermal(&self, omega: f64) -> f64 {
        1.0 + 2.0 * nbar(self.beta, omega).expect("β validated at construction")
    }

    fn phi_factor(&self, omega: f64) -> f64 {
        match self.phi_thermal_factor {
            PhiThermalFactor::Thermal => self.thermal(omega),
            PhiThermalFactor::Unit => 1.0,
        }
    }
}

/// Bose occupation `1/(e^{βω} − 1)`; exactly 0 at `β = +∞`.
pub fn nbar(beta: f64, omega: f64) -> Result<f64> {
    if beta.is_nan() || beta <= 0.0 {
        return Err(Error::InvalidBath(format!("need β > 0 or +∞, got {beta}")));
    }
    if !(omega.is_finite() && omega > 0.0) {
        return Err(Error::InvalidBath(format!("need ω > 0, got {omega}")));
    }
    if beta.is_infinite() {
        return Ok(0.0);
    }
    Ok(1.0 / (beta * omega).exp_m1())
}

/// `(1 − cos x)/x²`.
fn one_minus_cos_over_sq(x: f64) -> f64 {
    if x.abs() < SMALL_PHASE {
        let x2 = x * x;
        0.5 - x2 / 24.0 + x2 * x2 / 720.0
    } else {
        let s = (0.5 * x).sin();
        2.0 * s * s / (x * x)
    }
}

/// `(x − sin x)/x³`.
fn x_minus_sin_over_cube(x: f64) -> f64 {
    if x.abs() < SMALL_PHASE {
        let x2 = x * x;
        1.0 / 6.0 - x2 / 120.0 + x2 * x2 / 5040.0
    } else {
        (x - x.sin()) / (x * x * x)
    }
}

fn check_time(t: f64) -> Result<()> {
    if !(t.is_finite() && t >= 0.0) {
        return Err(Error::InvalidBath(format!("need finite t ≥ 0, got {t}")));
    }
    Ok(())
}

/// Initial panels so each covers about half an oscillation of `cos ωt`.
fn panel_count(upper: f64, t: f64) -> usize {
    ((upper * t / std::f64::consts::PI).ceil() as usize).clamp(8, 200_000)
}

pub fn f_of_t(spec: &BathSpec, t: f64) -> Result<f64> {
    check_time(t)?;
    if t == 0.0 {
        return Ok(0.0);
    }
    match &spec.model {
        BathModel::Discrete { modes } => Ok(modes
            .iter()
            .map(|m| {
                m.g * m.g * spec.thermal(m.omega) / (2.0 * m.m * m.omega)
                    * t
                    * t
                    * one_minus_cos_over_sq(m.omega * t)
            })
            .sum()),
        BathModel::Ohmic { eta, omega_c } => {
            let upper = CUTOFF_SPAN * omega_c;
            // J(ω)(1 + 2n̄)(1 − cos ωt)/ω², finite as ω → 0
            let integrand = |w: f64| {
                let shape = t * t * one_minus_cos_over_sq(w * t);
                if w == 0.0 {
                    return if spec.beta.is_infinite() {
                        0.0
                    } else {
                        2.0 * eta / spec.beta * shape
                    };
                }
                eta * w * (-w / omega_c).exp() * spec.thermal(w) * shape
            };
            integrate(integrand, 0.0, upper, panel_count(upper, t), Tolerance::default())
        }
    }
}

pub fn phi_of_t(spec: &BathSpec, t: f64) -> Result<f64> {
    check_time(t)?;
    if t == 0.0 {
        return Ok(0.0);
    }
    match &spec.model {
        BathModel::Discrete { modes } => Ok(modes
            .iter()
            .map(|m| {
                m.g * m.g * spec.phi_factor(m.omega) / (2.0 * m.m)
                    * t
                    * t
                    * t
                    * x_minus_sin_over_cube(m.omega * t)
            })
            .sum()),
        BathModel::Ohmic { eta, omega_c } => {
            let upper = CUTOFF_SPAN * omega_c;
            // J(ω) c(ω) (t − sin ωt/ω)/ω, vanishing at ω = 0
            let integrand = |w: f64| {
                if w == 0.0 {
                    return 0.0;
                }
                let shape = t * t * t * x_minus_sin_over_cube(w * t);
                eta * (-w / omega_c).exp() * spec.phi_factor(w) * w * w * shape
            };
            integrate(integrand, 0.0, upper, panel_count(upper, t), Tolerance::default())
        }
    }
}

/// Times and the corresponding `(f, φ)` points.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BathPath {
    pub times: Vec<f64>,
    pub points: Vec<DephasingPoint>,
}

pub fn path(spec: &BathSpec, times: &[f64]) -> Result<BathPath> {
    for (i, &t) in times.iter().enumerate() {
        check_time(t)?;
        if i > 0 && t < times[i - 1] {
            return Err(Error::InvalidBath(format!(
                "times must be ascending, found {} after {}",
                t,
                times[i - 1]
            )));
        }
    }
    let points = times
        .iter()
        .map(|&t| {
            let f = f_of_t(spec, t)?;
            let phi = phi_of_t(spec, t)?;
            // clamp roundoff below zero; the coordinates are nonnegative
            DephasingPoint::new(f.max(0.0), phi.max(0.0))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BathPath {
        times: times.to_vec(),
        points,
    })
}

/// Midpoint discretization of the ohmic density into `n` modes on
/// `(0, span·ω_c)`, with `g_k = √(2 ω_k J(ω_k) Δω)`.
pub fn discretize_ohmic(eta: f64, omega_c: f64, n: usize, span: f64) -> Result<Vec<BathMode>> {
    if n == 0 || !(span.is_finite() && span > 0.0) {
        return Err(Error::InvalidBath("need n ≥ 1 and span > 0".into()));
    }
    let dw = span * omega_c / n as f64;
    (0..n)
        .map(|k| {
            let w = (k as f64 + 0.5) * dw;
            let j = eta * w * (-w / omega_c).exp();
            BathMode::new((2.0 * w * j * dw).sqrt(), w)
        })
        .collect()
}
