//! Three qubits coupled through `S = σz⊗1⊗1 + λ2 1⊗σz⊗1 + λ3 1⊗1⊗σz` to a
//! common harmonic bath.
//!
//! The reduced state evolves exactly in the eigenbasis `|jkl⟩` of `S`:
//!
//! ```text
//! ⟨s|ρ|s'⟩ ← exp(−(s − s')² f + i (s² − s'²) φ) ⟨s|ρ0|s'⟩
//! ```
//!
//! so the whole dynamics is a path in the `(f, φ)` quadrant; the bath module
//! supplies that path from physical parameters.

use std::fmt;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, DensityMatrix, PureState};
use crate::scalar::parse_scalar;

/// Tolerance for coincidences between couplings or between eigenvalues of `S`.
pub const DEGENERACY_TOL: f64 = 1e-9;

/// Relative coupling strengths of qubits 2 and 3; qubit 1 couples with
/// strength 1 and `1 ≥ λ2 ≥ λ3 ≥ 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawCoupling", into = "RawCoupling")]
pub struct CouplingParams {
    lambda2: f64,
    lambda3: f64,
}

#[derive(Serialize, Deserialize)]
struct RawCoupling {
    lambda2: crate::scalar::Scalar,
    lambda3: crate::scalar::Scalar,
}

impl TryFrom<RawCoupling> for CouplingParams {
    type Error = Error;
    fn try_from(raw: RawCoupling) -> Result<Self> {
        CouplingParams::new(raw.lambda2.0, raw.lambda3.0)
    }
}

impl From<CouplingParams> for RawCoupling {
    fn from(c: CouplingParams) -> Self {
        RawCoupling {
            lambda2: c.lambda2.into(),
            lambda3: c.lambda3.into(),
        }
    }
}

impl CouplingParams {
    pub fn new(lambda2: f64, lambda3: f64) -> Result<Self> {
        if !(lambda2.is_finite() && lambda3.is_finite()) {
            return Err(Error::InvalidCoupling("non-finite coupling".into()));
        }
        if !(1.0 >= lambda2 && lambda2 >= lambda3 && lambda3 >= 0.0) {
            return Err(Error::InvalidCoupling(format!(
                "need 1 ≥ λ2 ≥ λ3 ≥ 0, got λ2 = {lambda2}, λ3 = {lambda3}"
            )));
        }
        Ok(Self { lambda2, lambda3 })
    }

    /// Accepts anything [`parse_scalar`] understands, e.g. `"2/3"` or `"pi/4"`.
    pub fn parse(lambda2: &str, lambda3: &str) -> Result<Self> {
        Self::new(parse_scalar(lambda2)?, parse_scalar(lambda3)?)
    }

    pub fn lambda2(&self) -> f64 {
        self.lambda2
    }

    pub fn lambda3(&self) -> f64 {
        self.lambda3
    }

    /// `(λ1, λ2, λ3)` with `λ1 = 1`.
    pub fn lambdas(&self) -> [f64; 3] {
        [1.0, self.lambda2, self.lambda3]
    }
}

impl fmt::Display for CouplingParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "λ2 = {}, λ3 = {}", self.lambda2, self.lambda3)
    }
}

/// Point `(f, φ)` of the dephasing quadrant.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DephasingPoint {
    pub f: f64,
    pub phi: f64,
}

impl DephasingPoint {
    pub fn new(f: f64, phi: f64) -> Result<Self> {
        if !(f.is_finite() && phi.is_finite() && f >= 0.0 && phi >= 0.0) {
            return Err(Error::InvalidPoint(format!(
                "need finite f ≥ 0 and φ ≥ 0, got ({f}, {phi})"
            )));
        }
        Ok(Self { f, phi })
    }

    pub const ORIGIN: DephasingPoint = DephasingPoint { f: 0.0, phi: 0.0 };
}

/// `|φ1⟩|φ2⟩|φ3⟩` with `|φj⟩ = αj|0⟩ + βj|1⟩`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProductState {
    factors: [[C64; 2]; 3],
}

impl ProductState {
    pub fn new(factors: [[C64; 2]; 3]) -> Result<Self> {
        for (j, [a, b]) in factors.iter().enumerate() {
            let n = a.norm_sqr() + b.norm_sqr();
            if !n.is_finite() || (n - 1.0).abs() > 1e-12 {
                return Err(Error::InvalidState(format!(
                    "factor {} has squared norm {n}",
                    j + 1
                )));
            }
        }
        Ok(Self { factors })
    }

    /// Normalizes each factor; fails on a zero factor.
    pub fn normalized(factors: [[C64; 2]; 3]) -> Result<Self> {
        let mut out = factors;
        for (j, f) in out.iter_mut().enumerate() {
            let n = (f[0].norm_sqr() + f[1].norm_sqr()).sqrt();
            if !(n.is_finite() && n > 0.0) {
                return Err(Error::InvalidState(format!("factor {} is zero", j + 1)));
            }
            f[0] /= n;
            f[1] /= n;
        }
        Self::new(out)
    }

    /// `|+++⟩`.
    pub fn plus() -> Self {
        let h = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        Self {
            factors: [[h, h]; 3],
        }
    }

    pub fn factors(&self) -> &[[C64; 2]; 3] {
        &self.factors
    }

    /// Amplitudes in the computational basis.
    pub fn state(&self) -> PureState {
        let mut amps = Vec::with_capacity(8);
        for idx in 0..8 {
            let mut a = C64::new(1.0, 0.0);
            for (j, f) in self.factors.iter().enumerate() {
                a *= f[(idx >> (2 - j)) & 1];
            }
            amps.push(a);
        }
        PureState::normalized(amps).expect("product of normalized factors")
    }
}

/// Eigenvalues `s_jkl = (−1)^j + (−1)^k λ2 + (−1)^l λ3` indexed by `4j + 2k + l`.
pub fn eigenvalues_s(c: &CouplingParams) -> [f64; 8] {
    let sign = |bit: usize| if bit == 0 { 1.0 } else { -1.0 };
    let mut s = [0.0; 8];
    for (idx, v) in s.iter_mut().enumerate() {
        *v = sign(idx >> 2 & 1) + sign(idx >> 1 & 1) * c.lambda2 + sign(idx & 1) * c.lambda3;
    }
    s
}

fn require_three_qubits(rho: &DensityMatrix) -> Result<()> {
    if rho.dim() != 8 {
        return Err(Error::Shape(format!(
            "expected an 8x8 three-qubit state, got {}x{}",
            rho.dim(),
            rho.dim()
        )));
    }
    Ok(())
}

/// Exact reduced state at `(f, φ)`.
pub fn evolve(rho0: &DensityMatrix, c: &CouplingParams, p: &DephasingPoint) -> Result<DensityMatrix> {
    require_three_qubits(rho0)?;
    let s = eigenvalues_s(c);
    let m0 = rho0.matrix();
    let m = ComplexMatrix::from_fn(8, |a, b| {
        if a == b {
            return m0[(a, b)];
        }
        let ds = s[a] - s[b];
        let decay = (-ds * ds * p.f).exp();
        let angle = (s[a] * s[a] - s[b] * s[b]) * p.phi;
        m0[(a, b)] * C64::from_polar(decay, angle)
    })?;
    Ok(DensityMatrix::from_trusted(m))
}

/// Rank-one projector onto the product state.
pub fn initial_product_state(ps: &ProductState) -> DensityMatrix {
    ps.state().projector()
}

/// Maps the state evolved from `|+++⟩` to the state evolved from `ps` at the
/// same `(f, φ)`, using `F = ⊗_j √2 diag(αj, βj)` (which sends `|+++⟩` to
/// `ps`). The result is `FρF†` renormalized.
pub fn diagonal_gl_transform(ps: &ProductState, rho_plus: &DensityMatrix) -> Result<DensityMatrix> {
    require_three_qubits(rho_plus)?;
    for (j, [a, b]) in ps.factors.iter().enumerate() {
        if a.norm() < 1e-12 || b.norm() < 1e-12 {
            return Err(Error::DegenerateFactor { qubit: j + 1 });
        }
    }
    let scale = std::f64::consts::SQRT_2;
    let d: Vec<C64> = (0..8)
        .map(|idx| {
            (0..3).fold(C64::new(1.0, 0.0), |acc, j| {
                acc * ps.factors[j][(idx >> (2 - j)) & 1] * scale
            })
        })
        .collect();
    let m = rho_plus.matrix();
    let out = ComplexMatrix::from_fn(8, |a, b| d[a] * m[(a, b)] * d[b].conj())?;
    let tr = out.trace().re;
    Ok(DensityMatrix::from_trusted(out.scale_real(1.0 / tr)))
}

/// Ratio `τ3(ρ(f, φ; ps)) / τ3(ρ(f, φ; +++))` for the transformation used in
/// [`diagonal_gl_transform`]: the product of `|det(√2 diag(αj, βj))|`, i.e.
/// `8 |α1β1 α2β2 α3β3|`. Equal to 1 for `|+++⟩`.
pub fn tau3_scale_factor(ps: &ProductState) -> f64 {
    ps.factors
        .iter()
        .map(|[a, b]| 2.0 * (a * b).norm())
        .product()
}

/// Groups of basis indices sharing an eigenvalue of `S` (within
/// [`DEGENERACY_TOL`]), ordered by increasing eigenvalue.
pub fn eigenspaces(c: &CouplingParams) -> Vec<Vec<usize>> {
    let s = eigenvalues_s(c);
    let mut order: Vec<usize> = (0..8).collect();
    order.sort_by(|&a, &b| s[a].total_cmp(&s[b]));
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for idx in order {
        match groups.last_mut() {
            Some(g) if (s[idx] - s[*g.last().expect("nonempty")]).abs() <= DEGENERACY_TOL => {
                g.push(idx)
            }
            _ => groups.push(vec![idx]),
        }
    }
    for g in &mut groups {
        g.sort_unstable();
    }
    groups
}

/// `Σ_r P_r ρ0 P_r` over the eigenspace projectors of `S`: the `f → ∞` limit.
pub fn asymptotic_state(c: &CouplingParams, rho0: &DensityMatrix) -> Result<DensityMatrix> {
    require_three_qubits(rho0)?;
    let mut block = [0usize; 8];
    for (r, g) in eigenspaces(c).iter().enumerate() {
        for &idx in g {
            block[idx] = r;
        }
    }
    let m0 = rho0.matrix();
    let m = ComplexMatrix::from_fn(8, |a, b| {
        if block[a] == block[b] {
            m0[(a, b)]
        } else {
            C64::new(0.0, 0.0)
        }
    })?;
    Ok(DensityMatrix::from_trusted(m))
}

/// Degeneracy structure of `S`, which decides the `f → ∞` state.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SpecialCase {
    /// `λ2 + λ3 = 1` with `λj ∉ {0, ½, 1}`: `|011⟩` and `|100⟩` degenerate.
    SumOne,
    /// `λ2 = λ3 = 1`.
    SymmetricOne,
    /// `λ2 = λ3 = ½`.
    SymmetricHalf,
    /// `λ2 = λ3 ∉ {0, ½, 1}`; also `λ2 = 1 ≠ λ3`, which is the same
    /// structure with qubits 1 and 3 exchanged.
    SymmetricOther,
    /// `λ3 = 0 < λ2`.
    ThirdDecoupled,
    /// `λ2 = λ3 = 0`.
    AllDecoupled,
    /// Nondegenerate spectrum.
    Generic,
}

impl SpecialCase {
    pub fn label(self) -> &'static str {
        match self {
            SpecialCase::SumOne => "SUM_ONE",
            SpecialCase::SymmetricOne => "SYMMETRIC_ONE",
            SpecialCase::SymmetricHalf => "SYMMETRIC_HALF",
            SpecialCase::SymmetricOther => "SYMMETRIC_OTHER",
            SpecialCase::ThirdDecoupled => "THIRD_DECOUPLED",
            SpecialCase::AllDecoupled => "ALL_DECOUPLED",
            SpecialCase::Generic => "GENERIC",
        }
    }
}

impl fmt::Display for SpecialCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

pub fn detect_special_case(c: &CouplingParams) -> SpecialCase {
    let eq = |a: f64, b: f64| (a - b).abs() <= DEGENERACY_TOL;
    let (l2, l3) = (c.lambda2, c.lambda3);
    if eq(l2, 0.0) {
        SpecialCase::AllDecoupled
    } else if eq(l3, 0.0) {
        SpecialCase::ThirdDecoupled
    } else if eq(l2, 1.0) && eq(l3, 1.0) {
        SpecialCase::SymmetricOne
    } else if eq(l2, 0.5) && eq(l3, 0.5) {
        SpecialCase::SymmetricHalf
    } else if eq(l2, l3) || eq(l2, 1.0) {
        SpecialCase::SymmetricOther
    } else if eq(l2 + l3, 1.0) {
        SpecialCase::SumOne
    } else {
        SpecialCase::Generic
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plus() -> DensityMatrix {
        initial_product_state(&ProductState::plus())
    }

    #[test]
    fn spectrum_examples() {
        let s = eigenvalues_s(&CouplingParams::new(1.0, 1.0).unwrap());
        assert_eq!(s, [3.0, 1.0, 1.0, -1.0, 1.0, -1.0, -1.0, -3.0]);
        let s = eigenvalues_s(&CouplingParams::new(2.0 / 3.0, 1.0 / 3.0).unwrap());
        assert!((s[0b011] - 0.0).abs() < 1e-15 && (s[0b100] - 0.0).abs() < 1e-15);
        let s = eigenvalues_s(&CouplingParams::new(0.0, 0.0).unwrap());
        assert_eq!(s.iter().filter(|&&x| x == 1.0).count(), 4);
        assert_eq!(s.iter().filter(|&&x| x == -1.0).count(), 4);
    }

    #[test]
    fn coupling_validation() {
        assert!(CouplingParams::new(0.3, 0.5).is_err());
        assert!(CouplingParams::new(1.2, 0.5).is_err());
        assert!(CouplingParams::new(0.5, -0.1).is_err());
        assert!(CouplingParams::new(f64::NAN, 0.0).is_err());
        let c = CouplingParams::parse("2/3", "1/3").unwrap();
        assert_eq!(c.lambda2(), 2.0 / 3.0);
        let c: CouplingParams = serde_json::from_str(r#"{"lambda2": "pi/4", "lambda3": "e/4"}"#).unwrap();
        assert_eq!(c.lambda3(), std::f64::consts::E / 4.0);
        assert!(serde_json::from_str::<CouplingParams>(r#"{"lambda2": 0.1, "lambda3": 0.2}"#).is_err());
    }

    #[test]
    fn plus_state_entries_are_one_eighth() {
        let rho = plus();
        assert!(rho
            .matrix()
            .as_slice()
            .iter()
            .all(|z| (z - C64::new(0.125, 0.0)).norm() < 1e-15));
    }

    #[test]
    fn basis_product_state() {
        let z = C64::new(0.0, 0.0);
        let o = C64::new(1.0, 0.0);
        let rho = initial_product_state(&ProductState::new([[o, z]; 3]).unwrap());
        assert_eq!(rho.matrix()[(0, 0)], o);
        assert_eq!(rho.matrix().as_slice().iter().filter(|x| x.norm() > 0.0).count(), 1);
    }

    #[test]
    fn product_state_normalization() {
        let z = C64::new(0.0, 0.0);
        let o = C64::new(1.0, 0.0);
        assert!(ProductState::new([[o, o], [o, z], [o, z]]).is_err());
        assert!(ProductState::normalized([[z, z], [o, z], [o, z]]).is_err());
    }

    #[test]
    fn origin_is_identity_and_diagonal_invariant() {
        let c = CouplingParams::new(0.8, 0.3).unwrap();
        let rho0 = plus();
        let out = evolve(&rho0, &c, &DephasingPoint::ORIGIN).unwrap();
        assert_eq!(out.matrix(), rho0.matrix());
        let out = evolve(&rho0, &c, &DephasingPoint::new(2.5, 7.0).unwrap()).unwrap();
        assert_eq!(out.matrix().diagonal(), rho0.matrix().diagonal());
    }

    #[test]
    fn evolve_rejects_wrong_dimension() {
        let c = CouplingParams::new(0.8, 0.3).unwrap();
        let two = DensityMatrix::maximally_mixed(4).unwrap();
        assert!(evolve(&two, &c, &DephasingPoint::ORIGIN).is_err());
        assert!(DephasingPoint::new(-1.0, 0.0).is_err());
        assert!(DephasingPoint::new(0.0, f64::INFINITY).is_err());
    }

    #[test]
    fn special_cases() {
        let case = |a: f64, b: f64| detect_special_case(&CouplingParams::new(a, b).unwrap());
        assert_eq!(case(2.0 / 3.0, 1.0 / 3.0), SpecialCase::SumOne);
        assert_eq!(case(1.0 / 3.0, 1.0 / 3.0), SpecialCase::SymmetricOther);
        assert_eq!(case(0.7, 0.0), SpecialCase::ThirdDecoupled);
        assert_eq!(case(1.0, 1.0), SpecialCase::SymmetricOne);
        assert_eq!(case(0.5, 0.5), SpecialCase::SymmetricHalf);
        assert_eq!(case(0.0, 0.0), SpecialCase::AllDecoupled);
        assert_eq!(case(1.0, 0.4), SpecialCase::SymmetricOther);
        let pi = std::f64::consts::PI;
        let e = std::f64::consts::E;
        assert_eq!(case(pi / 4.0, e / 4.0), SpecialCase::Generic);
        assert_eq!(case(0.5, 0.25), SpecialCase::Generic);
    }

    #[test]
    fn eigenspace_grouping() {
        let c = CouplingParams::new(0.5, 0.5).unwrap();
        let g = eigenspaces(&c);
        assert_eq!(g.len(), 5);
        assert!(g.contains(&vec![0b011, 0b100]));
        assert!(g.contains(&vec![0b001, 0b010]));
        assert!(g.contains(&vec![0b101, 0b110]));
        let c = CouplingParams::new(std::f64::consts::PI / 4.0, std::f64::consts::E / 4.0).unwrap();
        assert_eq!(eigenspaces(&c).len(), 8);
    }

    #[test]
    fn generic_asymptotic_state_is_maximally_mixed() {
        let c = CouplingParams::new(std::f64::consts::PI / 4.0, std::f64::consts::E / 4.0).unwrap();
        let out = asymptotic_state(&c, &plus()).unwrap();
        assert!(out.matrix().max_abs_diff(DensityMatrix::maximally_mixed(8).unwrap().matrix()) < 1e-16);
    }

    #[test]
    fn gl_transform_identity_and_degenerate() {
        let c = CouplingParams::new(0.6, 0.2).unwrap();
        let rho = evolve(&plus(), &c, &DephasingPoint::new(0.3, 1.1).unwrap()).unwrap();
        let same = diagonal_gl_transform(&ProductState::plus(), &rho).unwrap();
        assert!(same.matrix().max_abs_diff(rho.matrix()) < 1e-15);
        assert!((tau3_scale_factor(&ProductState::plus()) - 1.0).abs() < 1e-15);

        let z = C64::new(0.0, 0.0);
        let o = C64::new(1.0, 0.0);
        let h = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let ps = ProductState::new([[h, h], [o, z], [h, h]]).unwrap();
        assert!(matches!(
            diagonal_gl_transform(&ps, &rho),
            Err(Error::DegenerateFactor { qubit: 2 })
        ));
    }
}
