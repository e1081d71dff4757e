use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::eig::herm_eig;
use super::matrix::{check_dim, ComplexMatrix};
use crate::error::{Error, Result};

pub const NORM_TOL: f64 = 1e-12;
pub const HERMITIAN_TOL: f64 = 1e-12;
pub const TRACE_TOL: f64 = 1e-12;
/// Smallest eigenvalue tolerated in a density matrix.
pub const PSD_TOL: f64 = -1e-10;

/// Normalized state vector of dimension 2, 4 or 8.
#[derive(Clone, Debug, PartialEq)]
pub struct PureState {
    amplitudes: Vec<C64>,
}

impl PureState {
    pub fn new(amplitudes: Vec<C64>) -> Result<Self> {
        check_dim(amplitudes.len())?;
        let norm: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if !norm.is_finite() || (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidState(format!("squared norm {norm} is not 1")));
        }
        Ok(Self { amplitudes })
    }

    /// Rescales a nonzero vector to unit norm.
    pub fn normalized(amplitudes: Vec<C64>) -> Result<Self> {
        check_dim(amplitudes.len())?;
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::InvalidState("cannot normalize a zero vector".into()));
        }
        Ok(Self {
            amplitudes: amplitudes.into_iter().map(|a| a / norm).collect(),
        })
    }

    pub fn from_real(amplitudes: &[f64]) -> Result<Self> {
        Self::normalized(amplitudes.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn basis(dim: usize, index: usize) -> Result<Self> {
        check_dim(dim)?;
        if index >= dim {
            return Err(Error::InvalidState(format!("basis index {index} out of range")));
        }
        let mut a = vec![C64::new(0.0, 0.0); dim];
        a[index] = C64::new(1.0, 0.0);
        Ok(Self { amplitudes: a })
    }

    /// `(|000⟩ + |111⟩)/√2`.
    pub fn ghz() -> Self {
        Self::from_real(&[1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0]).expect("valid")
    }

    /// `(|001⟩ + |010⟩ + |100⟩)/√3`.
    pub fn w() -> Self {
        Self::from_real(&[0.0, 1.0, 1.0, 0.0, 1.0, 0.0, 0.0, 0.0]).expect("valid")
    }

    /// `(|110⟩ + |101⟩ + |011⟩)/√3`.
    pub fn w_bar() -> Self {
        Self::from_real(&[0.0, 0.0, 0.0, 1.0, 0.0, 1.0, 1.0, 0.0]).expect("valid")
    }

    /// `|+⟩^{⊗n}` for `n` qubits.
    pub fn plus(qubits: u32) -> Result<Self> {
        let dim = 1usize << qubits;
        Self::from_real(&vec![1.0; dim])
    }

    #[inline]
    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn kron(&self, other: &PureState) -> Result<PureState> {
        let n = self.dim() * other.dim();
        if n > 8 {
            return Err(Error::Shape(format!("state dimension {n} exceeds three qubits")));
        }
        let amplitudes = self
            .amplitudes
            .iter()
            .flat_map(|a| other.amplitudes.iter().map(move |b| a * b))
            .collect();
        Ok(PureState { amplitudes })
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &PureState) -> C64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn projector(&self) -> DensityMatrix {
        let m = ComplexMatrix::outer(&self.amplitudes, &self.amplitudes).expect("dims match");
        DensityMatrix::from_trusted(m)
    }
}

/// Helper for `|ψ⁺⟩ = (|01⟩ + |10⟩)/√2`, which shows up in the asymptotic states.
pub fn psi_plus() -> PureState {
    PureState::new(vec![
        C64::new(0.0, 0.0),
        C64::new(FRAC_1_SQRT_2, 0.0),
        C64::new(FRAC_1_SQRT_2, 0.0),
        C64::new(0.0, 0.0),
    ])
    .expect("valid")
}

/// Hermitian, unit-trace, positive semidefinite operator.
#[derive(Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates and symmetrizes `m`.
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        let defect = m.hermiticity_defect();
        if defect > HERMITIAN_TOL {
            return Err(Error::NotHermitian(defect));
        }
        let rho = Self {
            matrix: m.hermitian_part(),
        };
        rho.validate()?;
        Ok(rho)
    }

    /// Symmetrizes without checking trace or positivity; for results of
    /// operations that preserve both.
    pub(crate) fn from_trusted(m: ComplexMatrix) -> Self {
        let rho = Self {
            matrix: m.hermitian_part(),
        };
        debug_assert!(rho.validate().is_ok(), "density matrix invariant broken");
        rho
    }

    /// Checks unit trace and eigenvalues ≥ −1e−10.
    pub fn validate(&self) -> Result<()> {
        let tr = self.matrix.trace();
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(Error::InvalidState(format!("trace {tr} is not 1")));
        }
        let min = herm_eig(&self.matrix)?.values[0];
        if min < PSD_TOL {
            return Err(Error::InvalidState(format!(
                "negative eigenvalue {min:e}"
            )));
        }
        Ok(())
    }

    pub fn maximally_mixed(dim: usize) -> Result<Self> {
        Ok(Self {
            matrix: ComplexMatrix::identity(dim)?.scale_real(1.0 / dim as f64),
        })
    }

    /// Weighted sum of density matrices; weights must be nonnegative and sum to 1.
    pub fn mixture(parts: &[(f64, &DensityMatrix)]) -> Result<Self> {
        let first = parts
            .first()
            .ok_or_else(|| Error::InvalidState("empty mixture".into()))?;
        let mut acc = ComplexMatrix::zeros(first.1.dim())?;
        for (w, rho) in parts {
            if *w < 0.0 {
                return Err(Error::InvalidState(format!("negative weight {w}")));
            }
            if rho.dim() != acc.dim() {
                return Err(Error::Shape("mixture of unequal dimensions".into()));
            }
            acc = &acc + &rho.matrix.scale_real(*w);
        }
        Self::new(acc)
    }

    #[inline]
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn purity(&self) -> f64 {
        self.matrix.as_slice().iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn tensor(&self, other: &DensityMatrix) -> Result<DensityMatrix> {
        Ok(Self::from_trusted(self.matrix.tensor(&other.matrix)?))
    }
}

impl fmt::Debug for DensityMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DensityMatrix {:?}", self.matrix)
    }
}

/// Single-qubit versus rest cut of three qubits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Bipartition {
    /// `1|23`
    #[serde(rename = "1|23")]
    First,
    /// `2|13`
    #[serde(rename = "2|13")]
    Second,
    /// `3|12`
    #[serde(rename = "3|12")]
    Third,
}

impl Bipartition {
    pub const ALL: [Bipartition; 3] = [Bipartition::First, Bipartition::Second, Bipartition::Third];

    /// Zero-based index of the isolated qubit.
    pub fn qubit(self) -> usize {
        match self {
            Bipartition::First => 0,
            Bipartition::Second => 1,
            Bipartition::Third => 2,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Bipartition::First => "1|23",
            Bipartition::Second => "2|13",
            Bipartition::Third => "3|12",
        }
    }

    /// Bit mask of the isolated qubit inside a three-qubit basis index.
    fn mask(self) -> usize {
        4 >> self.qubit()
    }
}

impl fmt::Display for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Which side of a cut survives a partial trace.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// The isolated qubit (2x2 result).
    Single,
    /// The remaining pair, in ascending qubit order (4x4 result).
    Pair,
}

fn require_three_qubits(rho: &DensityMatrix) -> Result<()> {
    if rho.dim() != 8 {
        return Err(Error::Shape(format!(
            "expected a three-qubit (8x8) state, got {}x{}",
            rho.dim(),
            rho.dim()
        )));
    }
    Ok(())
}

/// Reduced state of one side of `cut`.
pub fn partial_trace(rho: &DensityMatrix, cut: Bipartition, keep: Side) -> Result<DensityMatrix> {
    require_three_qubits(rho)?;
    let q = cut.qubit();
    // bit positions (from the most significant) of kept and traced qubits
    let (kept, traced): (Vec<usize>, Vec<usize>) = match keep {
        Side::Single => (vec![q], (0..3).filter(|&k| k != q).collect()),
        Side::Pair => ((0..3).filter(|&k| k != q).collect(), vec![q]),
    };
    let bit = |qubit: usize| 4usize >> qubit;
    let compose = |kept_bits: usize, traced_bits: usize| -> usize {
        let mut idx = 0;
        for (pos, &qb) in kept.iter().enumerate() {
            if kept_bits >> (kept.len() - 1 - pos) & 1 == 1 {
                idx |= bit(qb);
            }
        }
        for (pos, &qb) in traced.iter().enumerate() {
            if traced_bits >> (traced.len() - 1 - pos) & 1 == 1 {
                idx |= bit(qb);
            }
        }
        idx
    };
    let dk = 1usize << kept.len();
    let dt = 1usize << traced.len();
    let m = rho.matrix();
    let reduced = ComplexMatrix::from_fn(dk, |a, b| {
        (0..dt).map(|t| m[(compose(a, t), compose(b, t))]).sum()
    })?;
    Ok(DensityMatrix::from_trusted(reduced))
}

/// Partial transpose on the isolated qubit of `cut`.
pub fn partial_transpose(rho: &DensityMatrix, cut: Bipartition) -> Result<ComplexMatrix> {
    require_three_qubits(rho)?;
    Ok(partial_transpose_matrix(rho.matrix(), cut))
}

pub(crate) fn partial_transpose_matrix(m: &ComplexMatrix, cut: Bipartition) -> ComplexMatrix {
    let mask = cut.mask();
    ComplexMatrix::from_fn(8, |i, j| {
        // swap the isolated qubit's bit between row and column index
        let (bi, bj) = (i & mask, j & mask);
        m[((i & !mask) | bj, (j & !mask) | bi)]
    })
    .expect("8 is a supported dimension")
}
