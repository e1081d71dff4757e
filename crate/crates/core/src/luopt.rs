//! Multi-start simplex search over products of single-qubit unitaries.
//!
//! Each qubit gets `Rz(a1) Ry(a2) Rz(a3)`; the search maximizes a smooth
//! surrogate of the chosen bound and reports the bound at the best point.

use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, DensityMatrix};

const DIM: usize = 9;
const INITIAL_STEP: f64 = std::f64::consts::PI / 8.0;

/// Nine Euler angles, three per qubit, `z–y–z`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LocalUnitary {
    angles: [f64; DIM],
}

impl Default for LocalUnitary {
    fn default() -> Self {
        Self::identity()
    }
}

impl LocalUnitary {
    pub fn identity() -> Self {
        Self { angles: [0.0; DIM] }
    }

    pub fn from_angles(angles: [f64; DIM]) -> Result<Self> {
        if angles.iter().any(|a| !a.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { angles })
    }

    pub fn angles(&self) -> &[f64; DIM] {
        &self.angles
    }

    pub fn factor(&self, qubit: usize) -> ComplexMatrix {
        let a = &self.angles[3 * qubit..3 * qubit + 3];
        su2_from_angles([a[0], a[1], a[2]])
    }

    /// `U1 ⊗ U2 ⊗ U3`.
    pub fn matrix(&self) -> ComplexMatrix {
        self.factor(0)
            .tensor(&self.factor(1))
            .and_then(|m| m.tensor(&self.factor(2)))
            .expect("dimension 8")
    }

    /// Prepends `Rz(delta)` on qubit 1, which multiplies `⟨000|ρ'|111⟩` by
    /// `e^{−iδ}`.
    fn rotate_first_phase(mut self, delta: f64) -> Self {
        self.angles[0] += delta;
        self
    }
}

fn su2_entries(a: [f64; 3]) -> [C64; 4] {
    let (c, s) = ((0.5 * a[1]).cos(), (0.5 * a[1]).sin());
    let p = C64::from_polar(1.0, -0.5 * (a[0] + a[2]));
    let q = C64::from_polar(1.0, -0.5 * (a[0] - a[2]));
    [p * c, -q * s, q.conj() * s, p.conj() * c]
}

/// `Rz(a1) Ry(a2) Rz(a3)` with `Rz(θ) = diag(e^{−iθ/2}, e^{iθ/2})` and
/// `Ry(θ) = [[cos θ/2, −sin θ/2], [sin θ/2, cos θ/2]]`.
pub fn su2_from_angles(a: [f64; 3]) -> ComplexMatrix {
    ComplexMatrix::from_vec(2, su2_entries(a).to_vec()).expect("finite 2x2")
}

/// `(U1⊗U2⊗U3) ρ (U1⊗U2⊗U3)†`.
pub fn apply_local_unitary(rho: &DensityMatrix, u: &LocalUnitary) -> Result<DensityMatrix> {
    if rho.dim() != 8 {
        return Err(Error::Shape(format!("expected 8x8 state, got {}x{}", rho.dim(), rho.dim())));
    }
    Ok(DensityMatrix::from_trusted(rho.matrix().conjugate_by(&u.matrix())))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OptimizerConfig {
    pub starts: usize,
    pub max_iterations: usize,
    pub tolerance: f64,
    pub seed: u64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            starts: 32,
            max_iterations: 2000,
            tolerance: 1e-10,
            seed: 0,
        }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<()> {
        if self.starts == 0 {
            return Err(Error::config("optimizer.starts", "must be at least 1"));
        }
        if self.max_iterations == 0 {
            return Err(Error::config("optimizer.max_iterations", "must be at least 1"));
        }
        if !(self.tolerance.is_finite() && self.tolerance > 0.0) {
            return Err(Error::config("optimizer.tolerance", "must be positive"));
        }
        Ok(())
    }

    /// Objective evaluations allowed per start.
    pub fn evaluation_budget(&self) -> usize {
        self.max_iterations.saturating_mul(DIM + 1)
    }
}

/// Which bound to maximize.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Objective {
    /// Three-tangle bound; searched through the phase-aligned GHZ fidelity,
    /// on which the bound depends monotonically.
    Tau3,
    /// GME-concurrence bound; searched through its unclamped form.
    Cgme,
}

/// The entries of `ρ' = UρU†` the bounds read: the diagonal and `ρ'_{0,7}`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Rotated {
    pub diag: [f64; 8],
    pub corner: C64,
}

impl Rotated {
    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        let mut diag = [0.0; 8];
        for (k, d) in diag.iter_mut().enumerate() {
            *d = m[(k, k)].re;
        }
        Self { diag, corner: m[(0, 7)] }
    }

    /// `⟨GHZ|ρ'|GHZ⟩` after rotating the phase of `ρ'_{0,7}` to zero.
    pub fn aligned_fidelity(&self) -> f64 {
        0.5 * (self.diag[0] + self.diag[7]) + self.corner.norm()
    }

    /// `|ρ'_{0,7}| − Σ_{k=1..6} √(ρ'_kk ρ'_{7−k,7−k})`.
    pub fn cgme_margin(&self) -> f64 {
        let mut off = 0.0;
        for k in 1..7 {
            off += (self.diag[k] * self.diag[7 - k]).max(0.0).sqrt();
        }
        self.corner.norm() - off
    }

    fn surrogate(&self, objective: Objective) -> f64 {
        match objective {
            Objective::Tau3 => self.aligned_fidelity(),
            Objective::Cgme => self.cgme_margin(),
        }
    }
}

/// Builds `b_k = U†|k⟩` as product vectors and returns `ρ'_kl = b_k† ρ b_l`
/// for the entries in [`Rotated`].
pub(crate) fn rotated_entries(rho: &ComplexMatrix, angles: &[f64; DIM]) -> Rotated {
    let f = [
        su2_entries([angles[0], angles[1], angles[2]]),
        su2_entries([angles[3], angles[4], angles[5]]),
        su2_entries([angles[6], angles[7], angles[8]]),
    ];
    // (U†)_{i,k} = conj(U_{k,i})
    let ud = |q: usize, k: usize, i: usize| f[q][2 * k + i].conj();
    let mut b = [[C64::new(0.0, 0.0); 8]; 8];
    for (k, bk) in b.iter_mut().enumerate() {
        let (k1, k2, k3) = (k >> 2 & 1, k >> 1 & 1, k & 1);
        for (i, v) in bk.iter_mut().enumerate() {
            *v = ud(0, k1, i >> 2 & 1) * ud(1, k2, i >> 1 & 1) * ud(2, k3, i & 1);
        }
    }
    let data = rho.as_slice();
    let mut diag = [0.0; 8];
    let mut corner = C64::new(0.0, 0.0);
    for l in 0..8 {
        let mut v = [C64::new(0.0, 0.0); 8];
        for (r, vr) in v.iter_mut().enumerate() {
            let row = &data[8 * r..8 * r + 8];
            *vr = row.iter().zip(b[l].iter()).map(|(x, y)| x * y).sum();
        }
        let dot = |k: usize| -> C64 { b[k].iter().zip(v.iter()).map(|(x, y)| x.conj() * y).sum() };
        diag[l] = dot(l).re;
        if l == 7 {
            corner = dot(0);
        }
    }
    Rotated { diag, corner }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Optimum {
    /// Best local unitary, with the phase of `ρ'_{0,7}` rotated to zero.
    pub unitary: LocalUnitary,
    /// The maximized surrogate at `unitary`.
    pub surrogate: f64,
    /// Phase-aligned GHZ fidelity at `unitary`.
    pub fidelity: f64,
    /// False if some start ran out of evaluations before converging.
    pub converged: bool,
    pub evaluations: usize,
}

/// Optimizes with the generator keyed by `(cfg.seed, 0)`.
pub fn optimize_bound(rho: &DensityMatrix, objective: Objective, cfg: &OptimizerConfig) -> Result<Optimum> {
    optimize_bound_keyed(rho, objective, cfg, 0, &[])
}

/// Identity start, then `warm` starts, then `cfg.starts` random starts drawn
/// from a generator keyed by `(cfg.seed, stream)`. The best surrogate wins,
/// ties going to the earliest start; the identity itself is a candidate, so
/// the result is never worse than not rotating.
pub fn optimize_bound_keyed(
    rho: &DensityMatrix,
    objective: Objective,
    cfg: &OptimizerConfig,
    stream: u64,
    warm: &[LocalUnitary],
) -> Result<Optimum> {
    cfg.validate()?;
    if rho.dim() != 8 {
        return Err(Error::Shape(format!("expected 8x8 state, got {}x{}", rho.dim(), rho.dim())));
    }
    let m = rho.matrix();
    let eval = |x: &[f64; DIM]| rotated_entries(m, x).surrogate(objective);

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(stream);
    let mut starts: Vec<[f64; DIM]> = Vec::with_capacity(1 + warm.len() + cfg.starts);
    starts.push([0.0; DIM]);
    starts.extend(warm.iter().map(|u| u.angles));
    for _ in 0..cfg.starts {
        let mut x = [0.0; DIM];
        for a in x.iter_mut() {
            *a = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
        }
        starts.push(x);
    }

    let mut best_x = [0.0; DIM];
    let mut best = eval(&best_x);
    let mut evaluations = 1;
    let mut converged = true;
    for x0 in &starts {
        let run = restarted(|x| -eval(x), x0, cfg.tolerance, cfg.evaluation_budget());
        evaluations += run.evaluations;
        converged &= run.converged;
        if -run.value > best {
            best = -run.value;
            best_x = run.x;
        }
    }

    let r = rotated_entries(m, &best_x);
    let unitary = LocalUnitary { angles: best_x }.rotate_first_phase(r.corner.arg());
    Ok(Optimum {
        unitary,
        surrogate: best,
        fidelity: r.aligned_fidelity(),
        converged,
        evaluations,
    })
}

struct Run {
    x: [f64; DIM],
    value: f64,
    converged: bool,
    evaluations: usize,
}

/// Reruns the simplex search from its own result with a fresh simplex until
/// a rerun gains less than `tol`, within one shared budget.
fn restarted<F: FnMut(&[f64; DIM]) -> f64>(mut f: F, x0: &[f64; DIM], tol: f64, budget: usize) -> Run {
    let mut run = nelder_mead(&mut f, x0, INITIAL_STEP, tol, budget);
    while run.converged && run.evaluations + 2 * (DIM + 1) <= budget {
        let next = nelder_mead(&mut f, &run.x, INITIAL_STEP, tol, budget - run.evaluations);
        let gain = run.value - next.value;
        let evaluations = run.evaluations + next.evaluations;
        if next.value < run.value {
            run = Run { evaluations, ..next };
        } else {
            run.evaluations = evaluations;
            run.converged = next.converged;
        }
        if gain < tol {
            break;
        }
    }
    run
}

/// Minimizes `f` from `x0` with an axis-aligned initial simplex of size
/// `step`; stops once the best value improves by less than `tol` over `n + 1`
/// iterations or the evaluation budget is spent.
fn nelder_mead<F: FnMut(&[f64; DIM]) -> f64>(mut f: F, x0: &[f64; DIM], step: f64, tol: f64, budget: usize) -> Run {
    const N: usize = DIM;
    let mut pts: Vec<[f64; N]> = Vec::with_capacity(N + 1);
    let mut vals: Vec<f64> = Vec::with_capacity(N + 1);
    let mut evaluations = 0;
    let mut eval = |x: &[f64; N], evaluations: &mut usize| {
        *evaluations += 1;
        f(x)
    };
    pts.push(*x0);
    vals.push(eval(x0, &mut evaluations));
    for i in 0..N {
        let mut x = *x0;
        x[i] += step;
        vals.push(eval(&x, &mut evaluations));
        pts.push(x);
    }

    let mut order: Vec<usize> = (0..=N).collect();
    let mut stalled = 0;
    let mut last_best = f64::INFINITY;
    let mut converged = false;
    while evaluations + N + 2 <= budget {
        order.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]).then(a.cmp(&b)));
        let (lo, hi, second) = (order[0], order[N], order[N - 1]);
        if last_best - vals[lo] < tol {
            stalled += 1;
            if stalled > N {
                converged = true;
                break;
            }
        } else {
            stalled = 0;
        }
        last_best = last_best.min(vals[lo]);

        let mut centroid = [0.0; N];
        for &k in &order[..N] {
            for (c, x) in centroid.iter_mut().zip(pts[k].iter()) {
                *c += x / N as f64;
            }
        }
        let toward = |t: f64| -> [f64; N] {
            let mut x = [0.0; N];
            for i in 0..N {
                x[i] = centroid[i] + t * (pts[hi][i] - centroid[i]);
            }
            x
        };

        let xr = toward(-1.0);
        let fr = eval(&xr, &mut evaluations);
        if fr < vals[lo] {
            let xe = toward(-2.0);
            let fe = eval(&xe, &mut evaluations);
            if fe < fr {
                pts[hi] = xe;
                vals[hi] = fe;
            } else {
                pts[hi] = xr;
                vals[hi] = fr;
            }
        } else if fr < vals[second] {
            pts[hi] = xr;
            vals[hi] = fr;
        } else {
            let (xc, fc) = if fr < vals[hi] {
                let xc = toward(-0.5);
                let fc = eval(&xc, &mut evaluations);
                (xc, fc)
            } else {
                let xc = toward(0.5);
                let fc = eval(&xc, &mut evaluations);
                (xc, fc)
            };
            if fc < vals[hi].min(fr) {
                pts[hi] = xc;
                vals[hi] = fc;
            } else {
                let best = pts[lo];
                for k in 0..=N {
                    if k == lo {
                        continue;
                    }
                    for i in 0..N {
                        pts[k][i] = best[i] + 0.5 * (pts[k][i] - best[i]);
                    }
                    vals[k] = eval(&pts[k], &mut evaluations);
                }
            }
        }
    }
    let lo = (0..=N)
        .min_by(|&a, &b| vals[a].total_cmp(&vals[b]).then(a.cmp(&b)))
        .expect("nonempty simplex");
    Run {
        x: pts[lo],
        value: vals[lo],
        converged,
        evaluations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{herm_eig, PureState};

    fn random_angles(rng: &mut impl Rng) -> [f64; DIM] {
        let mut a = [0.0; DIM];
        for x in a.iter_mut() {
            *x = rng.gen_range(-4.0..4.0);
        }
        a
    }

    #[test]
    fn su2_examples() {
        let id = su2_from_angles([0.0; 3]);
        assert!(id.max_abs_diff(&ComplexMatrix::identity(2).unwrap()) < 1e-15);
        let y = su2_from_angles([0.0, std::f64::consts::PI, 0.0]);
        let expect = ComplexMatrix::from_vec(
            2,
            vec![C64::new(0.0, 0.0), C64::new(-1.0, 0.0), C64::new(1.0, 0.0), C64::new(0.0, 0.0)],
        )
        .unwrap();
        assert!(y.max_abs_diff(&expect) < 1e-15);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let a: [f64; 3] = [rng.gen_range(-7.0..7.0), rng.gen_range(-7.0..7.0), rng.gen_range(-7.0..7.0)];
            let u = su2_from_angles(a);
            let uu = &u.adjoint() * &u;
            assert!(uu.max_abs_diff(&ComplexMatrix::identity(2).unwrap()) < 1e-12);
            let det = u[(0, 0)] * u[(1, 1)] - u[(0, 1)] * u[(1, 0)];
            assert!((det.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn rz_convention() {
        let z = su2_from_angles([0.7, 0.0, 0.0]);
        assert!((z[(0, 0)] - C64::from_polar(1.0, -0.35)).norm() < 1e-15);
        assert!((z[(1, 1)] - C64::from_polar(1.0, 0.35)).norm() < 1e-15);
    }

    #[test]
    fn conjugation_preserves_spectrum() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let rho = DensityMatrix::mixture(&[
            (0.6, &PureState::w().projector()),
            (0.4, &DensityMatrix::maximally_mixed(8).unwrap()),
        ])
        .unwrap();
        assert_eq!(apply_local_unitary(&rho, &LocalUnitary::identity()).unwrap(), rho);
        for _ in 0..20 {
            let u = LocalUnitary::from_angles(random_angles(&mut rng)).unwrap();
            let out = apply_local_unitary(&rho, &u).unwrap();
            let a = herm_eig(rho.matrix()).unwrap().values;
            let b = herm_eig(out.matrix()).unwrap().values;
            for (x, y) in a.iter().zip(&b) {
                assert!((x - y).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn fast_entries_match_dense_conjugation() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let rho = DensityMatrix::mixture(&[
            (0.7, &PureState::ghz().projector()),
            (0.3, &PureState::w().projector()),
        ])
        .unwrap();
        for _ in 0..50 {
            let a = random_angles(&mut rng);
            let u = LocalUnitary::from_angles(a).unwrap();
            let dense = apply_local_unitary(&rho, &u).unwrap();
            let fast = rotated_entries(rho.matrix(), &a);
            let slow = Rotated::from_matrix(dense.matrix());
            for k in 0..8 {
                assert!((fast.diag[k] - slow.diag[k]).abs() < 1e-14);
            }
            assert!((fast.corner - slow.corner).norm() < 1e-14);
        }
    }

    #[test]
    fn recovers_rotated_ghz() {
        let h = 0.5f64.sqrt();
        let one = [0.0, std::f64::consts::FRAC_PI_2, std::f64::consts::PI];
        let had = LocalUnitary::from_angles([one, one, one].concat().try_into().unwrap()).unwrap();
        // Ry(π/2)Rz(π) is a Hadamard up to phase
        let f = had.factor(0);
        assert!((f[(0, 0)].norm() - h).abs() < 1e-15);
        let rho = apply_local_unitary(&PureState::ghz().projector(), &had).unwrap();
        let cfg = OptimizerConfig { starts: 8, ..OptimizerConfig::default() };
        let at_identity = Rotated::from_matrix(rho.matrix()).cgme_margin();
        let opt = optimize_bound(&rho, Objective::Cgme, &cfg).unwrap();
        assert!(opt.surrogate >= at_identity);
        assert!((opt.surrogate - 0.5).abs() < 1e-7, "{}", opt.surrogate);
        assert!((opt.fidelity - 1.0).abs() < 1e-7);
        let rotated = apply_local_unitary(&rho, &opt.unitary).unwrap();
        let r = Rotated::from_matrix(rotated.matrix());
        assert!(r.corner.im.abs() < 1e-12 && r.corner.re > 0.0);
    }

    #[test]
    fn ghz_identity_is_kept() {
        let rho = PureState::ghz().projector();
        let cfg = OptimizerConfig { starts: 4, ..OptimizerConfig::default() };
        let opt = optimize_bound(&rho, Objective::Tau3, &cfg).unwrap();
        assert!((opt.fidelity - 1.0).abs() < 1e-12);
    }

    #[test]
    fn deterministic_and_keyed() {
        let rho = DensityMatrix::mixture(&[
            (0.5, &PureState::w().projector()),
            (0.5, &PureState::ghz().projector()),
        ])
        .unwrap();
        let cfg = OptimizerConfig { starts: 3, max_iterations: 100, ..OptimizerConfig::default() };
        let a = optimize_bound_keyed(&rho, Objective::Tau3, &cfg, 9, &[]).unwrap();
        let b = optimize_bound_keyed(&rho, Objective::Tau3, &cfg, 9, &[]).unwrap();
        assert_eq!(a.unitary.angles().map(f64::to_bits), b.unitary.angles().map(f64::to_bits));
        assert!(a.evaluations <= 1 + 4 * cfg.evaluation_budget());
    }

    #[test]
    fn config_validation() {
        assert!(OptimizerConfig { starts: 0, ..Default::default() }.validate().is_err());
        assert!(OptimizerConfig { tolerance: 0.0, ..Default::default() }.validate().is_err());
        let c: OptimizerConfig = serde_json::from_str(r#"{"starts": 4, "seed": 7}"#).unwrap();
        assert_eq!(c.max_iterations, 2000);
        assert!(serde_json::from_str::<OptimizerConfig>(r#"{"bogus": 1}"#).is_err());
    }
}
