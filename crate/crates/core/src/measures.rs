//! Entanglement measures and the detection-class report.

use std::fmt;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{herm_eig, partial_transpose, Bipartition, ComplexMatrix, DensityMatrix, PureState};
use crate::luopt::{apply_local_unitary, optimize_bound_keyed, LocalUnitary, Objective, OptimizerConfig, Rotated};
use crate::model::CouplingParams;

/// Measures below this are reported as exactly zero.
pub const DETECTION_THRESHOLD: f64 = 1e-9;
/// States with purity above `1 − PURITY_MARGIN` are treated as pure.
pub const PURITY_MARGIN: f64 = 1e-10;

fn require_three_qubits(dim: usize) -> Result<()> {
    if dim != 8 {
        return Err(Error::Shape(format!("expected a three-qubit object of dimension 8, got {dim}")));
    }
    Ok(())
}

/// `½(‖ρ^{T_A}‖₁ − 1)`, computed as the sum of the magnitudes of the negative
/// eigenvalues of the partial transpose.
pub fn negativity(rho: &DensityMatrix, cut: Bipartition) -> Result<f64> {
    let pt = partial_transpose(rho, cut)?;
    let e = herm_eig(&pt)?;
    Ok(e.values.iter().filter(|&&x| x < 0.0).fold(0.0, |s, x| s - x).min(0.5))
}

pub fn negativities(rho: &DensityMatrix) -> Result<[f64; 3]> {
    let mut out = [0.0; 3];
    for (n, cut) in out.iter_mut().zip(Bipartition::ALL) {
        *n = negativity(rho, cut)?;
    }
    Ok(out)
}

/// `(σy⊗σy)_{a,ā}`: −1 for `|00⟩, |11⟩`, +1 for `|01⟩, |10⟩`.
const YY: [f64; 4] = [-1.0, 1.0, 1.0, -1.0];

/// `xᵀ (σy⊗σy) y` for two-qubit vectors.
fn yy_form(x: &[C64], y: &[C64]) -> C64 {
    (0..4).map(|a| x[a] * YY[a] * y[3 - a]).sum()
}

/// `√|Σ_{j=0,x,z} ⟨ψ*|σ_j⊗σy⊗σy|ψ⟩²|` with `σ0 = i𝟙`.
pub fn tau3_pure(psi: &PureState) -> Result<f64> {
    require_three_qubits(psi.dim())?;
    let a = psi.amplitudes();
    let (lo, hi) = (&a[..4], &a[4..]);
    let q00 = yy_form(lo, lo);
    let q11 = yy_form(hi, hi);
    let q01 = yy_form(lo, hi);
    let t0 = C64::i() * (q00 + q11);
    let tx = q01 + yy_form(hi, lo);
    let tz = q00 - q11;
    Ok((t0 * t0 + tx * tx + tz * tz).norm().sqrt().min(1.0))
}

/// Three-tangle of the state evolved from `|+++⟩` at `f = 0`.
///
/// The evolution there is a product of pairwise `σz σz` phases with angles
/// `θ = 8φ(λ2λ3, λ3, λ2)` for the pairs (2,3), (1,3), (1,2), and
/// `τ3 = ½ √|Σ_{i<j} u_i u_j − u1u2u3 + i s1s2s3|` with `u = 1 − cos θ`,
/// `s = sin θ`.
pub fn tau3_f0_closed_form(c: &CouplingParams, phi: f64) -> f64 {
    let theta = [
        8.0 * c.lambda2() * c.lambda3() * phi,
        8.0 * c.lambda3() * phi,
        8.0 * c.lambda2() * phi,
    ];
    let u = theta.map(|t| {
        let h = (0.5 * t).sin();
        2.0 * h * h
    });
    let s = theta.map(f64::sin);
    let re = u[0] * u[1] + u[0] * u[2] + u[1] * u[2] - u[0] * u[1] * u[2];
    let im = s[0] * s[1] * s[2];
    0.5 * re.hypot(im).sqrt()
}

/// `√(2(1 − tr ρ_A²))` for the single qubit of `cut`, as twice the norm of
/// the 2×2 minors of the 2×4 coefficient matrix.
fn cut_concurrence(a: &[C64], cut: Bipartition) -> f64 {
    let q = cut.qubit();
    let shift = 2 - q;
    let mut m = [[C64::new(0.0, 0.0); 4]; 2];
    for (idx, &amp) in a.iter().enumerate() {
        let bit = (idx >> shift) & 1;
        let high = idx >> (shift + 1);
        let low = idx & ((1 << shift) - 1);
        let rest = (high << shift) | low;
        m[bit][rest] = amp;
    }
    let mut s = 0.0;
    for i in 0..4 {
        for j in (i + 1)..4 {
            s += (m[0][i] * m[1][j] - m[0][j] * m[1][i]).norm_sqr();
        }
    }
    2.0 * s.sqrt()
}

/// `min_γ √(2(1 − tr ρ_{A_γ}²))` and the minimizing cut, ties toward `1|23`.
pub fn cgme_pure_with_cut(psi: &PureState) -> Result<(f64, Bipartition)> {
    require_three_qubits(psi.dim())?;
    let a = psi.amplitudes();
    let mut best = (f64::INFINITY, Bipartition::First);
    for cut in Bipartition::ALL {
        let c = cut_concurrence(a, cut);
        if c < best.0 {
            best = (c, cut);
        }
    }
    Ok((best.0.min(1.0), best.1))
}

pub fn cgme_pure(psi: &PureState) -> Result<f64> {
    Ok(cgme_pure_with_cut(psi)?.0)
}

/// `⟨GHZ|ρ|GHZ⟩` with `|GHZ⟩ = (|000⟩ + |111⟩)/√2`.
pub fn ghz_fidelity(rho: &DensityMatrix) -> Result<f64> {
    require_three_qubits(rho.dim())?;
    let m = rho.matrix();
    Ok(0.5 * (m[(0, 0)].re + m[(7, 7)].re) + m[(0, 7)].re)
}

/// Average over the local symmetry group of `|GHZ⟩`: qubit permutations,
/// `σx⊗σx⊗σx`, and phases `e^{iασz}⊗e^{iβσz}⊗e^{−i(α+β)σz}`. The result
/// keeps `⟨GHZ±|ρ|GHZ±⟩` and spreads the remaining weight evenly over the
/// six other basis states.
pub fn ghz_twirl(rho: &DensityMatrix) -> Result<DensityMatrix> {
    require_three_qubits(rho.dim())?;
    let m = rho.matrix();
    let ends = 0.5 * (m[(0, 0)].re + m[(7, 7)].re);
    let coherence = m[(0, 7)].re;
    let rest = (1.0 - 2.0 * ends) / 6.0;
    let mut out = ComplexMatrix::from_real_diagonal(&[rest; 8])?;
    out[(0, 0)] = C64::new(ends, 0.0);
    out[(7, 7)] = C64::new(ends, 0.0);
    out[(0, 7)] = C64::new(coherence, 0.0);
    out[(7, 0)] = C64::new(coherence, 0.0);
    Ok(DensityMatrix::from_trusted(out))
}

/// Lower bound on the three-tangle of `ρ` from the rotated and twirled state:
/// `max(0, 4F − 3)` with `F` the larger of `⟨GHZ±|ρ'|GHZ±⟩`. Any pure state
/// obeys `τ3 ≥ 4F − 3`, and the bound is linear in `ρ`, so it lower-bounds
/// the convex roof. Zero when `⟨GHZ|ρ'|GHZ⟩ < ½`.
pub fn tau3_lower_bound(rho: &DensityMatrix, u: &LocalUnitary) -> Result<f64> {
    let rotated = apply_local_unitary(rho, u)?;
    if ghz_fidelity(&rotated)? < 0.5 {
        return Ok(0.0);
    }
    let t = ghz_twirl(&rotated)?;
    let m = t.matrix();
    let f = m[(0, 0)].re + m[(0, 7)].re.abs();
    Ok((4.0 * f - 3.0).clamp(0.0, 1.0))
}

/// `2 max{0, |ρ'_{0,7}| − Σ_{k=1..6} √(ρ'_kk ρ'_{7−k,7−k})}` on the rotated
/// state `ρ' = UρU†`; zero when `⟨GHZ|ρ'|GHZ⟩ < ½`.
pub fn cgme_lower_bound(rho: &DensityMatrix, u: &LocalUnitary) -> Result<f64> {
    let rotated = apply_local_unitary(rho, u)?;
    if ghz_fidelity(&rotated)? < 0.5 {
        return Ok(0.0);
    }
    let r = Rotated::from_matrix(rotated.matrix());
    Ok((2.0 * r.cgme_margin()).clamp(0.0, 1.0))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EntanglementClass {
    #[serde(rename = "GHZ")]
    Ghz,
    W,
    #[serde(rename = "BISEPARABLE_ENTANGLED")]
    BiseparableEntangled,
    #[serde(rename = "UNDETECTED")]
    Undetected,
}

impl EntanglementClass {
    pub fn label(self) -> &'static str {
        match self {
            EntanglementClass::Ghz => "GHZ",
            EntanglementClass::W => "W",
            EntanglementClass::BiseparableEntangled => "BISEPARABLE_ENTANGLED",
            EntanglementClass::Undetected => "UNDETECTED",
        }
    }

    pub fn from_label(s: &str) -> Option<Self> {
        [
            EntanglementClass::Ghz,
            EntanglementClass::W,
            EntanglementClass::BiseparableEntangled,
            EntanglementClass::Undetected,
        ]
        .into_iter()
        .find(|c| c.label() == s)
    }

    /// GHZ > W > biseparable > undetected.
    pub fn from_measures(tau3_lb: f64, cgme_lb: f64, negativity: &[f64; 3]) -> Self {
        if tau3_lb > 0.0 {
            EntanglementClass::Ghz
        } else if cgme_lb > 0.0 {
            EntanglementClass::W
        } else if negativity.iter().any(|&n| n > 0.0) {
            EntanglementClass::BiseparableEntangled
        } else {
            EntanglementClass::Undetected
        }
    }
}

impl fmt::Display for EntanglementClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntanglementReport {
    /// Cuts `1|23`, `2|13`, `3|12`.
    pub negativity: [f64; 3],
    pub tau3_lb: f64,
    pub cgme_lb: f64,
    pub ghz_fidelity_opt: f64,
    pub class: EntanglementClass,
    /// Whether the exact pure-state measures were used.
    pub pure: bool,
    /// For pure states, the cut attaining the GME-concurrence minimum.
    pub cgme_cut: Option<Bipartition>,
}

fn detect(x: f64, threshold: f64) -> f64 {
    if x < threshold {
        0.0
    } else {
        x
    }
}

/// [`classify_with`] using the default optimizer and stream 0.
pub fn classify(rho: &DensityMatrix) -> Result<EntanglementReport> {
    classify_with(rho, &OptimizerConfig::default(), 0)
}

/// Negativities, then bounds: exact pure-state measures above purity
/// `1 − PURITY_MARGIN`, otherwise local-unitary-optimized lower bounds with
/// the optimizer keyed by `stream`.
pub fn classify_with(rho: &DensityMatrix, cfg: &OptimizerConfig, stream: u64) -> Result<EntanglementReport> {
    classify_with_threshold(rho, cfg, stream, DETECTION_THRESHOLD)
}

/// [`classify_with`] with measures below `threshold` reported as zero.
pub fn classify_with_threshold(
    rho: &DensityMatrix,
    cfg: &OptimizerConfig,
    stream: u64,
    threshold: f64,
) -> Result<EntanglementReport> {
    require_three_qubits(rho.dim())?;
    let negativity = negativities(rho)?.map(|n| detect(n, threshold));
    let eig = herm_eig(rho.matrix())?;
    let top = *eig.values.last().expect("dimension 8");

    let (tau3, cgme, fidelity, pure, cgme_cut) = if rho.purity() > 1.0 - PURITY_MARGIN {
        let psi = PureState::normalized(eig.vector(7))?;
        let (cgme, cut) = cgme_pure_with_cut(&psi)?;
        let opt = optimize_bound_keyed(rho, Objective::Tau3, cfg, stream, &[])?;
        (tau3_pure(&psi)?, cgme, opt.fidelity, true, Some(cut))
    } else if top < 0.5 {
        // ⟨GHZ|UρU†|GHZ⟩ ≤ λ_max < ½ for every U: nothing to optimize
        let fidelity = Rotated::from_matrix(rho.matrix()).aligned_fidelity();
        (0.0, 0.0, fidelity, false, None)
    } else {
        let opt = optimize_bound_keyed(rho, Objective::Tau3, cfg, stream, &[])?;
        let tau3 = tau3_lower_bound(rho, &opt.unitary)?;
        let cgme = if opt.fidelity >= 0.5 {
            let at_fidelity = cgme_lower_bound(rho, &opt.unitary)?;
            let c = optimize_bound_keyed(rho, Objective::Cgme, cfg, stream, &[opt.unitary])?;
            at_fidelity.max(cgme_lower_bound(rho, &c.unitary)?)
        } else {
            0.0
        };
        (tau3, cgme, opt.fidelity, false, None)
    };

    let tau3_lb = detect(tau3, threshold);
    let cgme_lb = detect(cgme, threshold);
    Ok(EntanglementReport {
        negativity,
        tau3_lb,
        cgme_lb,
        ghz_fidelity_opt: fidelity.clamp(0.0, 1.0),
        class: EntanglementClass::from_measures(tau3_lb, cgme_lb, &negativity),
        pure,
        cgme_cut,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{pauli, psi_plus, tensor};
    use crate::model::{evolve, initial_product_state, DephasingPoint, ProductState};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_state(rng: &mut impl Rng) -> PureState {
        let amps = (0..8)
            .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        PureState::normalized(amps).unwrap()
    }

    fn random_product(rng: &mut impl Rng) -> PureState {
        let f = |rng: &mut dyn rand::RngCore| {
            [
                C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
            ]
        };
        ProductState::normalized([f(rng), f(rng), f(rng)]).unwrap().state()
    }

    fn ghz_noise(p: f64) -> DensityMatrix {
        DensityMatrix::mixture(&[
            (p, &PureState::ghz().projector()),
            (1.0 - p, &DensityMatrix::maximally_mixed(8).unwrap()),
        ])
        .unwrap()
    }

    #[test]
    fn negativity_examples() {
        let plus = PureState::plus(3).unwrap().projector();
        let ghz = PureState::ghz().projector();
        for cut in Bipartition::ALL {
            assert!(negativity(&plus, cut).unwrap() < 1e-15);
            assert!((negativity(&ghz, cut).unwrap() - 0.5).abs() < 1e-14);
        }
    }

    #[test]
    fn tau3_pure_examples() {
        assert!((tau3_pure(&PureState::ghz()).unwrap() - 1.0).abs() < 1e-15);
        assert!(tau3_pure(&PureState::w()).unwrap() < 1e-15);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            assert!(tau3_pure(&random_product(&mut rng)).unwrap() < 1e-7);
        }
        let (a, b) = (0.6, 0.8);
        let mut amps = vec![C64::new(0.0, 0.0); 8];
        amps[0] = C64::new(a, 0.0);
        amps[7] = C64::new(0.0, b);
        let psi = PureState::new(amps).unwrap();
        assert!((tau3_pure(&psi).unwrap() - 2.0 * a * b).abs() < 1e-15);
    }

    #[test]
    fn tau3_pure_matches_operator_definition() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let yy = tensor(&pauli::y(), &pauli::y()).unwrap();
        let ops = [
            tensor(&pauli::id().scale(C64::i()), &yy).unwrap(),
            tensor(&pauli::x(), &yy).unwrap(),
            tensor(&pauli::z(), &yy).unwrap(),
        ];
        for _ in 0..100 {
            let psi = random_state(&mut rng);
            let a = psi.amplitudes();
            let s: C64 = ops
                .iter()
                .map(|m| {
                    let v = m.apply(a);
                    let e: C64 = a.iter().zip(&v).map(|(x, y)| x * y).sum();
                    e * e
                })
                .sum();
            assert!((s.norm().sqrt() - tau3_pure(&psi).unwrap()).abs() < 1e-13);
        }
    }

    #[test]
    fn tau3_is_local_unitary_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..50 {
            let psi = random_state(&mut rng);
            let mut angles = [0.0; 9];
            for a in angles.iter_mut() {
                *a = rng.gen_range(-3.0..3.0);
            }
            let u = LocalUnitary::from_angles(angles).unwrap();
            let moved = PureState::normalized(u.matrix().apply(psi.amplitudes())).unwrap();
            assert!((tau3_pure(&psi).unwrap() - tau3_pure(&moved).unwrap()).abs() < 1e-12);
        }
    }

    #[test]
    fn cgme_pure_examples() {
        assert!((cgme_pure(&PureState::ghz()).unwrap() - 1.0).abs() < 1e-15);
        let w = cgme_pure(&PureState::w()).unwrap();
        assert!((w - 2.0 * 2f64.sqrt() / 3.0).abs() < 1e-15);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            assert!(cgme_pure(&random_product(&mut rng)).unwrap() < 1e-7);
        }
        // |0⟩|ψ+⟩: only the 1|23 cut is unentangled
        let bisep = PureState::basis(2, 0).unwrap().kron(&psi_plus()).unwrap();
        let (c, cut) = cgme_pure_with_cut(&bisep).unwrap();
        assert!(c < 1e-15);
        assert_eq!(cut, Bipartition::First);
    }

    #[test]
    fn cgme_pure_matches_linear_entropy() {
        use crate::linalg::{partial_trace, Side};
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..100 {
            let psi = random_state(&mut rng);
            let rho = psi.projector();
            let direct = Bipartition::ALL
                .iter()
                .map(|&cut| {
                    let r = partial_trace(&rho, cut, Side::Single).unwrap();
                    (2.0 * (1.0 - r.purity())).max(0.0).sqrt()
                })
                .fold(f64::INFINITY, f64::min);
            assert!((direct - cgme_pure(&psi).unwrap()).abs() < 1e-12);
        }
    }

    #[test]
    fn closed_form_checks() {
        let one = CouplingParams::new(1.0, 1.0).unwrap();
        assert_eq!(tau3_f0_closed_form(&one, 0.0), 0.0);
        assert!((tau3_f0_closed_form(&one, std::f64::consts::PI / 8.0) - 1.0).abs() < 1e-12);
        let c = CouplingParams::new(0.7, 0.4).unwrap();
        let rho0 = initial_product_state(&ProductState::plus());
        for k in 0..200 {
            let phi = 0.0471 * k as f64;
            let rho = evolve(&rho0, &c, &DephasingPoint::new(0.0, phi).unwrap()).unwrap();
            let psi = PureState::normalized(herm_eig(rho.matrix()).unwrap().vector(7)).unwrap();
            let exact = tau3_pure(&psi).unwrap();
            assert!((exact - tau3_f0_closed_form(&c, phi)).abs() < 1e-10, "φ = {phi}");
        }
    }

    #[test]
    fn ghz_fidelity_examples() {
        assert!((ghz_fidelity(&PureState::ghz().projector()).unwrap() - 1.0).abs() < 1e-15);
        assert!((ghz_fidelity(&DensityMatrix::maximally_mixed(8).unwrap()).unwrap() - 0.125).abs() < 1e-15);
        assert!((ghz_fidelity(&PureState::plus(3).unwrap().projector()).unwrap() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn twirl_matches_group_average() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let psi = random_state(&mut rng);
        let rho = DensityMatrix::mixture(&[
            (0.7, &psi.projector()),
            (0.3, &PureState::ghz().projector()),
        ])
        .unwrap();
        let perm = |p: [usize; 3]| {
            ComplexMatrix::from_fn(8, |r, c| {
                let bit = |x: usize, q: usize| (x >> (2 - q)) & 1;
                let ok = (0..3).all(|q| bit(r, q) == bit(c, p[q]));
                C64::new(if ok { 1.0 } else { 0.0 }, 0.0)
            })
            .unwrap()
        };
        let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]].map(perm);
        let flip = tensor(&tensor(&pauli::x(), &pauli::x()).unwrap(), &pauli::x()).unwrap();
        let id = ComplexMatrix::identity(8).unwrap();
        let k = 8;
        let mut acc = ComplexMatrix::zeros(8).unwrap();
        let mut count = 0.0;
        for p in &perms {
            for x in [&id, &flip] {
                for i in 0..k {
                    for j in 0..k {
                        let a = 2.0 * std::f64::consts::PI * i as f64 / k as f64;
                        let b = 2.0 * std::f64::consts::PI * j as f64 / k as f64;
                        let phase = ComplexMatrix::from_fn(8, |r, c| {
                            if r != c {
                                return C64::new(0.0, 0.0);
                            }
                            let z = |q: usize| if (r >> (2 - q)) & 1 == 0 { 1.0 } else { -1.0 };
                            C64::from_polar(1.0, a * z(0) + b * z(1) - (a + b) * z(2))
                        })
                        .unwrap();
                        let g = &(&phase * x) * p;
                        acc = &acc + &rho.matrix().conjugate_by(&g);
                        count += 1.0;
                    }
                }
            }
        }
        let avg = acc.scale_real(1.0 / count);
        assert!(avg.max_abs_diff(ghz_twirl(&rho).unwrap().matrix()) < 1e-14);
    }

    #[test]
    fn pure_state_fidelity_inequality() {
        // τ3(ψ) ≥ 4|⟨GHZ|ψ⟩|² − 3, probed near and away from GHZ
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let ghz = PureState::ghz();
        let mut worst = f64::NEG_INFINITY;
        for n in 0..20_000 {
            let eps = [1.0, 0.3, 0.1, 0.01][n % 4];
            let r = random_state(&mut rng);
            let amps = ghz
                .amplitudes()
                .iter()
                .zip(r.amplitudes())
                .map(|(g, x)| g + eps * x)
                .collect();
            let psi = PureState::normalized(amps).unwrap();
            let f = ghz.inner(&psi).norm_sqr();
            worst = worst.max(4.0 * f - 3.0 - tau3_pure(&psi).unwrap());
        }
        assert!(worst <= 1e-12, "{worst}");
    }

    #[test]
    fn bound_examples() {
        let id = LocalUnitary::identity();
        let ghz = PureState::ghz().projector();
        assert!((cgme_lower_bound(&ghz, &id).unwrap() - 1.0).abs() < 1e-15);
        assert!((tau3_lower_bound(&ghz, &id).unwrap() - 1.0).abs() < 1e-15);
        for p in [0.0f64, 0.3, 0.6, 0.7, 0.9, 1.0] {
            let expect = ((5.0 * p - 3.0) / 2.0).max(0.0);
            assert!((cgme_lower_bound(&ghz_noise(p), &id).unwrap() - expect).abs() < 1e-14);
        }
        let mixed = DensityMatrix::maximally_mixed(8).unwrap();
        assert_eq!(tau3_lower_bound(&mixed, &id).unwrap(), 0.0);
        let diag = ComplexMatrix::from_real_diagonal(&[0.4, 0.1, 0.0, 0.1, 0.0, 0.1, 0.0, 0.3]).unwrap();
        let diag = DensityMatrix::new(diag).unwrap();
        assert_eq!(cgme_lower_bound(&diag, &id).unwrap(), 0.0);
    }

    #[test]
    fn bounds_never_exceed_pure_values() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for _ in 0..200 {
            let amps = PureState::ghz()
                .amplitudes()
                .iter()
                .zip(random_state(&mut rng).amplitudes())
                .map(|(g, x)| g + 0.3 * x)
                .collect();
            let psi = PureState::normalized(amps).unwrap();
            let rho = psi.projector();
            let mut angles = [0.0; 9];
            for a in angles.iter_mut() {
                *a = rng.gen_range(-0.3..0.3);
            }
            let u = LocalUnitary::from_angles(angles).unwrap();
            assert!(tau3_lower_bound(&rho, &u).unwrap() <= tau3_pure(&psi).unwrap() + 1e-12);
            assert!(cgme_lower_bound(&rho, &u).unwrap() <= cgme_pure(&psi).unwrap() + 1e-12);
        }
    }

    #[test]
    fn classify_basics() {
        let cfg = OptimizerConfig { starts: 4, max_iterations: 300, ..OptimizerConfig::default() };
        let r = classify_with(&DensityMatrix::maximally_mixed(8).unwrap(), &cfg, 0).unwrap();
        assert_eq!(r.class, EntanglementClass::Undetected);
        let r = classify_with(&PureState::ghz().projector(), &cfg, 0).unwrap();
        assert_eq!(r.class, EntanglementClass::Ghz);
        assert!(r.pure);
        let r = classify_with(&PureState::w().projector(), &cfg, 0).unwrap();
        assert_eq!(r.class, EntanglementClass::W);
        let r = classify_with(&ghz_noise(0.8), &cfg, 0).unwrap();
        assert_eq!(r.class, EntanglementClass::Ghz);
        let r = classify_with(&ghz_noise(0.65), &cfg, 0).unwrap();
        assert_eq!(r.class, EntanglementClass::W);
        let bisep = PureState::basis(2, 0).unwrap().kron(&psi_plus()).unwrap().projector();
        let r = classify_with(&bisep, &cfg, 0).unwrap();
        assert_eq!(r.class, EntanglementClass::BiseparableEntangled);
    }

    #[test]
    fn class_labels_round_trip() {
        for c in [
            EntanglementClass::Ghz,
            EntanglementClass::W,
            EntanglementClass::BiseparableEntangled,
            EntanglementClass::Undetected,
        ] {
            assert_eq!(EntanglementClass::from_label(c.label()), Some(c));
            assert_eq!(serde_json::to_string(&c).unwrap(), format!("\"{}\"", c.label()));
        }
        assert_eq!(EntanglementClass::from_label("X"), None);
    }
}
