//! Cyclic Jacobi eigensolver for small complex Hermitian matrices.

use num_complex::Complex64 as C64;

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

/// Inputs further than this from Hermitian are rejected.
pub const HERMITIAN_TOL: f64 = 1e-10;
const OFF_DIAGONAL_TOL: f64 = 1e-14;
const MAX_SWEEPS: usize = 100;

/// Spectral decomposition `m = V diag(values) V†`, eigenvalues ascending and
/// the k-th column of `vectors` belonging to `values[k]`.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    pub fn vector(&self, k: usize) -> Vec<C64> {
        (0..self.vectors.dim()).map(|i| self.vectors[(i, k)]).collect()
    }

    /// `V Λ V†`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.vectors.dim();
        ComplexMatrix::from_fn(n, |i, j| {
            (0..n)
                .map(|k| self.vectors[(i, k)] * self.values[k] * self.vectors[(j, k)].conj())
                .sum()
        })
        .expect("dimension already validated")
    }
}

pub fn herm_eig(m: &ComplexMatrix) -> Result<HermitianEigen> {
    let defect = m.hermiticity_defect();
    if defect > HERMITIAN_TOL {
        return Err(Error::NotHermitian(defect));
    }
    let n = m.dim();
    let mut a = m.hermitian_part();
    let mut v = ComplexMatrix::identity(n)?;
    let scale = a.frobenius_norm().max(f64::MIN_POSITIVE);

    let off_norm = |a: &ComplexMatrix| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                s += a[(i, j)].norm_sqr();
            }
        }
        (2.0 * s).sqrt()
    };

    let mut sweeps = 0;
    loop {
        let off = off_norm(&a);
        if off <= OFF_DIAGONAL_TOL * scale {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::EigenNotConverged {
                sweeps,
                residual: off,
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&k| a[(k, k)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, |i, k| v[(i, order[k])])?;
    Ok(HermitianEigen { values, vectors })
}

/// One Jacobi rotation annihilating `a[p][q]`: the phase of the entry is
/// moved into a diagonal unitary, leaving a real symmetric 2x2 problem.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let n = a.dim();
    let apq = a[(p, q)];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    // negligible relative to both diagonal entries: drop without rotating
    if r < f64::EPSILON * 1e-3 * (app.abs() + aqq.abs()) {
        a[(p, q)] = C64::new(0.0, 0.0);
        a[(q, p)] = C64::new(0.0, 0.0);
        return;
    }
    let phase = apq / r;
    let theta = (aqq - app) / (2.0 * r);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    // G = [[c, s], [-s e^{-iθ}, c e^{-iθ}]] acting on columns p, q
    let gpp = C64::new(c, 0.0);
    let gpq = C64::new(s, 0.0);
    let gqp = -phase.conj() * s;
    let gqq = phase.conj() * c;

    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * gpp + akq * gqp;
        a[(k, q)] = akp * gpq + akq * gqq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = gpp.conj() * apk + gqp.conj() * aqk;
        a[(q, k)] = gpq.conj() * apk + gqq.conj() * aqk;
    }
    a[(p, q)] = C64::new(0.0, 0.0);
    a[(q, p)] = C64::new(0.0, 0.0);
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * gpp + vkq * gqp;
        v[(k, q)] = vkp * gpq + vkq * gqq;
    }
}

/// Sum of absolute eigenvalues of a Hermitian matrix.
pub fn trace_norm(m: &ComplexMatrix) -> Result<f64> {
    Ok(herm_eig(m)?.values.iter().map(|x| x.abs()).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::pauli;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_hermitian(rng: &mut impl Rng, n: usize) -> ComplexMatrix {
        let m = ComplexMatrix::from_fn(n, |_, _| {
            C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        })
        .unwrap();
        m.hermitian_part()
    }

    #[test]
    fn diagonal_input_sorted() {
        let e = herm_eig(&ComplexMatrix::from_real_diagonal(&[3.0, 1.0, 2.0, 0.5]).unwrap())
            .unwrap();
        assert_eq!(e.values, vec![0.5, 1.0, 2.0, 3.0]);
    }

    #[test]
    fn pauli_spectra() {
        for p in [pauli::x(), pauli::y(), pauli::z()] {
            let e = herm_eig(&p).unwrap();
            assert!((e.values[0] + 1.0).abs() < 1e-15);
            assert!((e.values[1] - 1.0).abs() < 1e-15);
        }
        assert!((trace_norm(&pauli::z()).unwrap() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn random_reconstruction_and_orthonormality() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in [2, 4, 8] {
            for _ in 0..200 {
                let m = random_hermitian(&mut rng, n);
                let e = herm_eig(&m).unwrap();
                assert!(e.reconstruct().max_abs_diff(&m) <= 1e-12);
                let vhv = &e.vectors.adjoint() * &e.vectors;
                assert!(vhv.max_abs_diff(&ComplexMatrix::identity(n).unwrap()) <= 1e-12);
                assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
            }
        }
    }

    #[test]
    fn degenerate_spectrum() {
        let mut m = ComplexMatrix::identity(8).unwrap().scale_real(0.125);
        m[(0, 7)] = C64::new(0.0, 0.125);
        m[(7, 0)] = C64::new(0.0, -0.125);
        let e = herm_eig(&m).unwrap();
        assert!(e.values[0].abs() < 1e-15);
        assert!((e.values[7] - 0.25).abs() < 1e-15);
        assert!(e.reconstruct().max_abs_diff(&m) < 1e-15);
    }

    #[test]
    fn rejects_non_hermitian() {
        let mut m = ComplexMatrix::identity(2).unwrap();
        m[(0, 1)] = C64::new(1.0, 0.0);
        assert!(matches!(herm_eig(&m), Err(Error::NotHermitian(_))));
    }
}
