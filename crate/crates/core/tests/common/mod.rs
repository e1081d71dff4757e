#![allow(dead_code)]

use num_complex::Complex64 as C64;
use rand::Rng;
use triqubath::linalg::{ComplexMatrix, DensityMatrix, PureState};
use triqubath::luopt::LocalUnitary;
use triqubath::model::ProductState;

pub fn gaussian<R: Rng>(rng: &mut R) -> f64 {
    // Box-Muller
    let u: f64 = rng.gen_range(f64::EPSILON..1.0);
    let v: f64 = rng.gen();
    (-2.0 * u.ln()).sqrt() * (std::f64::consts::TAU * v).cos()
}

pub fn complex_gaussian<R: Rng>(rng: &mut R) -> C64 {
    C64::new(gaussian(rng), gaussian(rng))
}

pub fn random_hermitian<R: Rng>(rng: &mut R, dim: usize) -> ComplexMatrix {
    let g = ComplexMatrix::from_fn(dim, |_, _| complex_gaussian(rng)).unwrap();
    (&g + &g.adjoint()).scale_real(0.5)
}

pub fn random_pure<R: Rng>(rng: &mut R) -> PureState {
    PureState::normalized((0..8).map(|_| complex_gaussian(rng)).collect()).unwrap()
}

/// `G G† / tr`, with `G` an 8×`rank` Ginibre matrix.
pub fn random_mixed<R: Rng>(rng: &mut R, rank: usize) -> DensityMatrix {
    let cols: Vec<Vec<C64>> = (0..rank).map(|_| (0..8).map(|_| complex_gaussian(rng)).collect()).collect();
    let m = ComplexMatrix::from_fn(8, |i, j| cols.iter().map(|c| c[i] * c[j].conj()).sum()).unwrap();
    let tr = m.trace().re;
    DensityMatrix::new(m.scale_real(1.0 / tr)).unwrap()
}

pub fn random_unitary<R: Rng>(rng: &mut R) -> LocalUnitary {
    let mut a = [0.0; 9];
    for x in &mut a {
        *x = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
    }
    LocalUnitary::from_angles(a).unwrap()
}

/// Product state whose factors all have both amplitudes of modulus ≥ `floor`.
pub fn random_product<R: Rng>(rng: &mut R, floor: f64) -> ProductState {
    loop {
        let factors = [0; 3].map(|_| [complex_gaussian(rng), complex_gaussian(rng)]);
        let ps = ProductState::normalized(factors).unwrap();
        if ps.factors().iter().all(|[a, b]| a.norm() >= floor && b.norm() >= floor) {
            return ps;
        }
    }
}

pub fn pure_from(amps: &[(usize, f64)]) -> DensityMatrix {
    let mut v = vec![C64::new(0.0, 0.0); 8];
    for &(i, a) in amps {
        v[i] = C64::new(a, 0.0);
    }
    PureState::normalized(v).unwrap().projector()
}

pub fn max_entry(m: &ComplexMatrix) -> f64 {
    m.as_slice().iter().map(|z| z.norm()).fold(0.0, f64::max)
}
