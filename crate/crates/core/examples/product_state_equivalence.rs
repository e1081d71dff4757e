//! Any product input without basis-state factors is a diagonal transform of
//! |+++⟩, and the transform commutes with the dynamics.

use num_complex::Complex64 as C64;
use triqubath::linalg::{herm_eig, DensityMatrix, PureState};
use triqubath::measures::tau3_pure;
use triqubath::model::{
    diagonal_gl_transform, evolve, initial_product_state, tau3_scale_factor, CouplingParams, DephasingPoint,
    ProductState,
};

fn main() -> triqubath::Result<()> {
    let c = CouplingParams::parse("2/3", "1/3")?;
    let plus = initial_product_state(&ProductState::plus());
    let ps = ProductState::normalized([
        [C64::new(0.8, 0.0), C64::new(0.6, 0.0)],
        [C64::new(0.3, 0.1), C64::new(-0.2, 0.9)],
        [C64::new(1.0, 0.0), C64::new(0.0, 2.0)],
    ])?;
    let p = DephasingPoint::new(0.3, 0.9)?;

    let a = diagonal_gl_transform(&ps, &evolve(&plus, &c, &p)?)?;
    let b = evolve(&initial_product_state(&ps), &c, &p)?;
    println!("transform after evolution vs evolution of the product state: {:.2e}", a.matrix().max_abs_diff(b.matrix()));

    let q = DephasingPoint::new(0.0, 0.4)?;
    let tau = |rho: DensityMatrix| -> triqubath::Result<f64> {
        let e = herm_eig(rho.matrix())?;
        tau3_pure(&PureState::normalized(e.vector(7))?)
    };
    let t_plus = tau(evolve(&plus, &c, &q)?)?;
    let t_ps = tau(evolve(&initial_product_state(&ps), &c, &q)?)?;
    println!("tau3 ratio {:.12}, predicted scale {:.12}", t_ps / t_plus, tau3_scale_factor(&ps));
    Ok(())
}
