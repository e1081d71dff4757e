//! Entanglement reports for reference states and for an evolved state.

use std::f64::consts::PI;

use triqubath::linalg::{DensityMatrix, PureState};
use triqubath::measures::classify;
use triqubath::model::{evolve, initial_product_state, CouplingParams, DephasingPoint, ProductState};

fn show(name: &str, rho: &DensityMatrix) -> triqubath::Result<()> {
    let r = classify(rho)?;
    println!(
        "{name:<22} {:<21} tau3 >= {:.4}  C_GME >= {:.4}  F_GHZ = {:.4}  N = {:.4?}",
        r.class.label(),
        r.tau3_lb,
        r.cgme_lb,
        r.ghz_fidelity_opt,
        r.negativity
    );
    Ok(())
}

fn main() -> triqubath::Result<()> {
    let ghz = PureState::ghz().projector();
    let w = PureState::w().projector();
    let noise = DensityMatrix::maximally_mixed(8)?;
    show("GHZ", &ghz)?;
    show("W", &w)?;
    show("0.8 GHZ + 0.2 noise", &DensityMatrix::mixture(&[(0.8, &ghz), (0.2, &noise)])?)?;
    show("0.5 GHZ + 0.5 noise", &DensityMatrix::mixture(&[(0.5, &ghz), (0.5, &noise)])?)?;

    let c = CouplingParams::parse("2/3", "1/3")?;
    let rho0 = initial_product_state(&ProductState::plus());
    for f in [0.0, 0.15, 1.0, 30.0] {
        let rho = evolve(&rho0, &c, &DephasingPoint::new(f, 3.0 * PI / 8.0)?)?;
        show(&format!("evolved, f = {f}"), &rho)?;
    }
    Ok(())
}
