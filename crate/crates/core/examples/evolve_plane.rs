//! Negativities of |+++⟩ evolved to a few points of the (f, φ) plane.

use std::f64::consts::PI;

use triqubath::measures::negativities;
use triqubath::model::{evolve, initial_product_state, CouplingParams, DephasingPoint, ProductState};

fn main() -> triqubath::Result<()> {
    let c = CouplingParams::parse("2/3", "1/3")?;
    let rho0 = initial_product_state(&ProductState::plus());
    println!("{:>6} {:>8}  {:>9} {:>9} {:>9}  purity", "f", "phi", "N(1|23)", "N(2|13)", "N(3|12)");
    for phi in [0.0, PI / 8.0, 3.0 * PI / 8.0, 3.0 * PI / 4.0] {
        for f in [0.0, 0.1, 0.5, 2.0] {
            let rho = evolve(&rho0, &c, &DephasingPoint::new(f, phi)?)?;
            let n = negativities(&rho)?;
            println!("{f:>6.2} {phi:>8.4}  {:>9.5} {:>9.5} {:>9.5}  {:.4}", n[0], n[1], n[2], rho.purity());
        }
    }
    Ok(())
}
