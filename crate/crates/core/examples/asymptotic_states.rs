//! The f → ∞ state of |+++⟩ for each special coupling.

use triqubath::linalg::DensityMatrix;
use triqubath::model::{initial_product_state, CouplingParams, ProductState};
use triqubath::sweep::run_asymptotic;

fn main() -> triqubath::Result<()> {
    let rho0: DensityMatrix = initial_product_state(&ProductState::plus());
    for (l2, l3) in [("2/3", "1/3"), ("1", "1"), ("1/2", "1/2"), ("1/3", "1/3"), ("pi/4", "e/4"), ("0.7", "0")] {
        let r = run_asymptotic(&CouplingParams::parse(l2, l3)?, &rho0)?;
        println!("lambda = ({l2}, {l3}): {} , eigenspaces {:?}", r.case, r.eigenspaces);
        for row in &r.re {
            println!("    {}", row.iter().map(|e| format!("{e:>5}")).collect::<Vec<_>>().join(" "));
        }
        println!("    negativities {:?}", r.negativity);
    }
    Ok(())
}
