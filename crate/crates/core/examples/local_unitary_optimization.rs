//! Recovering a GHZ state hidden behind random local rotations and noise.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use triqubath::linalg::{DensityMatrix, PureState};
use triqubath::luopt::{apply_local_unitary, optimize_bound, LocalUnitary, Objective, OptimizerConfig};
use triqubath::measures::{cgme_lower_bound, ghz_fidelity, tau3_lower_bound};

fn main() -> triqubath::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut angles = [0.0; 9];
    angles.iter_mut().for_each(|a| *a = rng.gen_range(-3.0..3.0));
    let hide = LocalUnitary::from_angles(angles)?;
    let ghz = PureState::ghz().projector();
    let noisy = DensityMatrix::mixture(&[(0.85, &ghz), (0.15, &DensityMatrix::maximally_mixed(8)?)])?;
    let rho = apply_local_unitary(&noisy, &hide)?;
    println!("GHZ fidelity as given: {:.4}", ghz_fidelity(&rho)?);

    let cfg = OptimizerConfig::default();
    for objective in [Objective::Tau3, Objective::Cgme] {
        let best = optimize_bound(&rho, objective, &cfg)?;
        println!(
            "{objective:?}: fidelity {:.6}, tau3 >= {:.6}, C_GME >= {:.6}, {} evaluations",
            best.fidelity,
            tau3_lower_bound(&rho, &best.unitary)?,
            cgme_lower_bound(&rho, &best.unitary)?,
            best.evaluations
        );
    }
    Ok(())
}
