//! The (f(t), φ(t)) path traced by an ohmic bath and by a single mode.

use triqubath::bath::{self, BathMode, BathSpec};

fn main() -> triqubath::Result<()> {
    let ohmic = BathSpec::ohmic(0.05, 10.0, f64::INFINITY)?;
    let mode = BathSpec::discrete(vec![BathMode::new(0.5, 1.0)?], 2.0)?;
    let times: Vec<f64> = (0..=10).map(|k| 0.5 * k as f64).collect();

    for (name, spec) in [("ohmic, T = 0", &ohmic), ("single mode, beta = 2", &mode)] {
        println!("{name}");
        let p = bath::path(spec, &times)?;
        for (t, q) in p.times.iter().zip(&p.points) {
            println!("  t = {t:4.1}  f = {:.6}  phi = {:.6}", q.f, q.phi);
        }
    }
    // at zero temperature the ohmic f grows like a logarithm and never saturates
    let late = bath::f_of_t(&ohmic, 1e3)?;
    println!("ohmic f(1000) = {late:.4}, (eta/2) ln(1 + wc^2 t^2) = {:.4}", 0.025 * (1.0 + 1e8f64).ln());
    Ok(())
}
