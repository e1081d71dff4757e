//! A coarse class map of the (f, φ) plane, printed as text and written as a
//! PPM image to the path given on the command line (default `class_map.ppm`).

use triqubath::luopt::OptimizerConfig;
use triqubath::measures::EntanglementClass;
use triqubath::model::CouplingParams;
use triqubath::sweep::{emit_map, run_sweep, Axis, Channel, Grid, SweepConfig};

fn main() -> triqubath::Result<()> {
    let out = std::env::args().nth(1).unwrap_or_else(|| "class_map.ppm".into());
    let cfg = SweepConfig {
        coupling: Some(CouplingParams::parse("2/3", "1/3")?),
        grid: Some(Grid {
            f: Axis::new(0.0, 2.0, 40),
            phi: Axis::new(0.0, 3.0 * std::f64::consts::PI, 24),
        }),
        optimizer: OptimizerConfig { starts: 4, max_iterations: 300, ..OptimizerConfig::default() },
        ..SweepConfig::default()
    };
    let rows = run_sweep(&cfg, None)?;
    for line in rows.chunks(40).rev() {
        let text: String = line
            .iter()
            .map(|r| match r.class {
                EntanglementClass::Ghz => 'G',
                EntanglementClass::W => 'W',
                EntanglementClass::BiseparableEntangled => 'b',
                EntanglementClass::Undetected => '.',
            })
            .collect();
        println!("phi = {:6.3} {text}", line[0].phi);
    }
    std::fs::write(&out, emit_map(&rows, Channel::Class)?)?;
    println!("wrote {out}");
    Ok(())
}
