//! 2N along f at fixed φ for the three bundled curve configurations.

use std::path::Path;

use triqubath::sweep::{run_curve, SweepConfig};

fn main() -> triqubath::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("configs");
    for name in ["fig2a.json", "fig2b.json", "fig2c.json"] {
        let cfg = SweepConfig::from_path(&dir.join(name))?;
        let rows = run_curve(&cfg, None)?;
        println!("{name}");
        for r in rows.iter().step_by(32).chain(rows.last()) {
            let n = r.two_negativity();
            println!("  f = {:5.3}  2N = {:.6} {:.6} {:.6}  {}", r.f, n[0], n[1], n[2], r.class.label());
        }
    }
    Ok(())
}
