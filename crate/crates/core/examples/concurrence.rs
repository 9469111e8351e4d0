//! Concurrence, tangle and entanglement of formation of reference states.
//!
//! ```text
//! cargo run --example concurrence
//! ```

use entangling_power::entanglement::report;
use entangling_power::states::{mems, product_state, rho_c, DensityMatrix4};
use entangling_power::C64;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let h = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let z = C64::new(0.0, 0.0);
    let bell = DensityMatrix4::pure([z, h, h, z])?;
    let mixed = DensityMatrix4::maximally_mixed();

    let mut states: Vec<(String, DensityMatrix4)> = vec![
        ("Bell state".into(), bell),
        ("I/4".into(), mixed),
        (
            "product, purities 0.9 and 0.7".into(),
            product_state(0.9, 0.7, [1.0, 0.0, 0.0], [0.0, 1.0, 1.0])?,
        ),
        ("MEMS gamma=0.8".into(), mems(0.8, 0.0)?),
        ("rho_c gamma=0.5".into(), rho_c(0.5)?),
    ];
    for p in [0.2, 1.0 / 3.0, 0.5, 0.8] {
        states.push((format!("Werner p={p:.3}"), bell.mix(&mixed, 1.0 - p)));
    }

    println!(
        "{:<32} {:>8} {:>8} {:>8} {:>8}",
        "state", "purity", "C", "tangle", "EOF"
    );
    for (name, rho) in &states {
        let r = report(rho)?;
        println!(
            "{name:<32} {:>8.4} {:>8.4} {:>8.4} {:>8.4}",
            rho.purity(),
            r.concurrence,
            r.tangle,
            r.eof
        );
    }
    Ok(())
}
