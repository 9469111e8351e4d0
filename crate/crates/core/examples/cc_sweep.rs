//! Classical-classical sweep of the π/8 gate, the CNOT and the iSWAP kernel
//! over one shared candidate pool.
//!
//! ```text
//! cargo run --release --example cc_sweep -- [samples-per-pattern] [mu-steps]
//! ```

use std::env;
use std::time::Instant;

use entangling_power::epower::{cc_cell_count, sweep_gates};
use entangling_power::{CartanAngles, FamilyKind, SweepConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = env::args().skip(1);
    let per_pattern: u64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(20);
    let steps: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(8);

    let config = SweepConfig {
        mu_steps: steps,
        samples_per_mu: per_pattern * cc_cell_count() as u64,
        ..SweepConfig::new(CartanAngles::PI_8, FamilyKind::Cc)
    };
    let gates = [CartanAngles::PI_8, CartanAngles::CNOT, CartanAngles::ISWAP];
    let start = Instant::now();
    let curves = sweep_gates(&gates, &config)?;
    eprintln!(
        "{} candidates per point, {:.1?}",
        config.samples_per_mu,
        start.elapsed()
    );

    println!(
        "{:>8} {:>10} {:>10} {:>10} {:>10}",
        "mu", "mems", "pi/8", "cnot", "iswap"
    );
    for i in 0..steps {
        let p = &curves[0].points[i];
        println!(
            "{:>8.4} {:>10.5} {:>10.5} {:>10.5} {:>10.5}",
            p.mu, p.mems_eof, p.ep_eof, curves[1].points[i].ep_eof, curves[2].points[i].ep_eof
        );
    }
    Ok(())
}
