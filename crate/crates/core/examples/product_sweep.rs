//! Product-state sweep of the π/8 gate, the CNOT and the iSWAP kernel.
//!
//! ```text
//! cargo run --release --example product_sweep -- [samples-per-mu] [mu-steps] [seed]
//! ```

use std::env;
use std::time::Instant;

use entangling_power::epower::sweep_gates;
use entangling_power::{CartanAngles, FamilyKind, SweepConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = env::args().skip(1);
    let samples: u64 = args
        .next()
        .map(|s| s.parse())
        .transpose()?
        .unwrap_or(20_000);
    let steps: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(16);
    let seed: u64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(0);

    let config = SweepConfig {
        mu_steps: steps,
        samples_per_mu: samples,
        seed,
        ..SweepConfig::new(CartanAngles::PI_8, FamilyKind::Product)
    };
    let gates = [CartanAngles::PI_8, CartanAngles::CNOT, CartanAngles::ISWAP];
    let start = Instant::now();
    let curves = sweep_gates(&gates, &config)?;
    eprintln!("{samples} candidates per point, {:.1?}", start.elapsed());

    println!(
        "{:>8} {:>10} {:>10} {:>10} {:>10} {:>10}",
        "mu", "mems", "pi/8", "gap", "cnot", "iswap"
    );
    for i in 0..steps {
        let p = &curves[0].points[i];
        println!(
            "{:>8.4} {:>10.5} {:>10.5} {:>10.5} {:>10.5} {:>10.5}",
            p.mu,
            p.mems_eof,
            p.ep_eof,
            p.gap,
            curves[1].points[i].ep_eof,
            curves[2].points[i].ep_eof
        );
    }
    Ok(())
}
