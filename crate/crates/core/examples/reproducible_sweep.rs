//! Writes a sweep as CSV twice, on pools of one and four worker threads,
//! and checks the bytes match.
//!
//! ```text
//! cargo run --release --example reproducible_sweep -- [out.csv]
//! ```

use entangling_power::output::write_sweep_csv;
use entangling_power::{sweep, CartanAngles, FamilyKind, SweepConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let config = SweepConfig {
        mu_steps: 12,
        samples_per_mu: 20_000,
        seed: 42,
        ..SweepConfig::new(CartanAngles::PI_8, FamilyKind::Product)
    };
    let render = |threads: usize| -> Result<Vec<u8>, Box<dyn std::error::Error>> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()?;
        let curve = pool.install(|| sweep(&config))?;
        let mut buf = Vec::new();
        write_sweep_csv(&curve, &mut buf)?;
        Ok(buf)
    };
    let one = render(1)?;
    let four = render(4)?;
    assert_eq!(one, four, "thread count changed the output");
    eprintln!("1 and 4 threads: {} identical bytes", one.len());

    match std::env::args().nth(1) {
        Some(path) => std::fs::write(path, &one)?,
        None => print!("{}", String::from_utf8(one)?),
    }
    Ok(())
}
