//! Entangling power of one gate at one purity.
//!
//! ```text
//! cargo run --release --example entangling_power -- <theta-x> <theta-y> <theta-z> <mu> <cc|product|analytic> [samples] [seed]
//! cargo run --release --example entangling_power -- pi/8 pi/8 0 0.5 cc 1440000
//! ```

use std::env;
use std::time::Instant;

use entangling_power::gates::parse_angle;
use entangling_power::{entangling_power, CartanAngles, FamilyKind};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = env::args().skip(1).collect();
    if args.len() < 5 {
        eprintln!(
            "usage: entangling_power <theta-x> <theta-y> <theta-z> <mu> <family> [samples] [seed]"
        );
        std::process::exit(2);
    }
    let angle = |i: usize| parse_angle(&args[i]);
    let gate = CartanAngles::new(angle(0)?, angle(1)?, angle(2)?)?;
    let mu = angle(3)?;
    let family: FamilyKind = args[4].parse()?;
    let samples = match args.get(5) {
        Some(s) => s.parse()?,
        None => family.default_samples(),
    };
    let seed = args.get(6).map(|s| s.parse()).transpose()?.unwrap_or(0);

    let start = Instant::now();
    let p = entangling_power(gate, mu, family, samples, seed, false)?;
    println!("gate      {gate}");
    println!("purity    {mu}");
    println!("EP (EOF)  {:.6}", p.ep_eof);
    println!("tangle    {:.6}", p.ep_tangle);
    println!("MEMS EOF  {:.6}", p.mems_eof);
    println!("gap       {:.6}", p.gap);
    println!("argmax    {}", p.argmax);
    println!("{} candidates in {:.1?}", p.n_samples, start.elapsed());
    Ok(())
}
