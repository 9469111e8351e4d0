//! Builds the named Cartan kernels and prints their matrices.
//!
//! ```text
//! cargo run --example cartan_kernels
//! ```

use entangling_power::gates::parse_angle;
use entangling_power::{cartan_kernel, CartanAngles, ComplexMat4};

fn print_matrix(m: &ComplexMat4) {
    for i in 0..4 {
        let row: Vec<String> = (0..4)
            .map(|j| format!("{:>7.4}{:+.4}i", m[(i, j)].re, m[(i, j)].im))
            .collect();
        println!("  {}", row.join("  "));
    }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let custom = CartanAngles::new(
        parse_angle("3pi/16")?,
        parse_angle("pi/16")?,
        parse_angle("0.2")?,
    )?;
    for angles in [
        CartanAngles::PI_8,
        CartanAngles::CNOT,
        CartanAngles::ISWAP,
        custom,
    ] {
        let u = cartan_kernel(angles)?;
        println!(
            "{}  canonical={}  |U U† - I|={:.1e}",
            u.label,
            angles.is_canonical(),
            u.matrix.unitarity_defect()
        );
        print_matrix(&u.matrix);
        println!();
    }

    // Angles outside [0, π/2] are rejected.
    match CartanAngles::new(2.0, 0.0, 0.0) {
        Ok(_) => unreachable!(),
        Err(e) => println!("rejected: {e}"),
    }
    Ok(())
}
