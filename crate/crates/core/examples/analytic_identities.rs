//! The closed-form inputs that the π/8 gate and the CNOT kernel carry onto
//! the MEMS frontier, checked entrywise.
//!
//! ```text
//! cargo run --example analytic_identities
//! ```

use std::f64::consts::FRAC_PI_2;

use entangling_power::entanglement::{concurrence, eof};
use entangling_power::states::{mems, rho_c, rho_diag, rho_s};
use entangling_power::{apply_gate, cartan_kernel, verify_analytic, CartanAngles};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let pi8 = cartan_kernel(CartanAngles::PI_8)?;
    let cnot = cartan_kernel(CartanAngles::CNOT)?;

    let rho = rho_diag(0.8)?;
    let out = apply_gate(&pi8, &rho);
    println!(
        "rho_diag(0.8): C before {:.2e}, after {:.6}, EOF {:.6}, distance to MEMS(0.8) {:.1e}",
        concurrence(&rho)?,
        concurrence(&out)?,
        eof(&out)?,
        out.matrix().max_abs_diff(mems(0.8, FRAC_PI_2)?.matrix())
    );

    let rho = rho_s(0.5)?;
    let out = apply_gate(&pi8, &rho);
    println!(
        "rho_s(0.5):    purity {:.6}, C after {:.6}, distance to MEMS(0.5) {:.1e}",
        rho.purity(),
        concurrence(&out)?,
        out.matrix().max_abs_diff(mems(0.5, FRAC_PI_2)?.matrix())
    );

    let rho = rho_c(0.5)?;
    let out = apply_gate(&cnot, &rho);
    println!(
        "rho_c(0.5):    purity {:.6}, C after {:.6}, distance to MEMS(0.5) {:.1e}",
        rho.purity(),
        concurrence(&out)?,
        out.matrix().max_abs_diff(mems(0.5, FRAC_PI_2)?.matrix())
    );

    println!();
    let report = verify_analytic(1e-12)?;
    for c in &report.checks {
        println!(
            "{:<28} {:>3} cases  max deviation {:.2e}",
            c.name, c.cases, c.max_deviation
        );
    }
    println!("all passed: {}", report.all_passed());
    Ok(())
}
