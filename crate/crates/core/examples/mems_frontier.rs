//! The MEMS frontier: the largest EOF any two-qubit state of a given purity
//! can carry. Writes the `mems-curve` CSV to standard output.
//!
//! ```text
//! cargo run --example mems_frontier -- [points]
//! ```

use std::io;

use entangling_power::entanglement::concurrence;
use entangling_power::epower::mu_grid;
use entangling_power::output::{write_mems_curve_csv, MemsRow};
use entangling_power::states::{mems, mems_eof_curve, mems_gamma_for_purity, ESD_PURITY};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let points: usize = std::env::args()
        .nth(1)
        .map(|s| s.parse())
        .transpose()?
        .unwrap_or(13);
    let rows = mu_grid(ESD_PURITY, 1.0, points)
        .into_iter()
        .map(|mu| {
            let gamma = mems_gamma_for_purity(mu)?;
            Ok(MemsRow {
                mu,
                gamma,
                concurrence: concurrence(&mems(gamma, 0.0)?)?,
                eof: mems_eof_curve(mu)?,
            })
        })
        .collect::<entangling_power::Result<Vec<_>>>()?;
    write_mems_curve_csv(&rows, io::stdout().lock())?;
    Ok(())
}
