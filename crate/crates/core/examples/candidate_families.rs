//! Unentangled candidate states of a prescribed purity: classical-classical
//! states from the probability sampler, and products of two qubits.
//!
//! ```text
//! cargo run --example candidate_families -- [mu]
//! ```

use entangling_power::entanglement::concurrence;
use entangling_power::states::{cc_state, product_state, sample_prob_vector, MeasurementBasisPair};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mu: f64 = std::env::args()
        .nth(1)
        .map(|s| s.parse())
        .transpose()?
        .unwrap_or(0.6);

    println!("classical-classical states at purity {mu}");
    let basis = MeasurementBasisPair {
        alpha_theta: 0.3,
        alpha_phi: 1.0,
        beta_theta: std::f64::consts::FRAC_PI_4,
        beta_phi: 0.0,
    };
    for seed in 0..4 {
        let p = sample_prob_vector(mu, seed)?;
        let rho = cc_state(&basis, &p);
        println!(
            "  p = {:.4?}  purity {:.12}  C {:.1e}",
            p.values(),
            rho.purity(),
            concurrence(&rho)?
        );
    }

    println!("product states at purity {mu}");
    let lo = mu.max(0.5);
    for k in 0..4 {
        let mu_a = lo + (1.0 - lo) * f64::from(k) / 3.0;
        let mu_b = mu / mu_a;
        if !(0.5..=1.0).contains(&mu_b) {
            continue;
        }
        let rho = product_state(mu_a, mu_b, [0.0, 0.0, 1.0], [1.0, 1.0, 0.0])?;
        println!(
            "  mu_A {mu_a:.4}  mu_B {mu_b:.4}  purity {:.12}  C {:.1e}",
            rho.purity(),
            concurrence(&rho)?
        );
    }
    Ok(())
}
