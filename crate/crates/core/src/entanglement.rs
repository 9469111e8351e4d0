//! Concurrence, tangle and entanglement of formation of two-qubit states.
//!
//! The Wootters values `λ_i` are the singular values of the symmetric matrix
//! `T = Ψᵀ (σy⊗σy) Ψ`, where the columns of `Ψ` are the subnormalized
//! eigenvectors `√p_i |v_i⟩` of `ρ`. They coincide with the square roots of
//! the eigenvalues of `ρ (σy⊗σy) ρ* (σy⊗σy)` and with the eigenvalues of
//! `√(√ρ ρ̃ √ρ)`, but stay accurate to `O(ε)` when `ρ` is rank deficient.

use crate::error::{Error, Result};
use crate::qmat::{self, ComplexMat4, C64};
use crate::states::{DensityMatrix4, StateFactor};

/// Concurrence, tangle and EOF of one state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EntanglementReport {
    pub concurrence: f64,
    pub tangle: f64,
    pub eof: f64,
    /// Wootters values, descending.
    pub lambdas: [f64; 4],
}

/// `h(x) = -x log₂x - (1-x) log₂(1-x)`, with `h(0) = h(1) = 0`.
pub fn binary_entropy(x: f64) -> Result<f64> {
    if !(-1e-12..=1.0 + 1e-12).contains(&x) {
        return Err(Error::DomainError(x));
    }
    Ok(binary_entropy_clamped(x))
}

fn binary_entropy_clamped(x: f64) -> f64 {
    let x = x.clamp(0.0, 1.0);
    let term = |p: f64| if p > 0.0 { -p * p.log2() } else { 0.0 };
    term(x) + term(1.0 - x)
}

/// `σy⊗σy`, real antidiagonal `(-1, 1, 1, -1)`.
fn sigma_yy() -> ComplexMat4 {
    ComplexMat4::from_real([
        [0.0, 0.0, 0.0, -1.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0, 0.0],
    ])
}

/// Spin-flipped state `ρ̃ = (σy⊗σy) ρ* (σy⊗σy)`.
pub fn spin_flip(rho: &DensityMatrix4) -> ComplexMat4 {
    let yy = sigma_yy();
    yy * rho.matrix().conj() * yy
}

/// Wootters values `λ_1 ≥ … ≥ λ_4`.
pub fn wootters_lambdas(rho: &DensityMatrix4) -> Result<[f64; 4]> {
    Ok(factor_lambdas(&StateFactor::from_density(rho)?))
}

/// Wootters values of `ρ = F F†` given the factor `F`.
pub fn factor_lambdas(f: &StateFactor) -> [f64; 4] {
    let psi = f.matrix();
    // σy⊗σy only permutes rows with signs: rows (3, 2, 1, 0) times (-1, 1, 1, -1).
    let flipped = |i: usize, b: usize| {
        let z = psi[(3 - i, b)];
        if i == 0 || i == 3 {
            -z
        } else {
            z
        }
    };
    let mut t = ComplexMat4::zeros();
    for a in 0..4 {
        for b in a..4 {
            let mut acc = C64::new(0.0, 0.0);
            for i in 0..4 {
                acc += psi[(i, a)] * flipped(i, b);
            }
            t[(a, b)] = acc;
            t[(b, a)] = acc;
        }
    }
    qmat::singular_values(&t)
}

/// Concurrence of `ρ = F F†`.
pub fn factor_concurrence(f: &StateFactor) -> f64 {
    concurrence_from_lambdas(&factor_lambdas(f))
}

fn concurrence_from_lambdas(l: &[f64; 4]) -> f64 {
    (l[0] - l[1] - l[2] - l[3]).clamp(0.0, 1.0)
}

/// Wootters concurrence `max(λ1 - λ2 - λ3 - λ4, 0)`.
pub fn concurrence(rho: &DensityMatrix4) -> Result<f64> {
    Ok(concurrence_from_lambdas(&wootters_lambdas(rho)?))
}

/// Concurrence through two PSD square roots: `λ = eig(√(√ρ ρ̃ √ρ))`.
///
/// Same quantity as [`concurrence`]; small `λ_i` lose accuracy to `O(√ε)`
/// because they are recovered as square roots of near-zero eigenvalues.
pub fn concurrence_via_sqrt(rho: &DensityMatrix4) -> Result<f64> {
    let root = qmat::psd_sqrt(rho.matrix())?;
    let r = (root * spin_flip(rho) * root).hermitian_part();
    let lambdas = qmat::hermitian_eig(&qmat::psd_sqrt(&r)?)?.eigenvalues;
    Ok(concurrence_from_lambdas(&lambdas))
}

/// `E = h((1 + √(1 - C²))/2)`.
pub fn eof_from_concurrence(c: f64) -> f64 {
    if c <= 0.0 {
        return 0.0;
    }
    let c = c.min(1.0);
    binary_entropy_clamped((1.0 + (1.0 - c * c).max(0.0).sqrt()) / 2.0)
}

/// Entanglement of formation.
pub fn eof(rho: &DensityMatrix4) -> Result<f64> {
    Ok(eof_from_concurrence(concurrence(rho)?))
}

pub fn report(rho: &DensityMatrix4) -> Result<EntanglementReport> {
    let lambdas = wootters_lambdas(rho)?;
    let c = concurrence_from_lambdas(&lambdas);
    Ok(EntanglementReport {
        concurrence: c,
        tangle: c * c,
        eof: eof_from_concurrence(c),
        lambdas,
    })
}
