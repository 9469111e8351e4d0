//! Two-qubit density matrices, the named state families, the MEMS frontier,
//! and purity-constrained samplers for unentangled states.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;

use crate::entanglement;
use crate::error::{Error, Result};
use crate::qmat::{self, tensor2x2, ComplexMat2, ComplexMat4, C64};

/// Tolerance for the [`DensityMatrix4`] invariants.
pub const STATE_TOL: f64 = 1e-10;

/// Purity below which no two-qubit state is entangled.
pub const ESD_PURITY: f64 = 1.0 / 3.0;
/// Purity of the MEMS branch point `γ = 2/3`.
pub const MEMS_BRANCH_PURITY: f64 = 5.0 / 9.0;
pub const MEMS_BRANCH_GAMMA: f64 = 2.0 / 3.0;

const SAMPLER_MAX_REJECTIONS: usize = 10_000;

/// A two-qubit density matrix: Hermitian, unit trace, positive semidefinite.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityMatrix4 {
    matrix: ComplexMat4,
}

impl DensityMatrix4 {
    /// Validates every invariant (Hermiticity, trace, spectrum).
    pub fn new(matrix: ComplexMat4) -> Result<Self> {
        if !matrix.is_finite() {
            return Err(Error::InvalidState("non-finite entries".into()));
        }
        let defect = matrix.hermitian_defect();
        if defect > STATE_TOL {
            return Err(Error::InvalidState(format!(
                "not Hermitian (defect {defect:e})"
            )));
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > STATE_TOL || tr.im.abs() > STATE_TOL {
            return Err(Error::InvalidState(format!("trace {tr} != 1")));
        }
        let eig = qmat::hermitian_eig(&matrix)?;
        if eig.eigenvalues[3] < -STATE_TOL {
            return Err(Error::InvalidState(format!(
                "negative eigenvalue {:e}",
                eig.eigenvalues[3]
            )));
        }
        Ok(Self {
            matrix: matrix.hermitian_part(),
        })
    }

    /// Wraps a matrix that is valid by construction.
    pub(crate) fn from_trusted(matrix: ComplexMat4) -> Self {
        Self { matrix }
    }

    pub fn matrix(&self) -> &ComplexMat4 {
        &self.matrix
    }

    pub fn maximally_mixed() -> Self {
        Self::from_trusted(ComplexMat4::identity().scale(0.25))
    }

    /// Projector onto a normalized pure state.
    pub fn pure(psi: [C64; 4]) -> Result<Self> {
        let norm: f64 = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::InvalidState("zero state vector".into()));
        }
        let psi = psi.map(|z| z / norm);
        let mut m = ComplexMat4::zeros();
        for i in 0..4 {
            for j in 0..4 {
                m[(i, j)] = psi[i] * psi[j].conj();
            }
        }
        Ok(Self::from_trusted(m.hermitian_part()))
    }

    /// Convex combination `(1 - w) self + w other`.
    pub fn mix(&self, other: &Self, w: f64) -> Self {
        Self::from_trusted(self.matrix.scale(1.0 - w) + other.matrix.scale(w))
    }

    pub fn purity(&self) -> f64 {
        purity(self)
    }

    pub fn eigenvalues(&self) -> [f64; 4] {
        qmat::hermitian_eig(&self.matrix)
            .map(|e| e.eigenvalues)
            .expect("density matrices are Hermitian")
    }
}

/// A single-qubit density matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QubitState {
    matrix: ComplexMat2,
}

impl QubitState {
    /// `(I + r·σ)/2` for a Bloch vector with `|r| ≤ 1`.
    pub fn from_bloch(r: [f64; 3]) -> Result<Self> {
        let len = r.iter().map(|x| x * x).sum::<f64>().sqrt();
        if !(len <= 1.0 + 1e-12) {
            return Err(Error::ParamOutOfRange {
                name: "bloch_length",
                value: len,
                reason: "Bloch vector must have length at most 1",
            });
        }
        let m = ComplexMat2([
            [
                C64::new(0.5 * (1.0 + r[2]), 0.0),
                C64::new(0.5 * r[0], -0.5 * r[1]),
            ],
            [
                C64::new(0.5 * r[0], 0.5 * r[1]),
                C64::new(0.5 * (1.0 - r[2]), 0.0),
            ],
        ]);
        Ok(Self { matrix: m })
    }

    /// State of purity `mu ∈ [1/2, 1]` with Bloch vector along `dir`.
    pub fn with_purity(mu: f64, dir: [f64; 3]) -> Result<Self> {
        check_range_tol(mu, 0.5, 1.0)?;
        let norm = dir.iter().map(|x| x * x).sum::<f64>().sqrt();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::ParamOutOfRange {
                name: "direction",
                value: norm,
                reason: "Bloch direction must be nonzero",
            });
        }
        let r = (2.0 * mu - 1.0).max(0.0).sqrt() / norm;
        Self::from_bloch(dir.map(|x| x * r))
    }

    pub fn matrix(&self) -> &ComplexMat2 {
        &self.matrix
    }

    pub fn purity(&self) -> f64 {
        (self.matrix * self.matrix).trace().re
    }
}

/// Four nonnegative probabilities `p_{ij}` indexed `2i + j`, summing to 1.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProbVector4 {
    p: [f64; 4],
}

impl ProbVector4 {
    pub fn new(p: [f64; 4]) -> Result<Self> {
        let sum: f64 = p.iter().sum();
        if p.iter().any(|&x| !(x >= 0.0)) || (sum - 1.0).abs() > 1e-12 {
            return Err(Error::ParamOutOfRange {
                name: "probabilities",
                value: sum,
                reason: "entries must be nonnegative and sum to 1",
            });
        }
        Ok(Self { p })
    }

    pub fn uniform() -> Self {
        Self { p: [0.25; 4] }
    }

    pub fn values(&self) -> [f64; 4] {
        self.p
    }

    /// `Σ p²`, the purity of any classical-classical state built from `p`.
    pub fn sum_squares(&self) -> f64 {
        self.p.iter().map(|x| x * x).sum()
    }
}

/// Local measurement bases `{|α_0⟩, |α_1⟩}` and `{|β_0⟩, |β_1⟩}` with
/// `|α_0⟩ = cos θ|0⟩ + e^{iφ} sin θ|1⟩` and `|α_1⟩` its orthogonal complement.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeasurementBasisPair {
    pub alpha_theta: f64,
    pub alpha_phi: f64,
    pub beta_theta: f64,
    pub beta_phi: f64,
}

impl MeasurementBasisPair {
    pub const COMPUTATIONAL: Self = Self {
        alpha_theta: 0.0,
        alpha_phi: 0.0,
        beta_theta: 0.0,
        beta_phi: 0.0,
    };

    /// Projectors `[|α_0⟩⟨α_0|, |α_1⟩⟨α_1|]` and the same for β.
    pub fn projectors(&self) -> ([ComplexMat2; 2], [ComplexMat2; 2]) {
        (
            basis_projectors(self.alpha_theta, self.alpha_phi),
            basis_projectors(self.beta_theta, self.beta_phi),
        )
    }
}

/// Orthonormal qubit basis `|α_0⟩ = (cos θ, e^{iφ} sin θ)`,
/// `|α_1⟩ = (-e^{-iφ} sin θ, cos θ)`.
pub(crate) fn basis_vectors(theta: f64, phi: f64) -> [[C64; 2]; 2] {
    let (s, c) = theta.sin_cos();
    let e = C64::from_polar(1.0, phi);
    [[C64::new(c, 0.0), e * s], [-e.conj() * s, C64::new(c, 0.0)]]
}

pub(crate) fn basis_projectors(theta: f64, phi: f64) -> [ComplexMat2; 2] {
    let outer = |v: [C64; 2]| {
        ComplexMat2([
            [v[0] * v[0].conj(), v[0] * v[1].conj()],
            [v[1] * v[0].conj(), v[1] * v[1].conj()],
        ])
    };
    basis_vectors(theta, phi).map(outer)
}

/// A state held as `ρ = F F†`, with the columns of `F` the eigenvectors of
/// `ρ` scaled by the square roots of their eigenvalues.
///
/// Gates act as `F ↦ U F`, so entanglement of a transformed state needs no
/// eigensolver.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StateFactor {
    factor: ComplexMat4,
}

impl StateFactor {
    /// Factor of an arbitrary density matrix, via its eigendecomposition.
    pub fn from_density(rho: &DensityMatrix4) -> Result<Self> {
        let eig = crate::qmat::hermitian_eig(rho.matrix())?;
        let p = crate::qmat::clamp_psd_spectrum(eig.eigenvalues)?;
        let mut f = eig.eigenvectors;
        for row in f.0.iter_mut() {
            for (z, pk) in row.iter_mut().zip(p) {
                *z *= pk.sqrt();
            }
        }
        Ok(Self { factor: f })
    }

    /// Columns `√w_{ij} |a_i⟩ ⊗ |b_j⟩`, ordered `2i + j`.
    pub(crate) fn from_product_basis(a: &[[C64; 2]; 2], b: &[[C64; 2]; 2], w: [f64; 4]) -> Self {
        let mut f = ComplexMat4::zeros();
        for i in 0..2 {
            for j in 0..2 {
                let col = 2 * i + j;
                let s = w[col].max(0.0).sqrt();
                for r in 0..4 {
                    f.0[r][col] = a[i][r >> 1] * b[j][r & 1] * s;
                }
            }
        }
        Self { factor: f }
    }

    pub fn matrix(&self) -> &ComplexMat4 {
        &self.factor
    }

    /// `U F`, the factor of `U ρ U†`.
    pub fn transformed(&self, u: &ComplexMat4) -> Self {
        Self {
            factor: *u * self.factor,
        }
    }

    pub fn density(&self) -> DensityMatrix4 {
        DensityMatrix4::from_trusted((self.factor * self.factor.adjoint()).hermitian_part())
    }
}

/// Factor of the classical-classical state with basis vectors `alpha`, `beta`.
pub(crate) fn cc_factor(
    alpha: &[[C64; 2]; 2],
    beta: &[[C64; 2]; 2],
    p: &ProbVector4,
) -> StateFactor {
    StateFactor::from_product_basis(alpha, beta, p.p)
}

/// Eigenbasis (aligned, anti-aligned) and eigenvalues of a qubit with purity
/// `mu` and Bloch direction `dir`.
fn qubit_spectrum(mu: f64, dir: [f64; 3]) -> Result<([[C64; 2]; 2], [f64; 2])> {
    check_range_tol(mu, 0.5, 1.0)?;
    let norm = dir.iter().map(|x| x * x).sum::<f64>().sqrt();
    if !(norm > 0.0 && norm.is_finite()) {
        return Err(Error::ParamOutOfRange {
            name: "direction",
            value: norm,
            reason: "Bloch direction must be nonzero",
        });
    }
    let polar = (dir[2] / norm).clamp(-1.0, 1.0).acos();
    let azimuth = dir[1].atan2(dir[0]);
    let r = (2.0 * mu - 1.0).max(0.0).sqrt().min(1.0);
    Ok((
        basis_vectors(polar / 2.0, azimuth),
        [(1.0 + r) / 2.0, (1.0 - r) / 2.0],
    ))
}

/// Factor of [`product_state`].
pub fn product_factor(
    mu_a: f64,
    mu_b: f64,
    dir_a: [f64; 3],
    dir_b: [f64; 3],
) -> Result<StateFactor> {
    let (va, wa) = qubit_spectrum(mu_a, dir_a)?;
    let (vb, wb) = qubit_spectrum(mu_b, dir_b)?;
    let w = [wa[0] * wb[0], wa[0] * wb[1], wa[1] * wb[0], wa[1] * wb[1]];
    Ok(StateFactor::from_product_basis(&va, &vb, w))
}

/// `Tr ρ²`, clamped to `[0, 1 + 1e-12]`.
pub fn purity(rho: &DensityMatrix4) -> f64 {
    let m = rho.matrix();
    let sum: f64 = m.0.iter().flatten().map(|z| z.norm_sqr()).sum();
    sum.clamp(0.0, 1.0 + 1e-12)
}

/// Mixing parameter `g(γ)` of the MEMS family.
pub fn mems_g(gamma: f64) -> f64 {
    if gamma >= MEMS_BRANCH_GAMMA {
        gamma / 2.0
    } else {
        1.0 / 3.0
    }
}

/// Maximally entangled mixed state `ρ_ME(γ, φ)`; its concurrence is `γ`.
///
/// The coherence between `|01⟩` and `|10⟩` has magnitude `γ/2`, which keeps
/// the state physical and coincides with `ρ_MD(γ, 1-γ, φ)` for `γ ≥ 2/3`.
pub fn mems(gamma: f64, phi: f64) -> Result<DensityMatrix4> {
    if !(0.0..=1.0).contains(&gamma) {
        return Err(Error::GammaOutOfRange(gamma));
    }
    let g = mems_g(gamma);
    let mut m = ComplexMat4::diag([1.0 - 2.0 * g, g, g, 0.0]);
    m[(1, 2)] = C64::from_polar(gamma / 2.0, -phi);
    m[(2, 1)] = C64::from_polar(gamma / 2.0, phi);
    Ok(DensityMatrix4::from_trusted(m))
}

/// Purity of `ρ_ME(γ, ·)`.
pub fn mems_purity(gamma: f64) -> f64 {
    if gamma >= MEMS_BRANCH_GAMMA {
        gamma * gamma + (1.0 - gamma) * (1.0 - gamma)
    } else {
        1.0 / 3.0 + gamma * gamma / 2.0
    }
}

/// Maximally discordant mixed state `ρ_MD(a, b, φ)` with `1/2 ≤ a ≤ 1`, `b = 1 - a`.
pub fn mdms(a: f64, b: f64, phi: f64) -> Result<DensityMatrix4> {
    if !(0.5..=1.0).contains(&a) {
        return Err(Error::ParamOutOfRange {
            name: "a",
            value: a,
            reason: "requires 1/2 <= a <= 1",
        });
    }
    if !((b - (1.0 - a)).abs() <= 1e-12) {
        return Err(Error::ParamOutOfRange {
            name: "b",
            value: b,
            reason: "requires b = 1 - a",
        });
    }
    let mut m = ComplexMat4::diag([(1.0 - a + b) / 2.0, a / 2.0, a / 2.0, (1.0 - a - b) / 2.0]);
    m[(1, 2)] = C64::from_polar(a / 2.0, -phi);
    m[(2, 1)] = C64::from_polar(a / 2.0, phi);
    Ok(DensityMatrix4::from_trusted(m))
}

fn param_in(name: &'static str, value: f64, lo: f64, hi: f64, reason: &'static str) -> Result<()> {
    if (lo..=hi).contains(&value) {
        Ok(())
    } else {
        Err(Error::ParamOutOfRange {
            name,
            value,
            reason,
        })
    }
}

/// `diag(1-a, a) ⊗ |0⟩⟨0|`, the product input mapped onto the MEMS by the π/8 gate.
pub fn rho_diag(a: f64) -> Result<DensityMatrix4> {
    param_in("a", a, 0.0, 1.0, "requires 0 <= a <= 1")?;
    Ok(DensityMatrix4::from_trusted(ComplexMat4::diag([
        1.0 - a,
        0.0,
        a,
        0.0,
    ])))
}

/// `diag(1/3, 1/3 - γ/2, 1/3 + γ/2, 0)`, a classical-classical input of purity `1/3 + γ²/2`.
pub fn rho_s(gamma: f64) -> Result<DensityMatrix4> {
    param_in(
        "gamma",
        gamma,
        0.0,
        MEMS_BRANCH_GAMMA,
        "requires 0 <= gamma <= 2/3",
    )?;
    let third = 1.0 / 3.0;
    Ok(DensityMatrix4::from_trusted(ComplexMat4::diag([
        third,
        third - gamma / 2.0,
        third + gamma / 2.0,
        0.0,
    ])))
}

/// X-state with corner coherence `∓i/6`; unentangled for `γ ≤ 1/√3`.
pub fn rho_c(gamma: f64) -> Result<DensityMatrix4> {
    param_in(
        "gamma",
        gamma,
        0.0,
        1.0 / 3f64.sqrt(),
        "requires 0 <= gamma <= sqrt(3)/3",
    )?;
    let third = 1.0 / 3.0;
    let sixth = 1.0 / 6.0;
    let mut m = ComplexMat4::diag([sixth, third - gamma / 2.0, third + gamma / 2.0, sixth]);
    m[(0, 3)] = C64::new(0.0, -sixth);
    m[(3, 0)] = C64::new(0.0, sixth);
    Ok(DensityMatrix4::from_trusted(m))
}

fn check_range_tol(mu: f64, lo: f64, hi: f64) -> Result<f64> {
    const SLACK: f64 = 1e-12;
    if !(mu >= lo - SLACK && mu <= hi + SLACK) {
        return Err(Error::PurityOutOfRange {
            value: mu,
            min: lo,
            max: hi,
        });
    }
    Ok(mu.clamp(lo, hi))
}

/// Inverse of [`mems_purity`] on `μ ∈ [1/3, 1]`.
pub fn mems_gamma_for_purity(mu: f64) -> Result<f64> {
    let mu = check_range_tol(mu, ESD_PURITY, 1.0)?;
    Ok(if mu <= MEMS_BRANCH_PURITY {
        (2.0 * (mu - ESD_PURITY))
            .max(0.0)
            .sqrt()
            .min(MEMS_BRANCH_GAMMA)
    } else {
        ((1.0 + (2.0 * mu - 1.0).sqrt()) / 2.0).max(MEMS_BRANCH_GAMMA)
    })
}

/// Largest entanglement of formation attainable at purity `μ`.
pub fn mems_eof_curve(mu: f64) -> Result<f64> {
    Ok(entanglement::eof_from_concurrence(mems_gamma_for_purity(
        mu,
    )?))
}

/// Probability vector with `Σp = 1` and `Σp² = μ`, deterministic in `seed`.
pub fn sample_prob_vector(mu: f64, seed: u64) -> Result<ProbVector4> {
    sample_prob_vector_with(mu, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Draws `q` uniformly on the simplex and moves along the ray from the
/// uniform vector through `q` until `Σp² = μ`. When `q` is not pure enough,
/// the path continues from `q` toward its dominant vertex instead.
pub fn sample_prob_vector_with<R: Rng + ?Sized>(mu: f64, rng: &mut R) -> Result<ProbVector4> {
    let mu = check_range_tol(mu, 0.25, 1.0)?;
    let excess = mu - 0.25;
    if excess <= 0.0 {
        return Ok(ProbVector4::uniform());
    }
    for _ in 0..SAMPLER_MAX_REJECTIONS {
        let e: [f64; 4] = std::array::from_fn(|_| rng.sample(Exp1));
        let total: f64 = e.iter().sum();
        let q = e.map(|x| x / total);
        let q_excess = q.iter().map(|x| x * x).sum::<f64>() - 0.25;

        let p = if q_excess > 0.0 && excess <= q_excess {
            let t = (excess / q_excess).sqrt();
            q.map(|x| 0.25 + t * (x - 0.25))
        } else {
            let top = (0..4).fold(0, |best, i| if q[i] > q[best] { i } else { best });
            if mu >= 1.0 {
                let mut vertex = [0.0; 4];
                vertex[top] = 1.0;
                return Ok(ProbVector4 { p: vertex });
            }
            let d: [f64; 4] = std::array::from_fn(|i| f64::from(u8::from(i == top)) - q[i]);
            let a: f64 = d.iter().map(|x| x * x).sum();
            let b: f64 = 2.0 * q.iter().zip(&d).map(|(x, y)| x * y).sum::<f64>();
            let c: f64 = q.iter().map(|x| x * x).sum::<f64>() - mu;
            let s = ((-b + (b * b - 4.0 * a * c).max(0.0).sqrt()) / (2.0 * a)).min(1.0);
            std::array::from_fn(|i| q[i] + s * d[i])
        };
        if p.iter().all(|&x| x >= -1e-15) {
            return Ok(ProbVector4 {
                p: p.map(|x| x.max(0.0)),
            });
        }
    }
    Err(Error::SamplingExhausted(SAMPLER_MAX_REJECTIONS))
}

/// Uniform direction on the unit sphere.
pub fn random_direction<R: Rng + ?Sized>(rng: &mut R) -> [f64; 3] {
    let z: f64 = rng.random_range(-1.0..=1.0);
    let az: f64 = rng.random_range(0.0..2.0 * PI);
    let r = (1.0 - z * z).max(0.0).sqrt();
    [r * az.cos(), r * az.sin(), z]
}

/// `Σ p_{ij} |α_i⟩⟨α_i| ⊗ |β_j⟩⟨β_j|`.
pub fn cc_state(basis: &MeasurementBasisPair, p: &ProbVector4) -> DensityMatrix4 {
    let (alpha, beta) = basis.projectors();
    cc_state_from_projectors(&alpha, &beta, p)
}

pub(crate) fn cc_state_from_projectors(
    alpha: &[ComplexMat2; 2],
    beta: &[ComplexMat2; 2],
    p: &ProbVector4,
) -> DensityMatrix4 {
    let mut m = ComplexMat4::zeros();
    for i in 0..2 {
        for j in 0..2 {
            let w = p.p[2 * i + j];
            if w != 0.0 {
                m = m + tensor2x2(&alpha[i], &beta[j]).scale(w);
            }
        }
    }
    DensityMatrix4::from_trusted(m.hermitian_part())
}

/// `ρ_A ⊗ ρ_B` with purities `μ_A`, `μ_B ∈ [1/2, 1]` and Bloch directions `dir_a`, `dir_b`.
pub fn product_state(
    mu_a: f64,
    mu_b: f64,
    dir_a: [f64; 3],
    dir_b: [f64; 3],
) -> Result<DensityMatrix4> {
    let a = QubitState::with_purity(mu_a, dir_a)?;
    let b = QubitState::with_purity(mu_b, dir_b)?;
    Ok(DensityMatrix4::from_trusted(tensor2x2(
        a.matrix(),
        b.matrix(),
    )))
}
