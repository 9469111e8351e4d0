//! Cartan-kernel two-qubit gates `U_c(θx, θy, θz) = exp(-i Σ θk σk⊗σk)`
//! and Haar-random single-qubit unitaries.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_8, PI};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::qmat::{ComplexMat2, ComplexMat4, C64};
use crate::states::DensityMatrix4;

/// Kernel parameters `(θx, θy, θz)` in radians, each in `[0, π/2]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CartanAngles {
    pub theta_x: f64,
    pub theta_y: f64,
    pub theta_z: f64,
}

impl CartanAngles {
    pub const IDENTITY: Self = Self::raw(0.0, 0.0, 0.0);
    /// `U_c(π/4, 0, 0)`, locally equivalent to CNOT.
    pub const CNOT: Self = Self::raw(FRAC_PI_4, 0.0, 0.0);
    /// `U_c(π/4, π/4, 0)`, locally equivalent to iSWAP.
    pub const ISWAP: Self = Self::raw(FRAC_PI_4, FRAC_PI_4, 0.0);
    /// `U_c(π/8, π/8, 0)`, the two-qubit π/8 gate.
    pub const PI_8: Self = Self::raw(FRAC_PI_8, FRAC_PI_8, 0.0);

    const fn raw(theta_x: f64, theta_y: f64, theta_z: f64) -> Self {
        Self {
            theta_x,
            theta_y,
            theta_z,
        }
    }

    pub fn new(theta_x: f64, theta_y: f64, theta_z: f64) -> Result<Self> {
        let angles = Self::raw(theta_x, theta_y, theta_z);
        angles.validate()?;
        Ok(angles)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, value) in [
            ("theta_x", self.theta_x),
            ("theta_y", self.theta_y),
            ("theta_z", self.theta_z),
        ] {
            if !(0.0..=FRAC_PI_2).contains(&value) {
                return Err(Error::AngleOutOfRange { name, value });
            }
        }
        Ok(())
    }

    /// `0 ≤ θz ≤ θy ≤ θx ≤ π/4`.
    pub fn is_canonical(&self) -> bool {
        0.0 <= self.theta_z
            && self.theta_z <= self.theta_y
            && self.theta_y <= self.theta_x
            && self.theta_x <= FRAC_PI_4
    }

    /// Same `(θx, θy)` with a different `θz`.
    pub fn with_theta_z(self, theta_z: f64) -> Result<Self> {
        Self::new(self.theta_x, self.theta_y, theta_z)
    }
}

impl fmt::Display for CartanAngles {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "U_c({},{},{})",
            angle_label(self.theta_x),
            angle_label(self.theta_y),
            angle_label(self.theta_z)
        )
    }
}

/// Renders `kπ/n` symbolically for small denominators, decimals otherwise.
pub fn angle_label(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    for den in 1..=24u32 {
        let num = x * f64::from(den) / PI;
        let k = num.round();
        if k >= 1.0 && (num - k).abs() < 1e-12 {
            let k = k as u64;
            let g = gcd(k, u64::from(den));
            let (k, den) = (k / g, u64::from(den) / g);
            let head = if k == 1 {
                "pi".to_string()
            } else {
                format!("{k}pi")
            };
            return if den == 1 {
                head
            } else {
                format!("{head}/{den}")
            };
        }
    }
    format!("{x}")
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Parses a real literal: decimal (`0.3926990817`), `pi`, `Mpi`, `pi/N`,
/// `Mpi/N`, or a plain fraction `M/N`.
pub fn parse_angle(text: &str) -> std::result::Result<f64, String> {
    let s = text.trim();
    let bad = || format!("cannot parse '{text}' as a number or pi fraction");
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => {
            let d: f64 = d.trim().parse().map_err(|_| bad())?;
            if !(d.is_finite() && d != 0.0) {
                return Err(bad());
            }
            (n.trim(), d)
        }
        None => (s, 1.0),
    };
    let value = if let Some(coef) = num.strip_suffix("pi") {
        let coef = coef.trim().trim_end_matches('*');
        let m: f64 = match coef {
            "" => 1.0,
            "-" => -1.0,
            c => c.parse().map_err(|_| bad())?,
        };
        m * PI / den
    } else {
        num.parse::<f64>().map_err(|_| bad())? / den
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(bad())
    }
}

/// A two-qubit unitary with a human-readable label.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoQubitGate {
    pub matrix: ComplexMat4,
    pub label: String,
}

impl TwoQubitGate {
    pub fn identity() -> Self {
        Self {
            matrix: ComplexMat4::identity(),
            label: "I".into(),
        }
    }
}

/// A single-qubit unitary, one of the local factors `L_i`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LocalUnitary {
    pub matrix: ComplexMat2,
}

/// `exp(-i(θx σx⊗σx + θy σy⊗σy + θz σz⊗σz))` in closed form.
///
/// The three terms commute, and each acts as `±swap` or `±1` on the two
/// invariant blocks `span{|00⟩,|11⟩}` and `span{|01⟩,|10⟩}`.
pub fn cartan_kernel(angles: CartanAngles) -> Result<TwoQubitGate> {
    angles.validate()?;
    let CartanAngles {
        theta_x,
        theta_y,
        theta_z,
    } = angles;
    let mut m = ComplexMat4::zeros();

    let outer = C64::from_polar(1.0, -theta_z);
    let (s, c) = (theta_x - theta_y).sin_cos();
    m[(0, 0)] = outer * c;
    m[(3, 3)] = outer * c;
    m[(0, 3)] = outer * C64::new(0.0, -s);
    m[(3, 0)] = outer * C64::new(0.0, -s);

    let inner = C64::from_polar(1.0, theta_z);
    let (s, c) = (theta_x + theta_y).sin_cos();
    m[(1, 1)] = inner * c;
    m[(2, 2)] = inner * c;
    m[(1, 2)] = inner * C64::new(0.0, -s);
    m[(2, 1)] = inner * C64::new(0.0, -s);

    Ok(TwoQubitGate {
        matrix: m,
        label: angles.to_string(),
    })
}

/// `U ρ U†`, re-symmetrized to exact Hermiticity.
pub fn apply_gate(u: &TwoQubitGate, rho: &DensityMatrix4) -> DensityMatrix4 {
    DensityMatrix4::from_trusted(u.matrix.conjugate(rho.matrix()).hermitian_part())
}

/// `(L_A ⊗ L_B) ρ (L_A ⊗ L_B)†`.
pub fn apply_local(a: &LocalUnitary, b: &LocalUnitary, rho: &DensityMatrix4) -> DensityMatrix4 {
    let l = crate::qmat::tensor2x2(&a.matrix, &b.matrix);
    DensityMatrix4::from_trusted(l.conjugate(rho.matrix()).hermitian_part())
}

/// Haar-random 2×2 unitary, deterministic in `seed`.
pub fn random_local_unitary(seed: u64) -> LocalUnitary {
    random_local_unitary_with(&mut ChaCha8Rng::seed_from_u64(seed))
}

/// Haar-random 2×2 unitary from Gram-Schmidt on a complex Gaussian pair.
pub fn random_local_unitary_with<R: Rng + ?Sized>(rng: &mut R) -> LocalUnitary {
    let mut gaussian = || C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal));
    let u = [gaussian(), gaussian()];
    let v = [gaussian(), gaussian()];

    let nu = (u[0].norm_sqr() + u[1].norm_sqr()).sqrt();
    let e1 = [u[0] / nu, u[1] / nu];
    let proj = e1[0].conj() * v[0] + e1[1].conj() * v[1];
    let w = [v[0] - proj * e1[0], v[1] - proj * e1[1]];
    let nw = (w[0].norm_sqr() + w[1].norm_sqr()).sqrt();
    let e2 = [w[0] / nw, w[1] / nw];

    LocalUnitary {
        matrix: ComplexMat2([[e1[0], e2[0]], [e1[1], e2[1]]]),
    }
}
