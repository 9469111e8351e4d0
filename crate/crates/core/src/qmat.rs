//! Dense complex linear algebra for 2×2 and 4×4 matrices.
//!
//! Two-qubit operators use the basis order `|00⟩, |01⟩, |10⟩, |11⟩` with
//! qubit A as the first (most significant) index.

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::QmatError;

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Hermiticity tolerance accepted by [`hermitian_eig`].
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Eigenvalues in `[-PSD_CLAMP, 0)` are treated as round-off and set to zero.
pub const PSD_CLAMP: f64 = 1e-12;

const JACOBI_OFF_TOL: f64 = 1e-14;
const JACOBI_MAX_SWEEPS: usize = 100;

macro_rules! square_matrix {
    ($name:ident, $n:expr) => {
        #[derive(Clone, Copy, Debug, PartialEq)]
        pub struct $name(pub [[C64; $n]; $n]);

        impl $name {
            pub const DIM: usize = $n;

            pub fn zeros() -> Self {
                Self([[ZERO; $n]; $n])
            }

            pub fn identity() -> Self {
                let mut m = Self::zeros();
                for i in 0..$n {
                    m.0[i][i] = ONE;
                }
                m
            }

            pub fn from_real(rows: [[f64; $n]; $n]) -> Self {
                let mut m = Self::zeros();
                for i in 0..$n {
                    for j in 0..$n {
                        m.0[i][j] = C64::new(rows[i][j], 0.0);
                    }
                }
                m
            }

            pub fn diag(d: [f64; $n]) -> Self {
                let mut m = Self::zeros();
                for i in 0..$n {
                    m.0[i][i] = C64::new(d[i], 0.0);
                }
                m
            }

            pub fn adjoint(&self) -> Self {
                let mut m = Self::zeros();
                for i in 0..$n {
                    for j in 0..$n {
                        m.0[i][j] = self.0[j][i].conj();
                    }
                }
                m
            }

            pub fn transpose(&self) -> Self {
                let mut m = Self::zeros();
                for i in 0..$n {
                    for j in 0..$n {
                        m.0[i][j] = self.0[j][i];
                    }
                }
                m
            }

            /// Entrywise complex conjugate.
            pub fn conj(&self) -> Self {
                self.map(|z| z.conj())
            }

            pub fn map(&self, f: impl Fn(C64) -> C64) -> Self {
                let mut m = *self;
                for row in m.0.iter_mut() {
                    for z in row.iter_mut() {
                        *z = f(*z);
                    }
                }
                m
            }

            pub fn scale(&self, s: f64) -> Self {
                self.map(|z| z * s)
            }

            pub fn trace(&self) -> C64 {
                (0..$n).map(|i| self.0[i][i]).sum()
            }

            /// Largest entry modulus.
            pub fn max_norm(&self) -> f64 {
                self.0
                    .iter()
                    .flatten()
                    .fold(0.0_f64, |acc, z| acc.max(z.norm()))
            }

            pub fn frobenius_norm(&self) -> f64 {
                self.0
                    .iter()
                    .flatten()
                    .map(|z| z.norm_sqr())
                    .sum::<f64>()
                    .sqrt()
            }

            /// `max |self - other|` over entries.
            pub fn max_abs_diff(&self, other: &Self) -> f64 {
                (*self - *other).max_norm()
            }

            pub fn is_finite(&self) -> bool {
                self.0
                    .iter()
                    .flatten()
                    .all(|z| z.re.is_finite() && z.im.is_finite())
            }

            pub fn hermitian_defect(&self) -> f64 {
                self.max_abs_diff(&self.adjoint())
            }

            /// `(M + M†) / 2`.
            pub fn hermitian_part(&self) -> Self {
                (*self + self.adjoint()).scale(0.5)
            }

            /// `max |M†M - I|`.
            pub fn unitarity_defect(&self) -> f64 {
                (self.adjoint() * *self).max_abs_diff(&Self::identity())
            }
        }

        impl Index<(usize, usize)> for $name {
            type Output = C64;
            fn index(&self, (i, j): (usize, usize)) -> &C64 {
                &self.0[i][j]
            }
        }

        impl IndexMut<(usize, usize)> for $name {
            fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
                &mut self.0[i][j]
            }
        }

        impl Mul for $name {
            type Output = Self;
            fn mul(self, rhs: Self) -> Self {
                let mut m = Self::zeros();
                for i in 0..$n {
                    for k in 0..$n {
                        let a = self.0[i][k];
                        if a == ZERO {
                            continue;
                        }
                        for j in 0..$n {
                            m.0[i][j] += a * rhs.0[k][j];
                        }
                    }
                }
                m
            }
        }

        impl Add for $name {
            type Output = Self;
            fn add(self, rhs: Self) -> Self {
                let mut m = self;
                for i in 0..$n {
                    for j in 0..$n {
                        m.0[i][j] += rhs.0[i][j];
                    }
                }
                m
            }
        }

        impl Sub for $name {
            type Output = Self;
            fn sub(self, rhs: Self) -> Self {
                let mut m = self;
                for i in 0..$n {
                    for j in 0..$n {
                        m.0[i][j] -= rhs.0[i][j];
                    }
                }
                m
            }
        }

        impl Mul<C64> for $name {
            type Output = Self;
            fn mul(self, rhs: C64) -> Self {
                self.map(|z| z * rhs)
            }
        }
    };
}

square_matrix!(ComplexMat2, 2);
square_matrix!(ComplexMat4, 4);

impl ComplexMat2 {
    pub fn pauli_x() -> Self {
        Self::from_real([[0.0, 1.0], [1.0, 0.0]])
    }

    pub fn pauli_y() -> Self {
        Self([[ZERO, -I], [I, ZERO]])
    }

    pub fn pauli_z() -> Self {
        Self::diag([1.0, -1.0])
    }
}

impl ComplexMat4 {
    /// Conjugation `self · m · self†`.
    pub fn conjugate(&self, m: &ComplexMat4) -> ComplexMat4 {
        *self * *m * self.adjoint()
    }
}

/// Kronecker product `a ⊗ b`, qubit A first.
pub fn tensor2x2(a: &ComplexMat2, b: &ComplexMat2) -> ComplexMat4 {
    let mut m = ComplexMat4::zeros();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    m.0[2 * i + k][2 * j + l] = a.0[i][j] * b.0[k][l];
                }
            }
        }
    }
    m
}

/// Eigen-decomposition of a Hermitian 4×4 matrix.
///
/// `eigenvectors` holds the vectors as columns, in the same order as
/// `eigenvalues` (descending).
#[derive(Clone, Copy, Debug)]
pub struct EigenSystem4 {
    pub eigenvalues: [f64; 4],
    pub eigenvectors: ComplexMat4,
}

impl EigenSystem4 {
    /// `V Λ V†`.
    pub fn reconstruct(&self) -> ComplexMat4 {
        self.reconstruct_with(|x| x)
    }

    /// `V f(Λ) V†`.
    pub fn reconstruct_with(&self, f: impl Fn(f64) -> f64) -> ComplexMat4 {
        let v = &self.eigenvectors;
        let d = self.eigenvalues.map(f);
        let mut m = ComplexMat4::zeros();
        for i in 0..4 {
            for j in i..4 {
                let mut acc = ZERO;
                for (k, &dk) in d.iter().enumerate() {
                    acc += v.0[i][k] * v.0[j][k].conj() * dk;
                }
                m.0[i][j] = acc;
                m.0[j][i] = acc.conj();
            }
            m.0[i][i].im = 0.0;
        }
        m
    }
}

/// Unitary `J` acting on the `(p, q)` plane that zeroes the off-diagonal
/// entry of the Hermitian 2×2 block `[[app, apq], [conj(apq), aqq]]`
/// under `J† A J`. Returned as `(jpp, jpq, jqp, jqq)`.
fn jacobi_rotation(app: f64, aqq: f64, apq: C64) -> (C64, C64, C64, C64) {
    let mag = apq.norm_sqr().sqrt();
    let phase = apq / mag;
    let theta = (aqq - app) / (2.0 * mag);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let ph = phase.conj();
    (C64::new(c, 0.0), C64::new(s, 0.0), -ph * s, ph * c)
}

/// Cyclic Jacobi eigensolver on a Hermitian 4×4 matrix.
fn jacobi_hermitian(h: &ComplexMat4) -> ([f64; 4], ComplexMat4) {
    let mut a = h.0;
    let mut v = ComplexMat4::identity().0;
    let scale = h.frobenius_norm();
    let tol = JACOBI_OFF_TOL * scale.max(f64::MIN_POSITIVE);

    for _ in 0..JACOBI_MAX_SWEEPS {
        let off: f64 = (0..4)
            .flat_map(|i| (0..4).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= tol {
            break;
        }
        for p in 0..3 {
            for q in (p + 1)..4 {
                if a[p][q].norm_sqr() == 0.0 {
                    continue;
                }
                let (jpp, jpq, jqp, jqq) = jacobi_rotation(a[p][p].re, a[q][q].re, a[p][q]);
                // A <- A J
                for row in a.iter_mut() {
                    let (x, y) = (row[p], row[q]);
                    row[p] = x * jpp + y * jqp;
                    row[q] = x * jpq + y * jqq;
                }
                // A <- J† A
                for k in 0..4 {
                    let (x, y) = (a[p][k], a[q][k]);
                    a[p][k] = jpp.conj() * x + jqp.conj() * y;
                    a[q][k] = jpq.conj() * x + jqq.conj() * y;
                }
                a[p][q] = ZERO;
                a[q][p] = ZERO;
                a[p][p].im = 0.0;
                a[q][q].im = 0.0;
                for row in v.iter_mut() {
                    let (x, y) = (row[p], row[q]);
                    row[p] = x * jpp + y * jqp;
                    row[q] = x * jpq + y * jqq;
                }
            }
        }
    }
    (
        [a[0][0].re, a[1][1].re, a[2][2].re, a[3][3].re],
        ComplexMat4(v),
    )
}

/// Eigenvalues (descending) and orthonormal eigenvectors of a Hermitian
/// 4×4 matrix.
pub fn hermitian_eig(h: &ComplexMat4) -> Result<EigenSystem4, QmatError> {
    let defect = h.hermitian_defect();
    if !(defect <= HERMITIAN_TOL) {
        return Err(QmatError::NotHermitian { defect });
    }
    let (vals, vecs) = jacobi_hermitian(&h.hermitian_part());
    let mut order = [0usize, 1, 2, 3];
    order.sort_by(|&i, &j| vals[j].total_cmp(&vals[i]));
    let mut eigenvectors = ComplexMat4::zeros();
    for (col, &src) in order.iter().enumerate() {
        for row in 0..4 {
            eigenvectors.0[row][col] = vecs.0[row][src];
        }
    }
    Ok(EigenSystem4 {
        eigenvalues: order.map(|i| vals[i]),
        eigenvectors,
    })
}

/// Clamp a spectrum that should be nonnegative, rejecting genuine negativity.
pub(crate) fn clamp_psd_spectrum(values: [f64; 4]) -> Result<[f64; 4], QmatError> {
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    if min < -PSD_CLAMP {
        return Err(QmatError::NotPsd {
            min_eigenvalue: min,
        });
    }
    Ok(values.map(|x| x.max(0.0)))
}

/// Principal square root of a Hermitian positive-semidefinite matrix.
pub fn psd_sqrt(p: &ComplexMat4) -> Result<ComplexMat4, QmatError> {
    let mut eig = hermitian_eig(p)?;
    eig.eigenvalues = clamp_psd_spectrum(eig.eigenvalues)?;
    Ok(eig.reconstruct_with(f64::sqrt))
}

/// Singular values of a 4×4 complex matrix, descending.
///
/// One-sided (Hestenes) Jacobi: columns are rotated pairwise until mutually
/// orthogonal, then the singular values are the column norms. Unlike the
/// square roots of `eig(M†M)`, small singular values keep absolute accuracy
/// near `ε‖M‖`.
pub fn singular_values(m: &ComplexMat4) -> [f64; 4] {
    let mut cols = m.transpose().0;
    let scale = m.frobenius_norm();
    if scale == 0.0 {
        return [0.0; 4];
    }
    let tiny = (JACOBI_OFF_TOL * scale).powi(2);
    let norm2 = |c: &[C64; 4]| c.iter().map(|z| z.norm_sqr()).sum::<f64>();
    for _ in 0..JACOBI_MAX_SWEEPS {
        let mut rotated = false;
        // Squared column norms, refreshed each sweep and updated in closed
        // form after every rotation.
        let mut n2 = [0.0; 4];
        for (n, c) in n2.iter_mut().zip(&cols) {
            *n = norm2(c);
        }
        for p in 0..3 {
            for q in (p + 1)..4 {
                let (alpha, beta) = (n2[p], n2[q]);
                let gamma: C64 = cols[p]
                    .iter()
                    .zip(&cols[q])
                    .map(|(x, y)| x.conj() * y)
                    .sum();
                let g = gamma.norm_sqr().sqrt();
                if g <= f64::EPSILON * (alpha * beta).sqrt() || g <= tiny {
                    continue;
                }
                rotated = true;
                let (jpp, jpq, jqp, jqq) = jacobi_rotation(alpha, beta, gamma);
                // jpp and jpq are real.
                let (c, s) = (jpp.re, jpq.re);
                for k in 0..4 {
                    let (x, y) = (cols[p][k], cols[q][k]);
                    cols[p][k] = x * c + y * jqp;
                    cols[q][k] = x * s + y * jqq;
                }
                // The rotation moves t·|γ| of squared norm from column p to q.
                let t = s / c;
                n2[p] = alpha - t * g;
                n2[q] = beta + t * g;
            }
        }
        if !rotated {
            break;
        }
    }
    let mut s = cols.map(|c| c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt());
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sx() -> ComplexMat2 {
        ComplexMat2::pauli_x()
    }

    #[test]
    fn tensor_of_identities_and_paulis() {
        let id = tensor2x2(&ComplexMat2::identity(), &ComplexMat2::identity());
        assert_eq!(id, ComplexMat4::identity());

        let zz = tensor2x2(&ComplexMat2::pauli_z(), &ComplexMat2::pauli_z());
        assert_eq!(zz, ComplexMat4::diag([1.0, -1.0, -1.0, 1.0]));

        // σy⊗σy: (i)(i) = -1 in the corners, (i)(-i) = 1 in the middle.
        let yy = tensor2x2(&ComplexMat2::pauli_y(), &ComplexMat2::pauli_y());
        let expected = ComplexMat4::from_real([
            [0.0, 0.0, 0.0, -1.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [-1.0, 0.0, 0.0, 0.0],
        ]);
        assert_eq!(yy, expected);
    }

    #[test]
    fn eig_of_diagonal() {
        let e = hermitian_eig(&ComplexMat4::diag([2.0, 4.0, 1.0, 3.0])).unwrap();
        assert_eq!(e.eigenvalues, [4.0, 3.0, 2.0, 1.0]);
    }

    #[test]
    fn eig_of_sigma_x_tensor_identity() {
        let h = tensor2x2(&sx(), &ComplexMat2::identity());
        let e = hermitian_eig(&h).unwrap();
        for (got, want) in e.eigenvalues.iter().zip([1.0, 1.0, -1.0, -1.0]) {
            assert!((got - want).abs() < 1e-14);
        }
        assert!(e.reconstruct().max_abs_diff(&h) < 1e-14);
        assert!(e.eigenvectors.unitarity_defect() < 1e-14);
    }

    #[test]
    fn eig_rejects_non_hermitian() {
        let mut m = ComplexMat4::identity();
        m.0[0][1] = C64::new(0.5, 0.0);
        assert!(matches!(
            hermitian_eig(&m),
            Err(QmatError::NotHermitian { .. })
        ));
    }

    #[test]
    fn eig_of_rank_one_projector() {
        // (|01⟩ + i|10⟩)/√2 projector; characteristic polynomial λ³(λ-1).
        let s = 0.5;
        let mut m = ComplexMat4::zeros();
        m.0[1][1] = C64::new(s, 0.0);
        m.0[2][2] = C64::new(s, 0.0);
        m.0[1][2] = C64::new(0.0, -s);
        m.0[2][1] = C64::new(0.0, s);
        let e = hermitian_eig(&m).unwrap();
        let want = [1.0, 0.0, 0.0, 0.0];
        for (g, w) in e.eigenvalues.iter().zip(want) {
            assert!((g - w).abs() < 1e-15, "{:?}", e.eigenvalues);
        }
    }

    #[test]
    fn sqrt_of_diagonal_and_projector() {
        assert_eq!(
            psd_sqrt(&ComplexMat4::identity()).unwrap(),
            ComplexMat4::identity()
        );
        let r = psd_sqrt(&ComplexMat4::diag([4.0, 1.0, 0.0, 0.0])).unwrap();
        assert!(r.max_abs_diff(&ComplexMat4::diag([2.0, 1.0, 0.0, 0.0])) < 1e-15);

        let mut bell = ComplexMat4::zeros();
        for (i, j) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
            bell.0[i][j] = C64::new(0.5, 0.0);
        }
        let r = psd_sqrt(&bell).unwrap();
        assert!((r * r).max_abs_diff(&bell) < 1e-10);
        assert!(r.max_abs_diff(&bell) < 1e-10);
    }

    #[test]
    fn sqrt_rejects_negative_spectrum() {
        let m = ComplexMat4::diag([1.0, 0.5, 0.0, -1e-6]);
        assert!(matches!(psd_sqrt(&m), Err(QmatError::NotPsd { .. })));
        // Round-off-sized negativity is absorbed.
        let m = ComplexMat4::diag([1.0, 0.5, 0.0, -1e-13]);
        assert!(psd_sqrt(&m).is_ok());
    }

    #[test]
    fn singular_values_of_known_matrices() {
        let s = singular_values(&ComplexMat4::diag([-3.0, 1.0, 0.0, 2.0]));
        assert_eq!(s, [3.0, 2.0, 1.0, 0.0]);
        let u = ComplexMat4::from_real([
            [0.0, 0.0, 0.0, 1.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [1.0, 0.0, 0.0, 0.0],
        ]) * C64::new(0.0, 2.0);
        let s = singular_values(&u);
        for x in s {
            assert!((x - 2.0).abs() < 1e-15);
        }
    }
}
