//! Entangling power of two-qubit gates acting on mixed states of fixed purity.
//!
//! For a gate `U` and purity `μ ∈ [1/3, 1]`, the entangling power is the
//! largest entanglement of formation `U` can produce from an unentangled
//! input of purity `μ`. It is bounded above by the maximally entangled mixed
//! states (MEMS) of the same purity; below `μ = 1/3` every state is
//! unentangled and the question is empty.
//!
//! * [`qmat`]: fixed-size complex matrices and a Jacobi eigensolver.
//! * [`gates`]: Cartan kernels `exp(-i Σ θ_k σ_k⊗σ_k)` and local unitaries.
//! * [`states`]: density matrices, the MEMS frontier and candidate families.
//! * [`entanglement`]: concurrence, tangle and entanglement of formation.
//! * [`epower`]: sampled maximization over purity sweeps.
//! * [`cli`]: the `entpower` command line.
//!
//! ```
//! use entangling_power::{entangling_power, CartanAngles, FamilyKind};
//!
//! let p = entangling_power(CartanAngles::PI_8, 0.68, FamilyKind::Analytic, 0, 0, true)?;
//! assert!(p.gap.abs() < 1e-10);
//! # Ok::<(), entangling_power::Error>(())
//! ```

// Negated comparisons reject NaN on purpose; index loops mirror the matrix algebra.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod cli;
pub mod entanglement;
pub mod epower;
pub mod error;
pub mod gates;
pub mod output;
pub mod qmat;
pub mod states;

pub use entanglement::{concurrence, eof, eof_from_concurrence, EntanglementReport};
pub use epower::{
    entangling_power, sweep, sweep_gates, verify_analytic, FamilyKind, SweepConfig, SweepCurve,
    SweepPoint,
};
pub use error::{Error, QmatError, Result};
pub use gates::{apply_gate, cartan_kernel, CartanAngles, TwoQubitGate};
pub use qmat::{ComplexMat2, ComplexMat4, C64};
pub use states::DensityMatrix4;
