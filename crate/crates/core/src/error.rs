use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QmatError {
    #[error("matrix is not Hermitian (max |H - H†| = {defect:e})")]
    NotHermitian { defect: f64 },
    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:e})")]
    NotPsd { min_eigenvalue: f64 },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Qmat(#[from] QmatError),
    #[error("angle {name} = {value} outside [0, π/2]")]
    AngleOutOfRange { name: &'static str, value: f64 },
    #[error("γ = {0} outside [0, 1]")]
    GammaOutOfRange(f64),
    #[error("parameter {name} = {value} out of range: {reason}")]
    ParamOutOfRange {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },
    #[error("purity {value} outside [{min}, {max}]")]
    PurityOutOfRange { value: f64, min: f64, max: f64 },
    #[error("probability sampler exhausted after {0} rejections")]
    SamplingExhausted(usize),
    #[error("binary entropy argument {0} outside [0, 1]")]
    DomainError(f64),
    #[error("not a valid density matrix: {0}")]
    InvalidState(String),
    #[error("candidate state is entangled before the gate (C = {concurrence:e})")]
    EntangledCandidate { concurrence: f64 },
    #[error("no candidate states generated")]
    EmptyPool,
    #[error("invalid sweep configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
