use thiserror::Error;

/// Errors raised anywhere in the simulation stack.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: String, found: String },

    #[error("invalid matrix shape: {0}")]
    InvalidShape(String),

    #[error("matrix is not Hermitian (max deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:.3e})")]
    NotPsd { min_eigenvalue: f64 },

    #[error("qubit index {index} out of range for {n_qubits} qubits")]
    IndexOutOfRange { index: usize, n_qubits: usize },

    #[error("qubit count {0} unsupported (must be 1..=6)")]
    QubitCount(usize),

    #[error("pair Hamiltonian needs two distinct qubits, got {0} twice")]
    SameQubit(usize),

    #[error("detuning must be nonzero")]
    ZeroDetuning,

    #[error("invalid physical parameter: {0}")]
    InvalidParameter(String),

    #[error("unknown code name {0:?}")]
    UnknownCode(String),

    #[error("invalid code: {0}")]
    InvalidCode(String),

    #[error("leakage {0:.3e} outside [0, 1] beyond roundoff")]
    LeakageOutOfRange(f64),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("invalid integration step {0}")]
    InvalidStep(f64),

    #[error("trace drifted by {drift:.3e} at t = {time}; step too large")]
    StepTooLarge { drift: f64, time: f64 },

    #[error("power-law fit needs at least 4 points with n >= n_min, got {0}")]
    InsufficientPoints(usize),

    #[error("power-law fit needs positive values, got {value} at n = {n}")]
    NonPositiveValue { n: u32, value: f64 },

    #[error("Lie closure needs at least one generator")]
    EmptyGenerators,

    #[error("universality check supports 3-dimensional codes only, got dimension {0}")]
    CodeDimensionUnsupported(usize),

    #[error("Lie closure did not converge within {0} commutator rounds")]
    ClosureDidNotConverge(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
