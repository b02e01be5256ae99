use thiserror::Error;

/// Errors raised across the preparation pipeline.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian within tolerance {tol:e} (max asymmetry {deviation:e})")]
    NotHermitian { tol: f64, deviation: f64 },

    #[error("eigenvalue iteration did not converge after {sweeps} sweeps (off-diagonal norm {residual:e})")]
    NoConvergence { sweeps: usize, residual: f64 },

    #[error("matrix is not positive semidefinite: eigenvalue {eigenvalue:e} below -{tol:e}")]
    NotPsd { eigenvalue: f64, tol: f64 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("columns are not orthonormal within tolerance {tol:e} (deviation {deviation:e})")]
    NotOrthonormal { tol: f64, deviation: f64 },

    #[error("level {level} out of range for a {num_qubits}-qubit amplitude vector")]
    LevelOutOfRange { level: usize, num_qubits: usize },

    #[error("amplitude vector is not normalized (sum of squares {norm_sq})")]
    NotNormalized { norm_sq: f64 },

    #[error("amplitude {value} at index {index} is negative")]
    NegativeAmplitude { index: usize, value: f64 },

    #[error("not a density matrix: {0}")]
    NotDensityMatrix(String),

    #[error("eigenvalues do not form a probability vector: {0}")]
    NotAProbabilityVector(String),

    #[error("qubit index {index} out of range for {num_qubits} qubits")]
    IndexOutOfRange { index: usize, num_qubits: usize },

    #[error("unitary block is not unitary within tolerance {tol:e} (deviation {deviation:e})")]
    NotUnitary { tol: f64, deviation: f64 },

    #[error("invalid gate: {0}")]
    InvalidGate(String),

    #[error("bad Pauli label {0:?}")]
    BadLabel(String),

    #[error("missing expectation value for Pauli string {0:?}")]
    MissingExpectation(String),

    #[error("bad probabilities: {0}")]
    BadProbabilities(String),

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("{requested} qubits exceeds the simulator limit of {limit}")]
    TooManyQubits { requested: usize, limit: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
