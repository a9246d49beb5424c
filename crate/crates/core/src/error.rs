use thiserror::Error;

/// Errors raised by the numerical core.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian: max |M - M^dagger| = {defect:e}")]
    NotHermitian { defect: f64 },

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal mass {off:e})")]
    NoConvergence { sweeps: usize, off: f64 },

    #[error("matrix is not unitary: max |U U^dagger - I| = {defect:e}")]
    NotUnitary { defect: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid density matrix: {0}")]
    InvalidState(String),

    #[error("rank {rank} outside 1..={dim}")]
    BadRank { rank: usize, dim: usize },

    #[error("unknown state label `{0}`")]
    UnknownLabel(String),

    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),

    #[error("state with dims {0:?} is not bipartite")]
    NotBipartite(Vec<usize>),

    #[error("invalid probability distribution: {0}")]
    InvalidDistribution(String),

    #[error("unsupported spin j = {0}/2")]
    UnsupportedSpin(usize),

    #[error("tomogram labels are not a pair table: {0}")]
    BadLabels(String),

    #[error("quadrature order must be at least 2 (got theta={n_theta}, phi={n_phi})")]
    BadQuadratureOrder { n_theta: usize, n_phi: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
