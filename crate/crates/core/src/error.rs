//! Crate-wide error type.

use thiserror::Error;

/// Errors reported by state constructors, linear-algebra kernels, oracle
/// validation, and the experiment drivers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimMismatch(usize, usize),

    #[error("dimension {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("operator is not unitary: max |UU\u{2020} - I| = {deviation:.3e} exceeds {tol:.0e}")]
    NotUnitary { deviation: f64, tol: f64 },

    #[error("matrix is not Hermitian: max |A - A\u{2020}| = {deviation:.3e} exceeds {tol:.0e}")]
    NotHermitian { deviation: f64, tol: f64 },

    #[error("state vector is not normalized: |sum of |amp|^2 - 1| = {0:.3e}")]
    NotNormalized(f64),

    #[error("trace must be 1, got deviation {0:.3e}")]
    TraceNotOne(f64),

    #[error("non-finite entry at index {0}")]
    NonFinite(usize),

    #[error("qubit index {index} out of range for {total} qubits")]
    QubitIndexOutOfRange { index: usize, total: usize },

    #[error("query position {query} out of range for a table of {size} inputs")]
    QueryOutOfRange { query: u64, size: usize },

    #[error("need at least {required} qubit(s), got {got}")]
    QubitCountTooSmall { required: usize, got: usize },

    #[error("purity parameter must lie in [0, 1], got {0}")]
    EpsilonOutOfRange(f64),

    #[error("lambda must lie in [0, 1], got {0}")]
    LambdaOutOfRange(f64),

    #[error("probability must lie in [0, 1], got {0}")]
    ProbabilityOutOfRange(f64),

    #[error("bipartition must be a non-empty proper subset of the qubits")]
    TrivialBipartition,

    #[error("hidden mask must be nonzero and fit in {n} bits, got {mask}")]
    InvalidMask { mask: u64, n: usize },

    #[error("not a constant-or-balanced function table: {0}")]
    DjPromiseViolation(String),

    #[error("not a two-to-one xor-mask function table: {0}")]
    SimonPromiseViolation(String),

    #[error("dense simulation cap exceeded: {requested} input bits > {cap}")]
    DenseCapExceeded { requested: usize, cap: usize },

    #[error("enumeration cap exceeded: n = {requested} > {cap}")]
    EnumerationCapExceeded { requested: usize, cap: usize },

    #[error("invalid probability table: {0}")]
    InvalidDistribution(String),

    #[error("eigenvalue iteration did not converge after {0} sweeps")]
    EigenNoConvergence(usize),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
