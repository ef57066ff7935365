//! Dense complex linear algebra for small multi-qubit systems.
//!
//! Matrices are square and row-major. Qubit 0 is the most significant bit
//! of a basis-state label, so `a.tensor(&b)` puts the qubits of `a` in
//! front of the qubits of `b`. Everything is immutable after construction
//! and all operations are pure functions.

mod eigen;
mod matrix;
mod state;

pub use eigen::hermitian_eigenvalues;
pub use matrix::{apply_unitary, partial_trace, ComplexMatrix};
pub use state::PureState;

/// Complex amplitude with `f64` components.
pub type C64 = num_complex::Complex64;

/// Absolute entrywise tolerance for the unitarity check.
pub const UNITARITY_TOL: f64 = 1e-10;

/// Absolute entrywise tolerance for the Hermiticity check.
pub const HERMITICITY_TOL: f64 = 1e-10;

/// Tolerance on `|sum of squared amplitudes - 1|` for state vectors.
pub const NORM_TOL: f64 = 1e-12;
