//! Quantum single-query oracle games on pseudo-pure states.
//!
//! A pseudo-pure state mixes a pure state with the maximally mixed state,
//! `epsilon |psi><psi| + (1 - epsilon) I / 2^m`; below a purity bound that
//! depends only on the qubit count, such states stay separable under any
//! unitary circuit. This crate runs the constant-vs-balanced and
//! hidden-xor-mask games on such states and quantifies what a single oracle
//! query buys:
//!
//! - [`qmath`] — dense complex matrices, tensor products, unitary
//!   evolution, partial trace, Hermitian eigenvalues.
//! - [`qstate`] — pseudo-pure and Werner states, the separability bound,
//!   purity extraction, the partial-transpose witness.
//! - [`oracles`] — validated black-box function tables and their
//!   reversible oracle unitaries.
//! - [`experiments`] — closed-form outcome distributions cross-checked
//!   against full density-matrix simulation, plus a stepwise
//!   entanglement audit.
//! - [`infotheory`] — entropies and mutual information, with small-purity
//!   asymptotics.
//! - [`classical`] — exhaustive classical baselines and the average-budget
//!   coin-toss strategy.
//!
//! ```
//! use ppsim_core::experiments::{dj_closed_form, dj_simulate};
//! use ppsim_core::infotheory::dj_mutual_information;
//! use ppsim_core::oracles::DjFunction;
//!
//! // one query at the 4-qubit separability threshold
//! let f = DjFunction::balanced_random(3, 7)?;
//! let sim = dj_simulate(&f, 1.0 / 129.0)?;
//! let exact = dj_closed_form(3, 1.0 / 129.0)?;
//! assert!((sim.p_zero() - exact.p_zero_given_balanced).abs() < 1e-12);
//!
//! let bits = dj_mutual_information(3, 1.0 / 129.0, 0.5)?;
//! assert!((bits - 9.716e-5).abs() < 1e-7);
//! # Ok::<(), ppsim_core::Error>(())
//! ```

pub mod classical;
pub mod error;
pub mod experiments;
pub mod infotheory;
pub mod oracles;
pub mod qmath;
pub mod qstate;
pub mod rng;

pub use error::{Error, Result};
