//! Numerics for common-randomness generation from shared isotropic states.
//!
//! The crate is layered bottom-up:
//!
//! - [`linalg`]: dense complex matrices, partial traces, a Jacobi Hermitian
//!   eigensolver, Schatten norms and PSD powers.
//! - [`quantum`]: depolarizing and erasure channels, EPR and isotropic states,
//!   Kraus channels with adjoints, Pauli expansions, von Neumann entropy.
//! - [`inequalities`]: slack-reporting checks for the norm and
//!   hypercontractivity inequalities, seeded random ensembles and a suite runner.
//! - [`protocols`]: POVMs and strategies for the communication-free, classical
//!   and quantum one-way models, exact success evaluators and a seesaw optimizer.
//! - [`bounds`]: closed-form communication bounds and rates, each cross-checked
//!   by a numeric supremum over the free exponent.

#![forbid(unsafe_code)]
// `!(x >= tol)` is used on purpose so that NaN counts as a failure.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod error;
pub mod format;
pub mod inequalities;
pub mod linalg;
pub mod protocols;
pub mod quantum;

pub use error::{Error, Result};
pub use linalg::ComplexMatrix;
