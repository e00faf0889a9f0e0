//! Entanglement of a block of spins in the ground state of the XX and XY
//! spin chains.
//!
//! The crate computes exact finite-block entropies from the spectrum of the
//! Majorana correlation matrix, and evaluates the large-block asymptotics:
//! Szegő and Fisher-Hartwig determinant formulas, the theta-function formula
//! for the block Toeplitz characteristic determinant, the limiting von
//! Neumann and Rényi entropies (series, integral, elliptic closed forms and
//! modular-function forms) and the limiting spectrum of the reduced density
//! matrix with its partition-counting multiplicities.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod chain;
pub mod entropy;
pub mod error;
pub mod quadrature;
pub mod special;
pub mod spectrum;
pub mod toeplitz;

pub use error::{Error, Result};
