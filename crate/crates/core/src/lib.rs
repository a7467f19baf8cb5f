//! Dipole coupling of a Laguerre-Gaussian beam to a Rydberg atom held in a
//! two-dimensional harmonic trap.
//!
//! The crate is organised bottom-up:
//!
//! - [`specfun`]: factorials, Gamma, Laguerre, spherical harmonics, Bessel
//!   functions and angular-momentum algebra (3j, Clebsch-Gordan, Gaunt).
//! - [`quadrature`]: Gauss-Legendre / Gauss-Laguerre rules and Simpson.
//! - [`beam`]: the LG field, its solid-harmonic expansion and the
//!   translation theorem that splits electron and centre-of-mass coordinates.
//! - [`atom`]: alkali model potential, quantum-defect energies and Numerov
//!   radial wavefunctions.
//! - [`cm`]: centre-of-mass oscillator states and their radial moments.
//! - [`coupling`]: channel enumeration, matrix-element assembly, Rabi
//!   frequencies and topological-charge sweeps.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod atom;
pub mod beam;
pub mod cm;
pub mod coupling;
mod error;
pub mod quadrature;
pub mod specfun;
pub mod units;
pub mod validate;

pub use error::{Error, Result};
pub use specfun::HalfInt;
