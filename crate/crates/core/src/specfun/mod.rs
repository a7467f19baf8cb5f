//! Special functions and angular-momentum algebra.
//!
//! Factorial-heavy quantities are evaluated in log space. Spherical
//! harmonics use the Condon-Shortley phase everywhere.

mod angular;
mod functions;
mod half;
mod harmonics;

pub use angular::{clebsch_gordan, clebsch_gordan_half, gaunt, multi_gaunt, wigner3j, wigner3j_half, wigner3j_int};
pub use functions::{assoc_laguerre, binomial, gamma, ln_binomial, ln_factorial, ln_gamma, spherical_bessel};
pub use half::HalfInt;
pub(crate) use harmonics::ylm;
pub use harmonics::{spherical_harmonic, AngularTriple};
