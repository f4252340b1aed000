//! Exact solver for maximally flat reduced-delay FIR filter design
//! equations.
//!
//! The pipeline runs in four stages:
//!
//! 1. [`sbsystem`] builds the polynomial conditions on the filter moments
//!    for integer parameters `(K, L, M)` and reduces them to a small system
//!    in `t = m_1` and a few higher moments.
//! 2. [`eliminate`] removes the higher moments by resultants, leaving one
//!    univariate polynomial in `t` with exact integer coefficients.
//! 3. [`solvefilter`] isolates its real roots, recovers the moments and
//!    impulse responses, and samples the magnitude responses.
//! 4. [`findiff`] independently checks the determinant identities for
//!    finite-difference matrices that explain the extraneous factors.
//!
//! Everything symbolic is exact; [`exactalg`] supplies the arithmetic.

pub mod eliminate;
pub mod error;
pub mod exactalg;
pub mod findiff;
pub mod sbsystem;
pub mod solvefilter;

pub use error::{Error, Result};
