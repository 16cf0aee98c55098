//! Time eigenvalues of the one-dimensional infinite square well.
//!
//! The time eigenfunctions reduce, after stripping a phase, to the odd
//! solution Θ of `Θ'' + (y²/4) Θ = 0`. The eigenvalues follow from the zeros
//! `z_n` of Θ as `τ_n = m L² / (ħ z_n²)`.
//!
//! * [`theta_series`]: high-precision evaluation of Θ and Θ', plus an ODE oracle.
//! * [`zeros`]: zeros of Θ and the one-constant prediction `√(4(n−1)π − c)`.
//! * [`extrema`]: maxima and minima of Θ against the envelope `±2/√y`.
//! * [`spectrum`]: time eigenvalues, their differences and the uncertainty product.
//! * [`gauge_check`]: finite-difference checks that a gauge term in the
//!   momentum representation only changes phases.
//! * [`cli`]: the command-line front end.

// Input checks are written `!(x > 0.0)` on purpose so that NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod extrema;
pub mod gauge_check;
pub mod spectrum;
pub mod theta_series;
pub mod zeros;

pub use error::{Error, Result};
pub use theta_series::ThetaEvaluator;
