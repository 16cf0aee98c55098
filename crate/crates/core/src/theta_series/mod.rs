//! The odd solution Θ of `Θ'' + (y²/4) Θ = 0` with `Θ(0) = 0`, `Θ'(0) = a₁`.
//!
//! [`ThetaEvaluator`] sums the power series in arbitrary precision; the
//! alternating terms grow to about `e^(y²/4)` before decaying, so the working
//! precision has to grow with `y²` (see [`required_precision`]).
//! [`integrate_ode`] integrates the differential equation directly in `f64`
//! and serves as an independent check of the series.

mod coefficients;
mod evaluator;
mod ode;

pub use coefficients::{
    coefficient, denominator, series_terms, SeriesTerm, SeriesTerms, COEFFICIENT_INDEX_LIMIT,
};
pub use evaluator::{required_precision, ThetaEvaluator, DEFAULT_MAX_TERMS, GUARD_DIGITS};
pub use ode::{integrate_ode, OdeSample, OdeTrajectory};

/// The normalization `a₁` for which the extrema of Θ approach `±2/√y`.
///
/// With `Θ(y) = C √y J_{1/4}(y²/4)` the series fixes `C = 8^{1/4} Γ(5/4) a₁`,
/// and the Bessel asymptotics give an envelope `C √(8/π) / √y`. Setting that
/// amplitude to 2 yields `a₁ = √π / (2^{5/4} Γ(5/4))`.
pub const UNIT_ENVELOPE_A1: f64 = 0.822_178_958_662_458_6;
