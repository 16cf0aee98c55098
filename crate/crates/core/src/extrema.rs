//! Maxima and minima of Θ and the envelope `±2/√y`.
//!
//! Extremum `k` is the unique root of Θ' between zeros `z_k` and `z_{k+1}`
//! (with `z_1 = 0`), so extrema are numbered globally by position and the
//! kinds alternate.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::theta_series::ThetaEvaluator;
use crate::zeros::{find_zero, refine_root, zero_positions, DEFAULT_ZERO_TOLERANCE};

/// Default bracket width for extremum refinement.
pub const DEFAULT_EXTREMUM_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExtremumKind {
    Maximum,
    Minimum,
}

impl ExtremumKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ExtremumKind::Maximum => "maximum",
            ExtremumKind::Minimum => "minimum",
        }
    }
}

/// Predicted extremum value `+2/√y` for maxima, `−2/√y` for minima.
pub fn envelope(y: f64, kind: ExtremumKind) -> Result<f64> {
    if !(y > 0.0) || !y.is_finite() {
        return Err(Error::domain(format!("envelope needs y > 0, got {y}")));
    }
    let magnitude = 2.0 / y.sqrt();
    Ok(match kind {
        ExtremumKind::Maximum => magnitude,
        ExtremumKind::Minimum => -magnitude,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtremumRecord {
    pub k: u32,
    pub kind: ExtremumKind,
    pub y: f64,
    pub value: f64,
    pub predicted: f64,
    /// `value − predicted`.
    pub error: f64,
}

/// Extremum `k` given the zeros `lo = z_k` and `hi = z_{k+1}` around it.
fn extremum_between(
    k: u32,
    lo: f64,
    hi: f64,
    eval: &ThetaEvaluator,
    tol: f64,
) -> Result<ExtremumRecord> {
    // Θ' and Θ'' = -(y²/4) Θ, both from one series pass.
    let derivative = |y: f64| {
        let (theta, theta_prime) = eval.theta_and_prime(y)?;
        Ok((theta_prime, -0.25 * y * y * theta))
    };
    let y = refine_root(derivative, lo, hi, tol).map_err(|err| match err {
        Error::BracketNotFound { lo, hi, .. } => Error::BracketNotFound {
            what: format!("extremum {k}"),
            lo,
            hi,
        },
        other => other,
    })?;
    let value = eval.theta(y)?;
    let kind = if value > 0.0 {
        ExtremumKind::Maximum
    } else {
        ExtremumKind::Minimum
    };
    let predicted = envelope(y, kind)?;
    Ok(ExtremumRecord {
        k,
        kind,
        y,
        value,
        predicted,
        error: value - predicted,
    })
}

fn check_tolerance(tol: f64) -> Result<()> {
    if !(tol > 0.0) {
        return Err(Error::domain(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    Ok(())
}

/// Extremum `k` (1-based, ordered by `y`).
pub fn find_extremum(k: u32, eval: &ThetaEvaluator, tol: f64) -> Result<ExtremumRecord> {
    if k == 0 {
        return Err(Error::domain("extremum index starts at 1"));
    }
    check_tolerance(tol)?;
    let lo = find_zero(k, eval, DEFAULT_ZERO_TOLERANCE)?;
    let hi = find_zero(k + 1, eval, DEFAULT_ZERO_TOLERANCE)?;
    extremum_between(k, lo, hi, eval, tol)
}

/// Extrema between already computed consecutive zeros `z_1, z_2, ...`.
pub fn extrema_from_zeros(
    zeros: &[f64],
    eval: &ThetaEvaluator,
    tol: f64,
) -> Result<Vec<ExtremumRecord>> {
    check_tolerance(tol)?;
    zeros
        .par_windows(2)
        .enumerate()
        .map(|(i, pair)| extremum_between(i as u32 + 1, pair[0], pair[1], eval, tol))
        .collect()
}

/// The first `count` extrema with envelope predictions.
pub fn extrema_table(count: u32, eval: &ThetaEvaluator) -> Result<Vec<ExtremumRecord>> {
    if count == 0 {
        return Err(Error::domain("count must be at least 1"));
    }
    let zeros = zero_positions(count + 1, eval, DEFAULT_ZERO_TOLERANCE)?;
    extrema_from_zeros(&zeros, eval, DEFAULT_EXTREMUM_TOLERANCE)
}
