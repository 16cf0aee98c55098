//! Zeros of Θ and the one-constant prediction for their positions.
//!
//! Zero `n = 1` is the boundary zero at `y = 0`; the first interior zero is
//! `n = 2`. Interior zeros are located by scanning outward from the predicted
//! position for a sign change and refining with bisection safeguarded Newton
//! steps.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::theta_series::ThetaEvaluator;

/// Default bracket width for zero refinement.
pub const DEFAULT_ZERO_TOLERANCE: f64 = 1e-12;

/// The subtractive constant `c` in the prediction `z_n ≈ √(4(n−1)π − c)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PredictionConstant(f64);

impl PredictionConstant {
    /// `c = √π`.
    pub const SQRT_PI: PredictionConstant = PredictionConstant(1.772_453_850_905_516);

    /// `c` fitted by least squares to the tabulated predicted positions of
    /// zeros 2 through 60 (see [`fit_prediction_constant`]), rounded to six
    /// decimals.
    pub const FITTED: PredictionConstant = PredictionConstant(1.439_620);

    pub fn new(c: f64) -> Result<Self> {
        if !c.is_finite() || c < 0.0 {
            return Err(Error::domain(format!(
                "prediction constant must be finite and >= 0, got {c}"
            )));
        }
        Ok(PredictionConstant(c))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl Default for PredictionConstant {
    fn default() -> Self {
        PredictionConstant::SQRT_PI
    }
}

/// Predicted position of zero `n`: 0 for `n = 1`, else `√(4(n−1)π − c)`.
pub fn predicted_zero(n: u32, c: PredictionConstant) -> Result<f64> {
    match n {
        0 => Err(Error::domain("zero index starts at 1")),
        1 => Ok(0.0),
        _ => {
            let radicand = 4.0 * (n - 1) as f64 * PI - c.value();
            if radicand <= 0.0 {
                return Err(Error::domain(format!(
                    "4(n-1)π - c = {radicand} is not positive for n = {n}"
                )));
            }
            Ok(radicand.sqrt())
        }
    }
}

/// Least-squares estimate of `c` from `(n, predicted position)` pairs, `n >= 2`.
///
/// Minimizes `Σ (√(4(n−1)π − c) − p_n)²` by Gauss–Newton, starting from the
/// mean of `4(n−1)π − p_n²`.
pub fn fit_prediction_constant(rows: &[(u32, f64)]) -> Result<PredictionConstant> {
    if rows.is_empty() || rows.iter().any(|&(n, p)| n < 2 || !p.is_finite()) {
        return Err(Error::domain(
            "fit needs rows with n >= 2 and finite positions",
        ));
    }
    let base: Vec<(f64, f64)> = rows
        .iter()
        .map(|&(n, p)| (4.0 * (n - 1) as f64 * PI, p))
        .collect();
    let mut c = base.iter().map(|&(a, p)| a - p * p).sum::<f64>() / base.len() as f64;
    for _ in 0..50 {
        let (mut num, mut den) = (0.0, 0.0);
        for &(a, p) in &base {
            let root = (a - c).sqrt();
            let residual = root - p;
            let jacobian = -0.5 / root;
            num += residual * jacobian;
            den += jacobian * jacobian;
        }
        let delta = -num / den;
        c += delta;
        if delta.abs() <= 1e-15 * c.abs().max(1.0) {
            break;
        }
    }
    PredictionConstant::new(c)
}

/// Shrinks a sign-change bracket of `f` to width `tol`.
///
/// `f` returns the function value and its derivative. Newton steps are taken
/// whenever they land inside the bracket and the bracket keeps halving;
/// otherwise the step is a bisection. Once a Newton correction drops below
/// `tol/2` the next probe deliberately overshoots by `tol/4` so the far end
/// of the bracket closes in as well.
pub(crate) fn refine_root<F>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<(f64, f64)>,
{
    let (f_lo, _) = f(lo)?;
    let (f_hi, _) = f(hi)?;
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    let lo_positive = f_lo > 0.0;
    if lo_positive == (f_hi > 0.0) {
        return Err(Error::BracketNotFound {
            what: "root".into(),
            lo,
            hi,
        });
    }

    let mut x = 0.5 * (lo + hi);
    let mut width_two_back = f64::INFINITY;
    let mut width_one_back = hi - lo;
    while hi - lo > tol {
        let (value, slope) = f(x)?;
        if value == 0.0 {
            return Ok(x);
        }
        if (value > 0.0) == lo_positive {
            lo = x;
        } else {
            hi = x;
        }
        let width = hi - lo;
        let halving = width <= 0.5 * width_two_back;
        width_two_back = width_one_back;
        width_one_back = width;

        let newton = if slope != 0.0 {
            x - value / slope
        } else {
            f64::NAN
        };
        x = if newton > lo && newton < hi && (halving || width_two_back.is_infinite()) {
            let step = newton - x;
            if step.abs() < 0.5 * tol {
                (newton + 0.25 * tol * step.signum()).clamp(lo, hi)
            } else {
                newton
            }
        } else {
            0.5 * (lo + hi)
        };
        if x <= lo || x >= hi {
            x = 0.5 * (lo + hi);
        }
    }
    Ok(0.5 * (lo + hi))
}

fn theta_sign_differs(eval: &ThetaEvaluator, a: f64, b: f64) -> Result<bool> {
    Ok((eval.theta(a)? > 0.0) != (eval.theta(b)? > 0.0))
}

/// Bracket for zero `n` found by widening a symmetric window around the
/// prediction up to one asymptotic spacing `2π/z` either side.
fn bracket_around_prediction(n: u32, eval: &ThetaEvaluator) -> Result<Option<(f64, f64)>> {
    let center = predicted_zero(n, PredictionConstant::FITTED)?;
    let spacing = 2.0 * PI / center;
    let step = spacing / 8.0;
    for k in 1..=8 {
        let lo = (center - k as f64 * step).max(f64::MIN_POSITIVE);
        let hi = center + k as f64 * step;
        if theta_sign_differs(eval, lo, hi)? {
            return Ok(Some((lo, hi)));
        }
    }
    Ok(None)
}

/// Bracket for the first zero after `previous`, marching in half spacings.
fn bracket_after(previous: f64, eval: &ThetaEvaluator) -> Result<Option<(f64, f64)>> {
    let local = |y: f64| PI / y.max(PI.sqrt());
    let mut lo = previous + 0.25 * local(previous);
    for _ in 0..16 {
        let hi = lo + local(lo);
        if theta_sign_differs(eval, lo, hi)? {
            return Ok(Some((lo, hi)));
        }
        lo = hi;
    }
    Ok(None)
}

/// Position of zero `n` of Θ, refined to a bracket of width at most `tol`.
pub fn find_zero(n: u32, eval: &ThetaEvaluator, tol: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::domain("zero index starts at 1"));
    }
    if !(tol > 0.0) {
        return Err(Error::domain(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    if n == 1 {
        return Ok(0.0);
    }
    let bracket = match bracket_around_prediction(n, eval)? {
        Some(b) => b,
        None => {
            let previous = find_zero(n - 1, eval, tol)?;
            bracket_after(previous, eval)?.ok_or_else(|| {
                let center = predicted_zero(n, PredictionConstant::FITTED).unwrap_or(previous);
                Error::BracketNotFound {
                    what: format!("zero {n}"),
                    lo: center - 2.0 * PI / center,
                    hi: center + 2.0 * PI / center,
                }
            })?
        }
    };
    refine_root(|y| eval.theta_and_prime(y), bracket.0, bracket.1, tol)
}

/// Positions `z_1 .. z_count`, computed in parallel and returned in order.
pub fn zero_positions(count: u32, eval: &ThetaEvaluator, tol: f64) -> Result<Vec<f64>> {
    (1..=count)
        .into_par_iter()
        .map(|n| find_zero(n, eval, tol))
        .collect()
}

/// One row of the zero table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroRecord {
    pub n: u32,
    pub position: f64,
    /// `z_n − z_{n−1}`; absent for `n = 1`.
    pub spacing: Option<f64>,
    pub predicted: f64,
    /// `position − predicted`.
    pub error: f64,
    /// `(position − predicted) / position`; absent for `n = 1`.
    pub relative_error: Option<f64>,
}

/// Table rows from already computed positions `z_1, z_2, ...`.
pub fn records_from_positions(positions: &[f64], c: PredictionConstant) -> Result<Vec<ZeroRecord>> {
    positions
        .iter()
        .enumerate()
        .map(|(i, &position)| {
            let n = i as u32 + 1;
            let predicted = predicted_zero(n, c)?;
            let error = position - predicted;
            Ok(ZeroRecord {
                n,
                position,
                spacing: (i > 0).then(|| position - positions[i - 1]),
                predicted,
                error,
                relative_error: (n > 1).then(|| error / position),
            })
        })
        .collect()
}

/// The first `count` zeros with spacing, prediction and errors filled in.
pub fn zero_table(
    count: u32,
    eval: &ThetaEvaluator,
    c: PredictionConstant,
) -> Result<Vec<ZeroRecord>> {
    if count == 0 {
        return Err(Error::domain("count must be at least 1"));
    }
    let positions = zero_positions(count, eval, DEFAULT_ZERO_TOLERANCE)?;
    records_from_positions(&positions, c)
}

/// Precision able to locate the first `count` zeros.
pub fn precision_for_zero_count(count: u32) -> u32 {
    let last = predicted_zero(count.max(2), PredictionConstant::FITTED).unwrap_or(0.0);
    crate::theta_series::required_precision(last + 2.0 * PI / last.max(1.0))
}
