//! Direct numerical integration of `Θ'' = -(y²/4) Θ`.
//!
//! This is the independent cross-check for the series: plain `f64`, no
//! series coefficients, a Gragg–Bulirsch–Stoer extrapolation integrator with
//! adaptive step size. Samples are stored at every accepted step together
//! with `Θ'`, and the ODE itself supplies `Θ''`, so the trajectory can be
//! read back anywhere by quintic Hermite interpolation.

use crate::error::{Error, Result};

/// Substep counts of the modified midpoint rule, one per extrapolation column.
const SUBSTEPS: [usize; 8] = [2, 4, 6, 8, 10, 12, 14, 16];

/// `max |s³ (s - h)³| · 6!` over one step, divided out of `h⁶`.
const QUINTIC_HERMITE_ERROR_DENOMINATOR: f64 = 46080.0;

/// One point of the trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeSample {
    pub y: f64,
    pub theta: f64,
    pub theta_prime: f64,
}

impl OdeSample {
    fn theta_second(&self) -> f64 {
        -0.25 * self.y * self.y * self.theta
    }
}

/// Samples of Θ on `[0, y_max]` at the accepted integrator steps.
#[derive(Debug, Clone, PartialEq)]
pub struct OdeTrajectory {
    pub samples: Vec<OdeSample>,
    /// Local error bound enforced on every accepted step.
    pub tolerance: f64,
}

impl OdeTrajectory {
    pub fn y_max(&self) -> f64 {
        self.samples.last().map_or(0.0, |s| s.y)
    }

    /// Θ at `y` by quintic Hermite interpolation between the neighbouring
    /// samples, or `None` outside `[0, y_max]`.
    pub fn interpolate(&self, y: f64) -> Option<f64> {
        let first = self.samples.first()?;
        if y < first.y || y > self.y_max() {
            return None;
        }
        if self.samples.len() == 1 {
            return Some(first.theta);
        }
        let idx = self.samples.partition_point(|s| s.y <= y);
        let idx = idx.clamp(1, self.samples.len() - 1);
        let (left, right) = (&self.samples[idx - 1], &self.samples[idx]);
        let h = right.y - left.y;
        let t = (y - left.y) / h;
        let t2 = t * t;
        let t3 = t2 * t;
        let t4 = t3 * t;
        let t5 = t4 * t;
        let h00 = 1.0 - 10.0 * t3 + 15.0 * t4 - 6.0 * t5;
        let h10 = t - 6.0 * t3 + 8.0 * t4 - 3.0 * t5;
        let h20 = 0.5 * (t2 - 3.0 * t3 + 3.0 * t4 - t5);
        let h21 = 0.5 * (t3 - 2.0 * t4 + t5);
        let h11 = -4.0 * t3 + 7.0 * t4 - 3.0 * t5;
        let h01 = 10.0 * t3 - 15.0 * t4 + 6.0 * t5;
        Some(
            left.theta * h00
                + h * left.theta_prime * h10
                + h * h * left.theta_second() * h20
                + h * h * right.theta_second() * h21
                + h * right.theta_prime * h11
                + right.theta * h01,
        )
    }

    /// Sample abscissae `y` in `(0, y_max]` where Θ changes sign between
    /// consecutive samples (the right endpoint of each such interval).
    pub fn sign_changes(&self) -> Vec<f64> {
        self.samples
            .windows(2)
            .filter(|w| w[0].y > 0.0 && (w[0].theta > 0.0) != (w[1].theta > 0.0))
            .map(|w| w[1].y)
            .collect()
    }
}

fn rhs(y: f64, state: [f64; 2]) -> [f64; 2] {
    [state[1], -0.25 * y * y * state[0]]
}

/// Gragg's modified midpoint rule over `[y, y + big_step]` with `n` substeps.
fn modified_midpoint(y: f64, state: [f64; 2], big_step: f64, n: usize) -> [f64; 2] {
    let h = big_step / n as f64;
    let mut prev = state;
    let d = rhs(y, state);
    let mut cur = [state[0] + h * d[0], state[1] + h * d[1]];
    for m in 1..n {
        let d = rhs(y + m as f64 * h, cur);
        let next = [prev[0] + 2.0 * h * d[0], prev[1] + 2.0 * h * d[1]];
        prev = cur;
        cur = next;
    }
    let d = rhs(y + big_step, cur);
    [
        0.5 * (cur[0] + prev[0] + h * d[0]),
        0.5 * (cur[1] + prev[1] + h * d[1]),
    ]
}

enum StepOutcome {
    Accepted { state: [f64; 2], column: usize },
    Rejected,
}

/// One extrapolated step; accepted once two successive diagonal entries of the
/// Richardson table agree to `tolerance`.
fn extrapolated_step(y: f64, state: [f64; 2], step: f64, tolerance: f64) -> StepOutcome {
    let mut table: Vec<[f64; 2]> = Vec::with_capacity(SUBSTEPS.len());
    for (k, &n) in SUBSTEPS.iter().enumerate() {
        let mut row = vec![modified_midpoint(y, state, step, n)];
        for j in 1..=k {
            let ratio = (n as f64 / SUBSTEPS[k - j] as f64).powi(2);
            let above = table[j - 1];
            let here = row[j - 1];
            row.push([
                here[0] + (here[0] - above[0]) / (ratio - 1.0),
                here[1] + (here[1] - above[1]) / (ratio - 1.0),
            ]);
        }
        if k >= 1 {
            let best = row[k];
            let previous = row[k - 1];
            let err = (best[0] - previous[0])
                .abs()
                .max((best[1] - previous[1]).abs());
            if err <= tolerance {
                return StepOutcome::Accepted {
                    state: best,
                    column: k,
                };
            }
        }
        table = row;
    }
    StepOutcome::Rejected
}

/// Largest step for which quintic Hermite interpolation stays within
/// `10 · tolerance`, bounding `|Θ⁽⁶⁾|` by `ω⁶ · amplitude` with local
/// frequency `ω = y/2`.
fn interpolation_step_cap(y_end: f64, amplitude: f64, tolerance: f64) -> f64 {
    let omega = (0.5 * y_end).max(1.0);
    let bound = QUINTIC_HERMITE_ERROR_DENOMINATOR * 10.0 * tolerance / (omega.powi(6) * amplitude);
    bound.powf(1.0 / 6.0)
}

/// Integrates `Θ'' = -(y²/4) Θ` from `(Θ, Θ') = (0, a₁)` at `y = 0` to `y_max`.
///
/// Every accepted step has an estimated local error of at most `tolerance`
/// (absolute, on both Θ and Θ'); steps are also capped so that
/// [`OdeTrajectory::interpolate`] is accurate to `10 · tolerance`.
/// `y_max = 0` yields the initial sample alone.
pub fn integrate_ode(y_max: f64, a1: f64, tolerance: f64) -> Result<OdeTrajectory> {
    if !y_max.is_finite() || y_max < 0.0 {
        return Err(Error::domain(format!(
            "y_max must be finite and >= 0, got {y_max}"
        )));
    }
    if !(tolerance > 0.0) || !tolerance.is_finite() {
        return Err(Error::domain(format!(
            "tolerance must be positive, got {tolerance}"
        )));
    }
    if !a1.is_finite() {
        return Err(Error::domain(format!("a1 must be finite, got {a1}")));
    }

    let mut samples = vec![OdeSample {
        y: 0.0,
        theta: 0.0,
        theta_prime: a1,
    }];
    // Θ never exceeds about 1.7·|a₁| in magnitude.
    let amplitude = 2.0 * a1.abs().max(f64::MIN_POSITIVE);
    let mut y = 0.0;
    let mut state = [0.0, a1];
    let mut step = interpolation_step_cap(0.0, amplitude, tolerance).min(y_max);

    while y < y_max {
        let remaining = y_max - y;
        step = step
            .min(interpolation_step_cap(y + step, amplitude, tolerance))
            .min(remaining);
        if step <= 1e-14 * y.max(1.0) {
            return Err(Error::IntegrationFailure { y, step });
        }
        match extrapolated_step(y, state, step, tolerance) {
            StepOutcome::Accepted {
                state: next,
                column,
            } => {
                y = if step == remaining { y_max } else { y + step };
                state = next;
                samples.push(OdeSample {
                    y,
                    theta: state[0],
                    theta_prime: state[1],
                });
                if column <= 3 {
                    step *= 1.5;
                } else if column >= 6 {
                    step *= 0.7;
                }
            }
            StepOutcome::Rejected => step *= 0.5,
        }
    }

    Ok(OdeTrajectory { samples, tolerance })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_range_gives_initial_sample() {
        let traj = integrate_ode(0.0, 1.0, 1e-12).unwrap();
        assert_eq!(
            traj.samples,
            vec![OdeSample {
                y: 0.0,
                theta: 0.0,
                theta_prime: 1.0
            }]
        );
        assert_eq!(traj.interpolate(0.0), Some(0.0));
    }

    #[test]
    fn samples_strictly_increasing() {
        let traj = integrate_ode(12.0, 1.0, 1e-10).unwrap();
        assert!(traj.samples.windows(2).all(|w| w[0].y < w[1].y));
        assert_eq!(traj.y_max(), 12.0);
        assert_eq!(traj.interpolate(12.5), None);
    }

    #[test]
    fn single_sign_change_before_second_zero() {
        let traj = integrate_ode(3.4, 1.0, 1e-12).unwrap();
        let changes = traj.sign_changes();
        assert_eq!(changes.len(), 1);
        let idx = traj.samples.iter().position(|s| s.y == changes[0]).unwrap();
        let (lo, hi) = (traj.samples[idx - 1].y, traj.samples[idx].y);
        assert!(lo <= 3.3352 && 3.3351 <= hi, "bracket [{lo}, {hi}]");
    }

    #[test]
    fn harmonic_limit_near_origin() {
        // For small y the solution is y - y⁵/80 + ...
        let traj = integrate_ode(0.5, 2.0, 1e-13).unwrap();
        let y: f64 = 0.37;
        let expected = 2.0 * (y - y.powi(5) / 80.0 + y.powi(9) / 23040.0);
        assert!((traj.interpolate(y).unwrap() - expected).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(integrate_ode(-1.0, 1.0, 1e-10).is_err());
        assert!(integrate_ode(1.0, 1.0, 0.0).is_err());
        assert!(integrate_ode(f64::NAN, 1.0, 1e-10).is_err());
    }
}
