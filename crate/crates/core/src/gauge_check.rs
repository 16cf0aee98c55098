//! Finite-difference checks that a gauge term in the momentum representation
//! is physically inert.
//!
//! With `p → −iħ d/dx + f(x)` the energy and time eigenvalue equations pick up
//! first-derivative and potential-like terms in `f`. Multiplying the standard
//! solutions by the phase `exp(−(i/ħ) F(x))`, `F' = f`, must solve the gauged
//! equations with unchanged eigenvalues and unchanged `|ψ|²`.
//!
//! Residuals use centered second-order stencils on a uniform grid and skip the
//! endpoints. Each residual is reported both in absolute terms and relative to
//! the largest `|ψ''|` on the grid, which makes results comparable across
//! eigenfunctions of very different curvature.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::spectrum::{alpha, energy_eigenvalue, PhysicalParams};
use crate::theta_series::ThetaEvaluator;

type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A gauge function `f` with its derivative and an antiderivative.
#[derive(Clone)]
pub struct GaugeFunction {
    name: String,
    f: RealFn,
    f_prime: RealFn,
    antiderivative: RealFn,
}

impl fmt::Debug for GaugeFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GaugeFunction")
            .field("name", &self.name)
            .finish()
    }
}

impl GaugeFunction {
    pub fn new(
        name: impl Into<String>,
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
        f_prime: impl Fn(f64) -> f64 + Send + Sync + 'static,
        antiderivative: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        GaugeFunction {
            name: name.into(),
            f: Arc::new(f),
            f_prime: Arc::new(f_prime),
            antiderivative: Arc::new(antiderivative),
        }
    }

    /// `f ≡ 0`.
    pub fn zero() -> Self {
        Self::new("zero", |_| 0.0, |_| 0.0, |_| 0.0)
    }

    /// `f ≡ c`, `F = c x`.
    pub fn constant(c: f64) -> Self {
        Self::new(
            format!("constant({c})"),
            move |_| c,
            |_| 0.0,
            move |x| c * x,
        )
    }

    /// `f = s x`, `F = s x²/2`.
    pub fn linear(slope: f64) -> Self {
        Self::new(
            format!("linear({slope})"),
            move |x| slope * x,
            move |_| slope,
            move |x| 0.5 * slope * x * x,
        )
    }

    /// `{0, 1, x}`.
    pub fn builtin_suite() -> Vec<GaugeFunction> {
        vec![Self::zero(), Self::constant(1.0), Self::linear(1.0)]
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn value(&self, x: f64) -> f64 {
        (self.f)(x)
    }

    pub fn derivative(&self, x: f64) -> f64 {
        (self.f_prime)(x)
    }

    pub fn antiderivative(&self, x: f64) -> f64 {
        (self.antiderivative)(x)
    }

    /// Checks on 33 points of `[lo, hi]` that centered differences of `f` and
    /// `F` reproduce `f'` and `f` to second order.
    pub fn validate(&self, lo: f64, hi: f64) -> Result<()> {
        const H: f64 = 1e-3;
        const POINTS: usize = 33;
        for i in 0..POINTS {
            let x = lo + (hi - lo) * i as f64 / (POINTS - 1) as f64;
            let fd_f = (self.value(x + H) - self.value(x - H)) / (2.0 * H);
            let fd_anti = (self.antiderivative(x + H) - self.antiderivative(x - H)) / (2.0 * H);
            let f = self.value(x);
            let fp = self.derivative(x);
            let scale = 1.0 + f.abs() + fp.abs();
            if !((fd_f - fp).abs() <= 1e-4 * scale) {
                return Err(Error::InconsistentGauge {
                    name: self.name.clone(),
                    detail: format!(
                        "f' = {fp} but the difference quotient of f is {fd_f} at x = {x}"
                    ),
                });
            }
            if !((fd_anti - f).abs() <= 1e-4 * scale) {
                return Err(Error::InconsistentGauge {
                    name: self.name.clone(),
                    detail: format!(
                        "f = {f} but the difference quotient of F is {fd_anti} at x = {x}"
                    ),
                });
            }
        }
        Ok(())
    }
}

/// Complex samples of a wave function on a uniform grid, endpoints included.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexGrid {
    xs: Vec<f64>,
    values: Vec<Complex64>,
}

impl ComplexGrid {
    pub fn new(xs: Vec<f64>, values: Vec<Complex64>) -> Result<Self> {
        if xs.len() != values.len() {
            return Err(Error::GridMismatch(format!(
                "{} abscissae but {} values",
                xs.len(),
                values.len()
            )));
        }
        if xs.len() >= 3 {
            let step = xs[1] - xs[0];
            let uniform = step > 0.0
                && xs
                    .windows(2)
                    .all(|w| ((w[1] - w[0]) - step).abs() <= 1e-9 * step);
            if !uniform {
                return Err(Error::GridMismatch(
                    "abscissae are not uniformly spaced".into(),
                ));
            }
        }
        Ok(ComplexGrid { xs, values })
    }

    /// Samples `psi` at `intervals + 1` evenly spaced points of `[lo, hi]`.
    pub fn sample(lo: f64, hi: f64, intervals: usize, psi: impl Fn(f64) -> Complex64) -> Self {
        let xs = uniform_grid(lo, hi, intervals);
        let values = xs.iter().map(|&x| psi(x)).collect();
        ComplexGrid { xs, values }
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Multiplies by `exp(−(i/ħ) F(x))`.
    pub fn apply_gauge(&self, g: &GaugeFunction, hbar: f64) -> ComplexGrid {
        let values = self
            .xs
            .iter()
            .zip(&self.values)
            .map(|(&x, &v)| v * Complex64::from_polar(1.0, -g.antiderivative(x) / hbar))
            .collect();
        ComplexGrid {
            xs: self.xs.clone(),
            values,
        }
    }

    /// Grid spacing; zero for grids with fewer than two points.
    pub fn step(&self) -> f64 {
        if self.xs.len() < 2 {
            0.0
        } else {
            self.xs[1] - self.xs[0]
        }
    }
}

fn uniform_grid(lo: f64, hi: f64, intervals: usize) -> Vec<f64> {
    let step = (hi - lo) / intervals as f64;
    (0..=intervals)
        .map(|i| {
            if i == intervals {
                hi
            } else {
                lo + step * i as f64
            }
        })
        .collect()
}

fn intervals_for(lo: f64, hi: f64, grid_step: f64) -> Result<usize> {
    if !(grid_step > 0.0) || !grid_step.is_finite() {
        return Err(Error::domain(format!(
            "grid step must be positive, got {grid_step}"
        )));
    }
    let intervals = ((hi - lo) / grid_step).round().max(2.0);
    if intervals > 1e8 {
        return Err(Error::domain(format!("grid step {grid_step} is too fine")));
    }
    Ok(intervals as usize)
}

/// Maximum residual over the interior of a grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaugeResidual {
    pub absolute: f64,
    /// `absolute / max |ψ''|`.
    pub relative: f64,
}

/// Evaluates `ψ'' + b(x) ψ' + c(x) ψ` with centered differences on the interior.
fn residual<B, C>(grid: &ComplexGrid, first: B, zeroth: C) -> GaugeResidual
where
    B: Fn(f64) -> Complex64,
    C: Fn(f64) -> Complex64,
{
    let h = grid.step();
    let (xs, psi) = (grid.xs(), grid.values());
    let mut absolute: f64 = 0.0;
    let mut curvature: f64 = 0.0;
    for i in 1..xs.len() - 1 {
        let d2 = (psi[i + 1] - 2.0 * psi[i] + psi[i - 1]) / (h * h);
        let d1 = (psi[i + 1] - psi[i - 1]) / (2.0 * h);
        let r = d2 + first(xs[i]) * d1 + zeroth(xs[i]) * psi[i];
        absolute = absolute.max(r.norm());
        curvature = curvature.max(d2.norm());
    }
    GaugeResidual {
        absolute,
        relative: if curvature > 0.0 {
            absolute / curvature
        } else {
            absolute
        },
    }
}

const I: Complex64 = Complex64::new(0.0, 1.0);

/// `exp(−(i/ħ) F(x)) sin(nπx/L)` sampled on `[0, L]`.
pub fn energy_wavefunction(
    g: &GaugeFunction,
    n: u32,
    params: &PhysicalParams,
    grid_step: f64,
) -> Result<ComplexGrid> {
    let length = params.length();
    let intervals = intervals_for(0.0, length, grid_step)?;
    let k = n as f64 * PI / length;
    Ok(ComplexGrid::sample(0.0, length, intervals, |x| {
        Complex64::from_polar((k * x).sin(), -g.antiderivative(x) / params.hbar())
    }))
}

/// Residual of the gauged energy eigenvalue equation for the `n`-th well state.
///
/// The equation is
/// `ψ'' + i(2/ħ) f ψ' + (1/ħ²)[iħ f' − f² + 2mE] ψ = 0` inside the well,
/// with `E = energy_eigenvalue(n)` independent of `f`.
pub fn energy_gauge_residual(
    g: &GaugeFunction,
    n: u32,
    params: &PhysicalParams,
    grid_step: f64,
) -> Result<GaugeResidual> {
    g.validate(0.0, params.length())?;
    let energy = energy_eigenvalue(n, params)?;
    let grid = energy_wavefunction(g, n, params, grid_step)?;
    let (hbar, mass) = (params.hbar(), params.mass());
    Ok(residual(
        &grid,
        |x| I * (2.0 / hbar) * g.value(x),
        |x| {
            let f = g.value(x);
            (I * hbar * g.derivative(x) - f * f + 2.0 * mass * energy) / (hbar * hbar)
        },
    ))
}

/// `exp(i(α x²/4 − F(x)/ħ)) Θ(√α x)` on `x ∈ [y_lo, y_hi] / √α`.
pub fn time_wavefunction(
    g: &GaugeFunction,
    tau: f64,
    params: &PhysicalParams,
    y_range: (f64, f64),
    grid_step: f64,
    eval: &ThetaEvaluator,
) -> Result<ComplexGrid> {
    let alpha = alpha(tau, params)?;
    if alpha < 0.0 {
        return Err(Error::domain("only positive tau is supported"));
    }
    let (y_lo, y_hi) = y_range;
    if !(0.0 <= y_lo && y_lo < y_hi) || !y_hi.is_finite() {
        return Err(Error::domain(format!("invalid y range [{y_lo}, {y_hi}]")));
    }
    let root = alpha.sqrt();
    let (x_lo, x_hi) = (y_lo / root, y_hi / root);
    let intervals = intervals_for(x_lo, x_hi, grid_step)?;
    let xs = uniform_grid(x_lo, x_hi, intervals);
    let eval = eval.covering(y_hi);
    let thetas: Vec<f64> = xs
        .par_iter()
        .map(|&x| eval.theta((root * x).min(y_hi)))
        .collect::<Result<_>>()?;
    let values = xs
        .iter()
        .zip(thetas)
        .map(|(&x, theta)| {
            let phase = 0.25 * alpha * x * x - g.antiderivative(x) / params.hbar();
            Complex64::from_polar(theta, phase)
        })
        .collect();
    Ok(ComplexGrid { xs, values })
}

/// Residual of the gauged time eigenvalue equation
///
/// `ψ'' + i[(2/ħ) f − (m/(ħτ)) x] ψ' + [(i/ħ) f' + (m/(τħ²)) x f − f²/ħ² − i m/(2τħ)] ψ = 0`
///
/// for the Θ-based eigenfunction, on the `x` grid covering `y_range`.
pub fn time_gauge_residual(
    g: &GaugeFunction,
    tau: f64,
    params: &PhysicalParams,
    y_range: (f64, f64),
    grid_step: f64,
    eval: &ThetaEvaluator,
) -> Result<GaugeResidual> {
    let reference = time_wavefunction(
        &GaugeFunction::zero(),
        tau,
        params,
        y_range,
        grid_step,
        eval,
    )?;
    gauged_time_residual(&reference, g, tau, params)
}

/// Same as [`time_gauge_residual`], starting from the ungauged samples
/// `exp(iαx²/4) Θ(√α x)` so that Θ is evaluated once for several gauges.
pub fn gauged_time_residual(
    reference: &ComplexGrid,
    g: &GaugeFunction,
    tau: f64,
    params: &PhysicalParams,
) -> Result<GaugeResidual> {
    let alpha = alpha(tau, params)?;
    if reference.xs().len() < 3 {
        return Err(Error::GridMismatch(
            "need at least three grid points".into(),
        ));
    }
    let (&x_lo, &x_hi) = (
        reference.xs().first().unwrap(),
        reference.xs().last().unwrap(),
    );
    g.validate(x_lo, x_hi)?;
    let hbar = params.hbar();
    let grid = reference.apply_gauge(g, hbar);
    Ok(residual(
        &grid,
        |x| I * ((2.0 / hbar) * g.value(x) - alpha * x),
        |x| {
            let f = g.value(x);
            I * g.derivative(x) / hbar + alpha * x * f / hbar
                - f * f / (hbar * hbar)
                - I * 0.5 * alpha
        },
    ))
}

/// `max | |ψ_gauged|² − |ψ_reference|² |` relative to `max |ψ_reference|²`.
pub fn density_invariance(reference: &ComplexGrid, gauged: &ComplexGrid) -> Result<f64> {
    if reference.xs != gauged.xs {
        return Err(Error::GridMismatch("grids have different abscissae".into()));
    }
    let mut deviation: f64 = 0.0;
    let mut scale: f64 = 0.0;
    for (r, g) in reference.values.iter().zip(&gauged.values) {
        deviation = deviation.max((g.norm_sqr() - r.norm_sqr()).abs());
        scale = scale.max(r.norm_sqr());
    }
    Ok(if scale > 0.0 {
        deviation / scale
    } else {
        deviation
    })
}
