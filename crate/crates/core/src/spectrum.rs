//! Time eigenvalues from the zeros of Θ.
//!
//! With `α = m/(ħτ)` and `y = √α x`, the wall condition `Θ(√α L) = 0` puts
//! `√α L` on a zero `z_n`, so `τ_n = m L² / (ħ z_n²)`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::zeros::PredictionConstant;

/// Mass, well width and reduced Planck constant in any consistent units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalParams {
    mass: f64,
    length: f64,
    hbar: f64,
}

impl PhysicalParams {
    pub const NATURAL: PhysicalParams = PhysicalParams {
        mass: 1.0,
        length: 1.0,
        hbar: 1.0,
    };

    pub fn new(mass: f64, length: f64, hbar: f64) -> Result<Self> {
        for (name, v) in [("mass", mass), ("length", length), ("hbar", hbar)] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::domain(format!(
                    "{name} must be finite and positive, got {v}"
                )));
            }
        }
        Ok(PhysicalParams { mass, length, hbar })
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    /// `m L² / ħ`, the time scale every eigenvalue is a multiple of.
    pub fn time_scale(&self) -> f64 {
        self.mass * self.length * self.length / self.hbar
    }
}

impl Default for PhysicalParams {
    fn default() -> Self {
        PhysicalParams::NATURAL
    }
}

/// How the approximate eigenvalue denominators are formed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ApproxDenominator {
    /// `4(n−1)π − c`, the square of the predicted zero.
    #[default]
    PredictedZeroSquared,
    /// `4(n−1)π − π/n`.
    ReciprocalIndex,
}

fn denominator(n: u32, c: PredictionConstant, form: ApproxDenominator) -> Result<f64> {
    if n < 2 {
        return Err(Error::domain(format!(
            "eigenvalue index starts at 2, got {n}"
        )));
    }
    let base = 4.0 * (n - 1) as f64 * PI;
    let d = match form {
        ApproxDenominator::PredictedZeroSquared => base - c.value(),
        ApproxDenominator::ReciprocalIndex => base - PI / n as f64,
    };
    if d <= 0.0 {
        return Err(Error::domain(format!(
            "approximate denominator {d} is not positive for n = {n}"
        )));
    }
    Ok(d)
}

/// Scaling `α = m / (ħ τ)` that makes `y = √α x` dimensionless.
pub fn alpha(tau: f64, params: &PhysicalParams) -> Result<f64> {
    if tau == 0.0 || !tau.is_finite() {
        return Err(Error::domain(format!(
            "tau must be finite and non-zero, got {tau}"
        )));
    }
    Ok(params.mass / (params.hbar * tau))
}

/// `τ_n = m L² / (ħ z_n²)`.
pub fn tau_n(z_n: f64, params: &PhysicalParams) -> Result<f64> {
    if !(z_n > 0.0) || !z_n.is_finite() {
        return Err(Error::domain(format!(
            "zero position must be positive, got {z_n}"
        )));
    }
    Ok(params.time_scale() / (z_n * z_n))
}

/// `τ_n` with the predicted zero substituted for `z_n`.
pub fn tau_approx(n: u32, params: &PhysicalParams, c: PredictionConstant) -> Result<f64> {
    tau_approx_with(n, params, c, ApproxDenominator::default())
}

pub fn tau_approx_with(
    n: u32,
    params: &PhysicalParams,
    c: PredictionConstant,
    form: ApproxDenominator,
) -> Result<f64> {
    Ok(params.time_scale() / denominator(n, c, form)?)
}

/// `τ_n − τ_{n+k} = (m L²/ħ)(z_{n+k}² − z_n²) / (z_n² z_{n+k}²)`.
pub fn tau_diff(z_n: f64, z_nk: f64, params: &PhysicalParams) -> Result<f64> {
    if !(z_n > 0.0 && z_n < z_nk) || !z_nk.is_finite() {
        return Err(Error::domain(format!(
            "need 0 < z_n < z_(n+k), got z_n = {z_n}, z_(n+k) = {z_nk}"
        )));
    }
    let (a, b) = (z_n * z_n, z_nk * z_nk);
    Ok(params.time_scale() * (b - a) / (a * b))
}

/// `(m L²/ħ) · 4πk / ((4(n−1)π − c)(4(n−1+k)π − c))`.
pub fn tau_diff_approx(
    n: u32,
    k: u32,
    params: &PhysicalParams,
    c: PredictionConstant,
) -> Result<f64> {
    tau_diff_approx_with(n, k, params, c, ApproxDenominator::default())
}

pub fn tau_diff_approx_with(
    n: u32,
    k: u32,
    params: &PhysicalParams,
    c: PredictionConstant,
    form: ApproxDenominator,
) -> Result<f64> {
    let lower = denominator(n, c, form)?;
    let upper = denominator(n + k, c, form)?;
    Ok(params.time_scale() * 4.0 * PI * k as f64 / (lower * upper))
}

/// `E_n = n² π² ħ² / (2 m L²)`.
pub fn energy_eigenvalue(n: u32, params: &PhysicalParams) -> Result<f64> {
    if n == 0 {
        return Err(Error::domain("energy index starts at 1"));
    }
    let n = n as f64;
    Ok(n * n * PI * PI * params.hbar * params.hbar
        / (2.0 * params.mass * params.length * params.length))
}

/// `E_1 τ_2 / ħ = π² / (2 z_2²)`; the mass and width cancel.
pub fn uncertainty_product(z_2: f64) -> Result<f64> {
    if !(z_2 > 0.0) || !z_2.is_finite() {
        return Err(Error::domain(format!("z_2 must be positive, got {z_2}")));
    }
    Ok(PI * PI / (2.0 * z_2 * z_2))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumEntry {
    pub n: u32,
    pub z_n: f64,
    pub tau: f64,
    pub tau_approx: f64,
}

/// Time eigenvalues for the interior zeros `n >= 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSpectrum {
    pub entries: Vec<SpectrumEntry>,
    pub params: PhysicalParams,
}

impl TimeSpectrum {
    /// Builds the spectrum from zero positions `z_1, z_2, ...`; `z_1 = 0` is
    /// skipped since its eigenvalue diverges.
    pub fn from_zeros(
        zeros: &[f64],
        params: PhysicalParams,
        c: PredictionConstant,
        form: ApproxDenominator,
    ) -> Result<Self> {
        let entries = zeros
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &z_n)| {
                let n = i as u32 + 1;
                Ok(SpectrumEntry {
                    n,
                    z_n,
                    tau: tau_n(z_n, &params)?,
                    tau_approx: tau_approx_with(n, &params, c, form)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(TimeSpectrum { entries, params })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const NATURAL: PhysicalParams = PhysicalParams::NATURAL;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn alpha_examples() {
        assert_eq!(alpha(1.0, &NATURAL).unwrap(), 1.0);
        let p = PhysicalParams::new(2.0, 1.0, 1.0).unwrap();
        assert_eq!(alpha(4.0, &p).unwrap(), 0.5);
        let tau2 = tau_n(3.3352, &NATURAL).unwrap();
        assert!(close(alpha(tau2, &NATURAL).unwrap().sqrt(), 3.3352, 1e-12));
        assert!(alpha(0.0, &NATURAL).is_err());
    }

    #[test]
    fn tau_examples() {
        assert_eq!(tau_n(1.0, &NATURAL).unwrap(), 1.0);
        assert!(close(tau_n(3.3352, &NATURAL).unwrap(), 0.089899, 1e-6));
        assert!(close(tau_n(27.2001, &NATURAL).unwrap(), 1.35165e-3, 1e-7));
        assert!(tau_n(0.0, &NATURAL).is_err());
    }

    #[test]
    fn tau_approx_examples() {
        let zero_c = PredictionConstant::new(0.0).unwrap();
        assert!(close(
            tau_approx(2, &NATURAL, zero_c).unwrap(),
            1.0 / (4.0 * PI),
            1e-15
        ));
        // 1 / (4π − 1.439620) = 1 / 3.335678…²
        assert!(close(
            tau_approx(2, &NATURAL, PredictionConstant::FITTED).unwrap(),
            0.0898735,
            1e-6
        ));
        let printed =
            tau_approx_with(2, &NATURAL, zero_c, ApproxDenominator::ReciprocalIndex).unwrap();
        assert!(close(printed, 1.0 / (4.0 * PI - PI / 2.0), 1e-15));
        assert!(tau_approx(1, &NATURAL, zero_c).is_err());
        let huge = PredictionConstant::new(13.0).unwrap();
        assert!(tau_approx(2, &NATURAL, huge).is_err());
    }

    #[test]
    fn tau_diff_examples() {
        assert!(close(
            tau_diff(3.3352, 4.86051, &NATURAL).unwrap(),
            0.047569,
            1e-5
        ));
        assert!(close(
            tau_diff(3.3352, 27.2001, &NATURAL).unwrap(),
            0.088547,
            1e-5
        ));
        assert!(tau_diff(3.0, 3.0, &NATURAL).is_err());
        assert!(tau_diff(4.0, 3.0, &NATURAL).is_err());
        assert!(tau_diff(0.0, 3.0, &NATURAL).is_err());
    }

    #[test]
    fn tau_diff_approx_examples() {
        let c = PredictionConstant::FITTED;
        assert_eq!(tau_diff_approx(2, 0, &NATURAL, c).unwrap(), 0.0);
        // 4π / ((4π − c)(8π − c))
        assert!(close(
            tau_diff_approx(2, 1, &NATURAL, c).unwrap(),
            0.047667,
            1e-5
        ));
    }

    #[test]
    fn energy_examples() {
        let e1 = energy_eigenvalue(1, &NATURAL).unwrap();
        assert!(close(e1, 4.934802, 1e-6));
        assert!(close(
            energy_eigenvalue(2, &NATURAL).unwrap(),
            4.0 * e1,
            1e-12
        ));
        let p = PhysicalParams::new(2.0, 3.0, 1.0).unwrap();
        assert!(close(
            energy_eigenvalue(3, &p).unwrap(),
            PI * PI / 4.0,
            1e-14
        ));
        assert!(energy_eigenvalue(0, &NATURAL).is_err());
    }

    #[test]
    fn uncertainty_examples() {
        assert!(close(
            uncertainty_product(3.3352).unwrap(),
            0.443635188,
            1e-8
        ));
        assert!(close(uncertainty_product(PI).unwrap(), 0.5, 1e-15));
        assert!(uncertainty_product(0.0).is_err());
    }

    #[test]
    fn params_validation() {
        assert!(PhysicalParams::new(0.0, 1.0, 1.0).is_err());
        assert!(PhysicalParams::new(1.0, -1.0, 1.0).is_err());
        assert!(PhysicalParams::new(1.0, 1.0, f64::NAN).is_err());
        assert_eq!(PhysicalParams::default(), NATURAL);
    }

    #[test]
    fn spectrum_skips_boundary_zero() {
        let zeros = [0.0, 3.3352, 4.86051];
        let s = TimeSpectrum::from_zeros(
            &zeros,
            NATURAL,
            PredictionConstant::FITTED,
            ApproxDenominator::default(),
        )
        .unwrap();
        assert_eq!(s.entries.len(), 2);
        assert_eq!(s.entries[0].n, 2);
        assert!(s.entries[0].tau > s.entries[1].tau);
    }
}
