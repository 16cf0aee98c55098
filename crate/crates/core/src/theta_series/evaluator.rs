//! Working-precision summation of the series for Θ and Θ'.

use std::fmt;
use std::sync::{Arc, RwLock};

use dashu_float::round::mode::HalfEven;
use dashu_float::{Context, FBig, Repr};
use dashu_int::UBig;

use super::coefficients::recurrence_factor;
use crate::error::{Error, Result};

type Float = FBig<HalfEven, 2>;

/// Guard digits carried on top of the cancellation depth.
pub const GUARD_DIGITS: u32 = 20;

/// Default cap on the number of series terms.
///
/// Enough for every argument whose required precision stays below a few
/// hundred digits (y up to about 80).
pub const DEFAULT_MAX_TERMS: usize = 4096;

/// Consecutive negligible terms needed before the summation stops.
const NEGLIGIBLE_RUN: usize = 3;

/// Decimal digits needed to evaluate Θ at `y` with [`GUARD_DIGITS`] to spare.
///
/// The largest term of the series is of order `e^(y²/4)` while the sum stays
/// O(1), so about `y²/(4 ln 10)` leading digits cancel.
pub fn required_precision(y: f64) -> u32 {
    let lost = (y * y / (4.0 * std::f64::consts::LN_10)).ceil();
    lost as u32 + GUARD_DIGITS
}

fn digits_to_bits(digits: u32) -> usize {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as usize + 8
}

/// `log2 |x|` up to one unit; `-inf` for zero.
fn log2_magnitude(x: &Repr<2>) -> f64 {
    if x.is_zero() {
        f64::NEG_INFINITY
    } else {
        x.exponent() as f64 + x.digits() as f64
    }
}

fn repr_from_f64(x: f64) -> Repr<2> {
    Float::try_from(x)
        .expect("finite values convert exactly")
        .into_repr()
}

/// Coefficients `c_j / a₁` rounded once each to working precision.
///
/// Grown on demand; the exact running denominator is kept so every entry is
/// a single rounding of an exact rational.
struct CoefficientTable {
    context: Context<HalfEven>,
    state: RwLock<Arc<TableState>>,
}

struct TableState {
    coefficients: Vec<Repr<2>>,
    denominator: UBig,
}

impl CoefficientTable {
    fn new(bits: usize) -> Self {
        CoefficientTable {
            context: Context::new(bits),
            state: RwLock::new(Arc::new(TableState {
                coefficients: vec![Repr::one()],
                denominator: UBig::ONE,
            })),
        }
    }

    /// A snapshot holding at least `len` coefficients.
    fn snapshot(&self, len: usize) -> Arc<TableState> {
        {
            let current = self.state.read().expect("coefficient table lock poisoned");
            if current.coefficients.len() >= len {
                return Arc::clone(&current);
            }
        }
        let mut guard = self.state.write().expect("coefficient table lock poisoned");
        if guard.coefficients.len() < len {
            let mut coefficients = guard.coefficients.clone();
            let mut denominator = guard.denominator.clone();
            let target = len.max(2 * coefficients.len());
            coefficients.reserve(target - coefficients.len());
            for j in coefficients.len()..target {
                denominator *= UBig::from(recurrence_factor(j as u64));
                let den = Repr::<2>::from(denominator.clone());
                let one = if j % 2 == 0 {
                    Repr::one()
                } else {
                    Repr::neg_one()
                };
                coefficients.push(self.context.div(&one, &den).value().into_repr());
            }
            *guard = Arc::new(TableState {
                coefficients,
                denominator,
            });
        }
        Arc::clone(&guard)
    }
}

/// Evaluates `Θ(y) = Σ_j c_j y^(4j+1)` and its derivative in arbitrary precision.
///
/// The evaluator is an immutable value: the precision it sums in travels with
/// it and clones share the coefficient cache. The cache does not depend on
/// `a₁`, which scales the final sum.
#[derive(Clone)]
pub struct ThetaEvaluator {
    a1: f64,
    precision_digits: u32,
    max_terms: usize,
    table: Arc<CoefficientTable>,
}

impl fmt::Debug for ThetaEvaluator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ThetaEvaluator")
            .field("a1", &self.a1)
            .field("precision_digits", &self.precision_digits)
            .field("max_terms", &self.max_terms)
            .finish()
    }
}

impl ThetaEvaluator {
    pub fn new(a1: f64, precision_digits: u32, max_terms: usize) -> Result<Self> {
        if !a1.is_finite() || a1 == 0.0 {
            return Err(Error::domain(format!(
                "normalization a1 must be finite and non-zero, got {a1}"
            )));
        }
        if precision_digits == 0 {
            return Err(Error::domain("precision must be at least one digit"));
        }
        if max_terms == 0 {
            return Err(Error::domain("max_terms must be positive"));
        }
        Ok(ThetaEvaluator {
            a1,
            precision_digits,
            max_terms,
            table: Arc::new(CoefficientTable::new(digits_to_bits(precision_digits))),
        })
    }

    /// Evaluator with `a₁ = 1` and exactly enough precision for `[0, y_max]`.
    pub fn for_max_argument(y_max: f64) -> Self {
        Self::new(1.0, required_precision(y_max.abs()), DEFAULT_MAX_TERMS)
            .expect("default parameters are valid")
    }

    /// Same precision and coefficient cache, different normalization.
    pub fn with_a1(&self, a1: f64) -> Result<Self> {
        if !a1.is_finite() || a1 == 0.0 {
            return Err(Error::domain(format!(
                "normalization a1 must be finite and non-zero, got {a1}"
            )));
        }
        Ok(ThetaEvaluator { a1, ..self.clone() })
    }

    /// This evaluator if it already covers `y`, otherwise one raised to
    /// `required_precision(y)`.
    pub fn covering(&self, y: f64) -> Self {
        let required = required_precision(y.abs());
        if required <= self.precision_digits {
            self.clone()
        } else {
            Self::new(self.a1, required, self.max_terms).expect("validated on construction")
        }
    }

    pub fn a1(&self) -> f64 {
        self.a1
    }

    pub fn precision_digits(&self) -> u32 {
        self.precision_digits
    }

    pub fn max_terms(&self) -> usize {
        self.max_terms
    }

    /// Θ(y).
    pub fn theta(&self, y: f64) -> Result<f64> {
        self.sum(y, false).map(|(value, _)| value)
    }

    /// Θ'(y), from the term-by-term derivative.
    pub fn theta_prime(&self, y: f64) -> Result<f64> {
        self.theta_and_prime(y).map(|(_, derivative)| derivative)
    }

    /// Θ(y) and Θ'(y) from a single pass over the series.
    pub fn theta_and_prime(&self, y: f64) -> Result<(f64, f64)> {
        self.sum(y, true)
    }

    fn check_argument(&self, y: f64) -> Result<()> {
        if !y.is_finite() || y < 0.0 {
            return Err(Error::domain(format!(
                "Θ is evaluated on y >= 0 only, got {y}"
            )));
        }
        let required = required_precision(y);
        if required > self.precision_digits {
            return Err(Error::PrecisionInsufficient {
                y,
                required,
                available: self.precision_digits,
            });
        }
        Ok(())
    }

    fn sum(&self, y: f64, with_derivative: bool) -> Result<(f64, f64)> {
        self.check_argument(y)?;
        if y == 0.0 {
            return Ok((0.0, self.a1));
        }

        let ctx = &self.table.context;
        let cutoff = self.precision_digits as f64 * std::f64::consts::LOG2_10;
        let y_repr = repr_from_f64(y);
        let y2 = ctx.mul(&y_repr, &y_repr).value().into_repr();
        let y4 = ctx.mul(&y2, &y2).value().into_repr();

        let mut value = Repr::<2>::zero();
        let mut derivative = Repr::<2>::zero();
        // y^(4j)
        let mut power = Repr::<2>::one();
        let mut largest_value = f64::NEG_INFINITY;
        let mut largest_derivative = f64::NEG_INFINITY;
        let mut value_run = 0usize;
        let mut derivative_run = if with_derivative { 0 } else { NEGLIGIBLE_RUN };

        let mut table = self.table.snapshot(64.min(self.max_terms));
        for j in 0..self.max_terms {
            if j >= table.coefficients.len() {
                table = self.table.snapshot((2 * j).min(self.max_terms));
            }
            let scaled = ctx.mul(&table.coefficients[j], &power).value().into_repr();

            let term = ctx.mul(&scaled, &y_repr).value().into_repr();
            let magnitude = log2_magnitude(&term);
            largest_value = largest_value.max(magnitude);
            if magnitude < largest_value - cutoff {
                value_run += 1;
            } else {
                value_run = 0;
            }
            value = ctx.add(&value, &term).value().into_repr();

            if with_derivative {
                let weight = Repr::<2>::from(UBig::from(4 * j as u64 + 1));
                let term = ctx.mul(&scaled, &weight).value().into_repr();
                let magnitude = log2_magnitude(&term);
                largest_derivative = largest_derivative.max(magnitude);
                if magnitude < largest_derivative - cutoff {
                    derivative_run += 1;
                } else {
                    derivative_run = 0;
                }
                derivative = ctx.add(&derivative, &term).value().into_repr();
            }

            if value_run >= NEGLIGIBLE_RUN && derivative_run >= NEGLIGIBLE_RUN {
                let a1 = repr_from_f64(self.a1);
                let value = ctx.mul(&value, &a1).value().to_f64().value();
                let derivative = ctx.mul(&derivative, &a1).value().to_f64().value();
                return Ok((value, derivative));
            }
            power = ctx.mul(&power, &y4).value().into_repr();
        }
        Err(Error::NonConvergence {
            y,
            max_terms: self.max_terms,
        })
    }
}
