//! Exact series coefficients of the odd solution.
//!
//! Substituting `Θ(y) = Σ_j c_j y^(4j+1)` into `Θ'' + (y²/4) Θ = 0` gives
//! `(4j+1)(4j) c_j = -c_{j-1} / 4`, so the only non-zero powers are `4j+1`
//! and
//!
//! ```text
//! c_j = (-1)^j a₁ / (16^j · j! · 5·9·13···(4j+1))
//! ```
//!
//! The denominators grow super-exponentially; they are kept as exact big
//! integers and only rounded when an evaluator converts them to its working
//! precision.

use dashu_int::{IBig, UBig};
use dashu_ratio::RBig;

use crate::error::{Error, Result};

/// Largest coefficient index accepted by [`coefficient`].
///
/// The denominator of `c_j` has about `2 j log10 j` decimal digits; past this
/// index the exact value stops being useful and costs real memory.
pub const COEFFICIENT_INDEX_LIMIT: u64 = 1 << 16;

/// One term `c_j · y^power` of the series, with `c_j` as an exact multiple of `a₁`.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesTerm {
    pub j: u64,
    pub power: u64,
    pub coefficient: RBig,
}

/// The integer `16·j·(4j+1)` linking `c_{j-1}` to `-c_j`.
pub(crate) fn recurrence_factor(j: u64) -> u64 {
    debug_assert!((1..=COEFFICIENT_INDEX_LIMIT).contains(&j));
    16 * j * (4 * j + 1)
}

fn check_index(j: u64) -> Result<()> {
    if j > COEFFICIENT_INDEX_LIMIT {
        return Err(Error::CapacityExceeded {
            index: j,
            limit: COEFFICIENT_INDEX_LIMIT,
        });
    }
    Ok(())
}

/// Exact denominator `16^j · j! · 5·9···(4j+1)` of `c_j / a₁`.
pub fn denominator(j: u64) -> Result<UBig> {
    check_index(j)?;
    let mut den = UBig::ONE;
    for i in 1..=j {
        den *= UBig::from(recurrence_factor(i));
    }
    Ok(den)
}

/// The coefficient of `y^(4j+1)` as an exact rational multiple of `a₁`.
pub fn coefficient(j: u64) -> Result<RBig> {
    let den = denominator(j)?;
    let num = if j.is_multiple_of(2) {
        IBig::ONE
    } else {
        IBig::NEG_ONE
    };
    Ok(RBig::from_parts(num, den))
}

/// Iterator over the exact series terms, built incrementally by the recurrence.
#[derive(Debug, Clone)]
pub struct SeriesTerms {
    next_j: u64,
    current: RBig,
}

/// All series terms starting from `j = 0`, as multiples of `a₁`.
pub fn series_terms() -> SeriesTerms {
    SeriesTerms {
        next_j: 0,
        current: RBig::ONE,
    }
}

impl Iterator for SeriesTerms {
    type Item = SeriesTerm;

    fn next(&mut self) -> Option<SeriesTerm> {
        let j = self.next_j;
        if j > COEFFICIENT_INDEX_LIMIT {
            return None;
        }
        if j > 0 {
            let factor = RBig::from(recurrence_factor(j));
            self.current = -(&self.current / factor);
        }
        self.next_j += 1;
        Some(SeriesTerm {
            j,
            power: 4 * j + 1,
            coefficient: self.current.clone(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn leading_coefficients() {
        assert_eq!(coefficient(0).unwrap(), RBig::ONE);
        assert_eq!(
            coefficient(1).unwrap(),
            RBig::from_parts(IBig::NEG_ONE, UBig::from(80u32))
        );
        assert_eq!(
            coefficient(2).unwrap(),
            RBig::from_parts(IBig::ONE, UBig::from(23040u32))
        );
    }

    #[test]
    fn iterator_matches_closed_form() {
        for term in series_terms().take(40) {
            assert_eq!(term.power, 4 * term.j + 1);
            assert_eq!(term.coefficient, coefficient(term.j).unwrap());
        }
    }

    #[test]
    fn capacity_error_past_limit() {
        let err = coefficient(COEFFICIENT_INDEX_LIMIT + 1).unwrap_err();
        assert!(matches!(err, Error::CapacityExceeded { .. }));
    }
}
