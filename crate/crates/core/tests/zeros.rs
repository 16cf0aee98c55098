mod common;

use std::f64::consts::PI;

use common::{reference_zeros, ORACLE_ZEROS};
use timewell::zeros::{
    find_zero, fit_prediction_constant, precision_for_zero_count, predicted_zero, zero_table,
    PredictionConstant, DEFAULT_ZERO_TOLERANCE,
};
use timewell::ThetaEvaluator;

#[test]
fn sixty_zero_table_against_printed_digits() {
    let eval = ThetaEvaluator::new(1.0, precision_for_zero_count(60), 4096).unwrap();
    let table = zero_table(60, &eval, PredictionConstant::FITTED).unwrap();
    let reference = reference_zeros();
    assert_eq!(table.len(), reference.len());
    for (record, row) in table.iter().zip(&reference) {
        assert_eq!(record.n, row.n);
        assert!(
            row.position.matches(record.position),
            "n = {}: {} vs {}",
            row.n,
            record.position,
            row.position.text
        );
        assert!(
            (record.predicted - row.predicted.value).abs() <= 1e-5,
            "n = {}",
            row.n
        );
    }
    assert_eq!(table[0].spacing, None);
    assert_eq!(table[0].relative_error, None);
    assert_eq!(
        (table[0].position, table[0].predicted, table[0].error),
        (0.0, 0.0, 0.0)
    );
}

#[test]
fn printed_differences_and_errors_follow_from_printed_positions() {
    // The printed difference and error columns were formed from the rounded
    // positions, so they are reproduced from those rather than from exact zeros.
    let reference = reference_zeros();
    for pair in reference.windows(2) {
        let spacing = pair[1].position.value - pair[0].position.value;
        let printed = pair[1].difference.as_ref().unwrap();
        assert!(
            (spacing - printed.value).abs() <= 2.0 * printed.ulp.max(pair[1].position.ulp),
            "n = {}",
            pair[1].n
        );
    }
    for row in reference.iter().filter(|r| r.n >= 2) {
        let predicted = predicted_zero(row.n, PredictionConstant::FITTED).unwrap();
        let error = row.position.value - predicted;
        assert!((error - row.error.value).abs() <= 1e-5, "n = {}", row.n);
        let relative = error / row.position.value;
        assert!(
            (relative - row.relative_error.value).abs() <= 1e-6,
            "n = {}",
            row.n
        );
    }
}

#[test]
fn oracle_zeros() {
    let eval = ThetaEvaluator::new(1.0, precision_for_zero_count(61), 4096).unwrap();
    for (n, expected) in ORACLE_ZEROS {
        let z = find_zero(n, &eval, DEFAULT_ZERO_TOLERANCE).unwrap();
        assert!(
            (z - expected).abs() <= 1e-10,
            "z_{n} = {z}, expected {expected}"
        );
    }
}

#[test]
fn fitted_constant_from_printed_predictions() {
    let rows: Vec<(u32, f64)> = reference_zeros()
        .iter()
        .filter(|r| r.n >= 2)
        .map(|r| (r.n, r.predicted.value))
        .collect();
    let c = fit_prediction_constant(&rows).unwrap().value();
    assert!(
        (c - PredictionConstant::FITTED.value()).abs() <= 1e-6,
        "c = {c}"
    );
    assert!((c - PredictionConstant::SQRT_PI.value()).abs() > 0.3);
}

#[test]
fn spacing_shrinks_and_squared_spacing_approaches_four_pi() {
    let eval = ThetaEvaluator::new(1.0, precision_for_zero_count(60), 4096).unwrap();
    let table = zero_table(60, &eval, PredictionConstant::FITTED).unwrap();
    let spacings: Vec<f64> = table.iter().filter_map(|r| r.spacing).collect();
    assert_eq!(spacings.len(), 59);
    assert!(spacings.windows(2).all(|w| w[1] < w[0]));

    let squared: Vec<f64> = table
        .windows(2)
        .map(|w| w[1].position.powi(2) - w[0].position.powi(2))
        .collect();
    assert!(squared.windows(2).all(|w| w[0] < w[1]));
    assert!(squared.iter().all(|&d| d < 4.0 * PI));
    assert!(4.0 * PI - squared[58] < 0.01);

    // Relative errors against the fitted prediction shrink from row 3 on.
    let magnitudes: Vec<f64> = table[2..]
        .iter()
        .map(|r| r.relative_error.unwrap().abs())
        .collect();
    assert!(magnitudes.windows(2).all(|w| w[1] < w[0]));
    assert!((magnitudes[0] - 1.45e-3).abs() < 1e-5);
    // The printed 8.84e-5 at n = 60 comes from the rounded position 27.2001.
    assert!((magnitudes[57] - 8.727e-5).abs() < 1e-7);
}
