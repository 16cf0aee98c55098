#![allow(dead_code)]

use std::path::PathBuf;

/// A number as printed in a reference table, with the size of one unit in
/// its last printed digit.
#[derive(Debug, Clone, PartialEq)]
pub struct Printed {
    pub text: String,
    pub value: f64,
    pub ulp: f64,
}

impl Printed {
    pub fn parse(text: &str) -> Printed {
        let text = text.trim();
        let (mantissa, exponent) = match text.split_once(['e', 'E']) {
            Some((m, e)) => (m, e.parse::<i32>().unwrap()),
            None => (text, 0),
        };
        let decimals = mantissa.split_once('.').map_or(0, |(_, frac)| frac.len()) as i32;
        Printed {
            text: text.to_string(),
            value: text.parse().unwrap(),
            ulp: 10f64.powi(exponent - decimals),
        }
    }

    /// Within one unit of the last printed digit.
    pub fn matches(&self, x: f64) -> bool {
        (x - self.value).abs() <= self.ulp * (1.0 + 1e-9)
    }

    /// Distance from `x` in units of the last printed digit.
    pub fn ulps_from(&self, x: f64) -> f64 {
        (x - self.value).abs() / self.ulp
    }
}

fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn read_tsv(name: &str) -> Vec<csv::StringRecord> {
    csv::ReaderBuilder::new()
        .delimiter(b'\t')
        .from_path(data_path(name))
        .unwrap()
        .records()
        .map(Result::unwrap)
        .collect()
}

#[derive(Debug, Clone)]
pub struct ZeroRow {
    pub n: u32,
    pub position: Printed,
    pub difference: Option<Printed>,
    pub predicted: Printed,
    pub error: Printed,
    pub relative_error: Printed,
}

/// The printed 60-row zero table.
pub fn reference_zeros() -> Vec<ZeroRow> {
    read_tsv("reference_zeros.tsv")
        .iter()
        .map(|r| ZeroRow {
            n: r[0].parse().unwrap(),
            position: Printed::parse(&r[1]),
            difference: (!r[2].is_empty()).then(|| Printed::parse(&r[2])),
            predicted: Printed::parse(&r[3]),
            error: Printed::parse(&r[4]),
            relative_error: Printed::parse(&r[5]),
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct ExtremumRow {
    pub maximum: bool,
    pub y: Printed,
    pub value: Printed,
    pub predicted: Printed,
    pub error: Printed,
}

/// The printed 7 minima followed by the 7 maxima.
pub fn reference_extrema() -> Vec<ExtremumRow> {
    read_tsv("reference_extrema.tsv")
        .iter()
        .map(|r| ExtremumRow {
            maximum: &r[0] == "maximum",
            y: Printed::parse(&r[1]),
            value: Printed::parse(&r[2]),
            predicted: Printed::parse(&r[3]),
            error: Printed::parse(&r[4]),
        })
        .collect()
}

/// Zeros computed to mpmath at 130 digits, a₁ = 1.
pub const ORACLE_ZEROS: [(u32, f64); 5] = [
    (2, 3.335_198_779_08),
    (3, 4.860_511_371_8),
    (4, 6.014_111_293_81),
    (60, 27.200_130_465_4),
    (61, 27.430_155_560_8),
];
