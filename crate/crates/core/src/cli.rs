//! Command-line front end: tables and plot data as CSV or TSV.
//!
//! Every number is written with nine significant digits and no trimming, so
//! identical runs produce byte-identical files.

use std::ffi::OsString;
use std::fmt;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::extrema::{extrema_from_zeros, DEFAULT_EXTREMUM_TOLERANCE};
use crate::gauge_check::{
    density_invariance, energy_gauge_residual, energy_wavefunction, gauged_time_residual,
    time_wavefunction, GaugeFunction,
};
use crate::spectrum::{uncertainty_product, ApproxDenominator, PhysicalParams, TimeSpectrum};
use crate::theta_series::{
    required_precision, ThetaEvaluator, DEFAULT_MAX_TERMS, UNIT_ENVELOPE_A1,
};
use crate::zeros::{
    precision_for_zero_count, records_from_positions, zero_positions, PredictionConstant,
    DEFAULT_ZERO_TOLERANCE,
};

/// Relative residual a gauge check must stay under.
pub const GAUGE_TOLERANCE: f64 = 1e-5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Tsv,
}

impl Format {
    fn delimiter(self) -> u8 {
        match self {
            Format::Csv => b',',
            Format::Tsv => b'\t',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PlotKind {
    Theta,
    ZeroSpacing,
    RelativeError,
}

/// Value of `Θ'(0)`: a number, or `unit-envelope` for extrema tending to `±2/√y`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Normalization(pub f64);

impl FromStr for Normalization {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "unit-envelope" {
            return Ok(Normalization(UNIT_ENVELOPE_A1));
        }
        let a1: f64 = s
            .parse()
            .map_err(|_| format!("expected a number or `unit-envelope`, got `{s}`"))?;
        if !a1.is_finite() || a1 == 0.0 {
            return Err(format!("a1 must be finite and non-zero, got {a1}"));
        }
        Ok(Normalization(a1))
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "timewell",
    version,
    about = "Time eigenvalues of the infinite square well"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: CommandArgs,

    /// Number of rows (zeros, extrema or eigenvalues); per-command default.
    #[arg(long, global = true)]
    pub count: Option<u32>,

    /// Working precision in decimal digits.
    #[arg(long, global = true)]
    pub precision: Option<u32>,

    /// Constant c in the predicted zero sqrt(4(n-1)pi - c); default sqrt(pi).
    #[arg(long, global = true)]
    pub predicted_constant: Option<f64>,

    #[arg(long = "m", global = true, default_value_t = 1.0)]
    pub mass: f64,

    #[arg(long = "L", global = true, default_value_t = 1.0)]
    pub length: f64,

    #[arg(long, global = true, default_value_t = 1.0)]
    pub hbar: f64,

    /// Θ'(0): a number or `unit-envelope`.
    #[arg(long, global = true, default_value = "1")]
    pub a1: Normalization,

    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Clone, Subcommand)]
pub enum CommandArgs {
    /// Zero table: position, spacing, prediction and errors.
    Zeros,
    /// Maxima and minima with the ±2/sqrt(y) envelope.
    Extrema,
    /// Time eigenvalues tau_n and their approximations.
    Spectrum,
    /// E_1 tau_2 / hbar from the computed second zero.
    Uncertainty,
    /// Finite-difference residuals of the gauged eigenvalue equations.
    GaugeCheck {
        /// Grid step, in units of L.
        #[arg(long, default_value_t = 1e-3)]
        grid_step: f64,
    },
    /// Two-column plot data.
    Plot {
        #[arg(long, value_enum)]
        what: PlotKind,
        /// Upper end of the Θ range.
        #[arg(long, default_value_t = 30.0)]
        y_max: f64,
        #[arg(long, default_value_t = 301)]
        samples: usize,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub enum Command {
    Zeros,
    Extrema,
    Spectrum,
    Uncertainty,
    GaugeCheck {
        grid_step: f64,
    },
    Plot {
        what: PlotKind,
        y_max: f64,
        samples: usize,
    },
}

/// A validated command line.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub count: u32,
    pub precision: u32,
    pub predicted_constant: PredictionConstant,
    pub params: PhysicalParams,
    pub a1: f64,
    pub output_path: Option<PathBuf>,
    pub format: Format,
}

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Numeric(Error),
    Io(io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numeric(_) => 3,
            CliError::Io(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "configuration error: {msg}"),
            CliError::Numeric(err) => write!(f, "numerical failure: {err}"),
            CliError::Io(err) => write!(f, "I/O error: {err}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        match err {
            Error::Domain(msg) => CliError::Config(msg),
            other => CliError::Numeric(other),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(err: io::Error) -> Self {
        CliError::Io(err)
    }
}

impl From<csv::Error> for CliError {
    fn from(err: csv::Error) -> Self {
        match err.into_kind() {
            csv::ErrorKind::Io(err) => CliError::Io(err),
            other => CliError::Io(io::Error::other(format!("{other:?}"))),
        }
    }
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self, CliError> {
        let command = match cli.command {
            CommandArgs::Zeros => Command::Zeros,
            CommandArgs::Extrema => Command::Extrema,
            CommandArgs::Spectrum => Command::Spectrum,
            CommandArgs::Uncertainty => Command::Uncertainty,
            CommandArgs::GaugeCheck { grid_step } => {
                if !(grid_step > 0.0 && grid_step < 0.1) {
                    return Err(CliError::Config(format!(
                        "grid step must be in (0, 0.1), got {grid_step}"
                    )));
                }
                Command::GaugeCheck { grid_step }
            }
            CommandArgs::Plot {
                what,
                y_max,
                samples,
            } => {
                if samples < 2 {
                    return Err(CliError::Config(format!(
                        "need at least 2 samples, got {samples}"
                    )));
                }
                if !(y_max > 0.0) || !y_max.is_finite() {
                    return Err(CliError::Config(format!(
                        "y-max must be positive, got {y_max}"
                    )));
                }
                Command::Plot {
                    what,
                    y_max,
                    samples,
                }
            }
        };
        let count = cli.count.unwrap_or(match command {
            Command::Extrema => 14,
            _ => 60,
        });
        if count == 0 {
            return Err(CliError::Config("count must be at least 1".into()));
        }
        let params = PhysicalParams::new(cli.mass, cli.length, cli.hbar)?;
        let predicted_constant = match cli.predicted_constant {
            Some(c) => PredictionConstant::new(c)?,
            None => PredictionConstant::SQRT_PI,
        };
        let required = match command {
            Command::Zeros | Command::Spectrum => precision_for_zero_count(count),
            Command::Extrema => precision_for_zero_count(count + 1),
            Command::Uncertainty => precision_for_zero_count(2),
            Command::GaugeCheck { .. } => required_precision(GAUGE_Y_RANGE.1),
            Command::Plot {
                what: PlotKind::Theta,
                y_max,
                ..
            } => required_precision(y_max),
            Command::Plot { .. } => precision_for_zero_count(count),
        };
        let precision = match cli.precision {
            Some(p) if p < required => {
                return Err(CliError::Config(format!(
                    "precision {p} is below the {required} digits this command needs"
                )))
            }
            Some(p) => p,
            None => required,
        };
        Ok(RunConfig {
            command,
            count,
            precision,
            predicted_constant,
            params,
            a1: cli.a1.0,
            output_path: cli.out,
            format: cli.format,
        })
    }

    pub fn parse_from<I, T>(args: I) -> Result<Self, CliError>
    where
        I: IntoIterator<Item = T>,
        T: Into<OsString> + Clone,
    {
        let cli = Cli::try_parse_from(args).map_err(|e| CliError::Config(e.to_string()))?;
        Self::from_cli(cli)
    }

    fn evaluator(&self) -> Result<ThetaEvaluator, CliError> {
        Ok(ThetaEvaluator::new(
            self.a1,
            self.precision,
            DEFAULT_MAX_TERMS,
        )?)
    }
}

/// `y` range of the time-equation check.
const GAUGE_Y_RANGE: (f64, f64) = (0.1, 10.0);

/// Nine significant digits; exact zero as `0`.
///
/// Plain decimal for magnitudes in `[1e-4, 1e9)`, scientific otherwise.
pub fn format_number(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let sci = format!("{v:.8e}");
    let (mantissa, exponent) = sci
        .split_once('e')
        .expect("scientific format has an exponent");
    let exponent: i32 = exponent.parse().expect("integer exponent");
    if !(-4..9).contains(&exponent) {
        return sci;
    }
    let (sign, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => ("-", rest),
        None => ("", mantissa),
    };
    let digits: String = mantissa.chars().filter(|c| *c != '.').collect();
    let body = if exponent < 0 {
        format!("0.{}{}", "0".repeat((-exponent - 1) as usize), digits)
    } else {
        let split = exponent as usize + 1;
        if split >= digits.len() {
            format!("{digits}{}", "0".repeat(split - digits.len()))
        } else {
            format!("{}.{}", &digits[..split], &digits[split..])
        }
    };
    format!("{sign}{body}")
}

fn optional(v: Option<f64>) -> String {
    v.map(format_number).unwrap_or_default()
}

/// Generates the output of `config` into `out`.
pub fn write_output<W: Write>(config: &RunConfig, out: W) -> Result<(), CliError> {
    if config.command == Command::Uncertainty {
        return write_uncertainty(config, out);
    }
    let mut writer = csv::WriterBuilder::new()
        .delimiter(config.format.delimiter())
        .from_writer(out);
    match &config.command {
        Command::Zeros => {
            let eval = config.evaluator()?;
            let positions = zero_positions(config.count, &eval, DEFAULT_ZERO_TOLERANCE)?;
            writer.write_record([
                "n",
                "zero_position",
                "difference",
                "predicted",
                "error",
                "relative_error",
            ])?;
            for r in records_from_positions(&positions, config.predicted_constant)? {
                writer.write_record([
                    r.n.to_string(),
                    format_number(r.position),
                    optional(r.spacing),
                    format_number(r.predicted),
                    format_number(r.error),
                    optional(r.relative_error),
                ])?;
            }
        }
        Command::Extrema => {
            let eval = config.evaluator()?;
            let zeros = zero_positions(config.count + 1, &eval, DEFAULT_ZERO_TOLERANCE)?;
            writer.write_record(["k", "kind", "y", "value", "predicted", "error"])?;
            for r in extrema_from_zeros(&zeros, &eval, DEFAULT_EXTREMUM_TOLERANCE)? {
                writer.write_record([
                    r.k.to_string(),
                    r.kind.as_str().to_string(),
                    format_number(r.y),
                    format_number(r.value),
                    format_number(r.predicted),
                    format_number(r.error),
                ])?;
            }
        }
        Command::Spectrum => {
            let eval = config.evaluator()?;
            let zeros = zero_positions(config.count, &eval, DEFAULT_ZERO_TOLERANCE)?;
            let spectrum = TimeSpectrum::from_zeros(
                &zeros,
                config.params,
                config.predicted_constant,
                ApproxDenominator::PredictedZeroSquared,
            )?;
            writer.write_record(["n", "zero_position", "tau", "tau_approx"])?;
            for e in spectrum.entries {
                writer.write_record([
                    e.n.to_string(),
                    format_number(e.z_n),
                    format_number(e.tau),
                    format_number(e.tau_approx),
                ])?;
            }
        }
        Command::GaugeCheck { grid_step } => write_gauge_check(config, *grid_step, &mut writer)?,
        Command::Plot {
            what,
            y_max,
            samples,
        } => write_plot(config, *what, *y_max, *samples, &mut writer)?,
        Command::Uncertainty => unreachable!("handled above"),
    }
    writer.flush()?;
    Ok(())
}

fn write_uncertainty<W: Write>(config: &RunConfig, mut out: W) -> Result<(), CliError> {
    let eval = config.evaluator()?;
    let zeros = zero_positions(2, &eval, DEFAULT_ZERO_TOLERANCE)?;
    writeln!(out, "{}", format_number(uncertainty_product(zeros[1])?))?;
    out.flush()?;
    Ok(())
}

fn write_gauge_check<W: Write>(
    config: &RunConfig,
    grid_step: f64,
    writer: &mut csv::Writer<W>,
) -> Result<(), CliError> {
    let params = &config.params;
    let length = params.length();
    let steps = [grid_step, 0.5 * grid_step];
    writer.write_record([
        "check",
        "gauge",
        "index",
        "grid_step",
        "absolute",
        "relative",
        "reduction",
        "within_tolerance",
    ])?;
    let mut row = |check: &str,
                   g: &GaugeFunction,
                   index: &str,
                   h: f64,
                   abs: f64,
                   rel: f64,
                   reduction: Option<f64>| {
        writer.write_record([
            check.to_string(),
            g.name().to_string(),
            index.to_string(),
            format_number(h),
            format_number(abs),
            format_number(rel),
            optional(reduction),
            (rel <= GAUGE_TOLERANCE).to_string(),
        ])
    };

    for n in 1..=3u32 {
        let reference = energy_wavefunction(&GaugeFunction::zero(), n, params, grid_step * length)?;
        for g in GaugeFunction::builtin_suite() {
            let mut previous: Option<f64> = None;
            for &h in &steps {
                let r = energy_gauge_residual(&g, n, params, h * length)?;
                row(
                    "energy",
                    &g,
                    &n.to_string(),
                    h * length,
                    r.absolute,
                    r.relative,
                    previous.map(|p| p / r.absolute),
                )?;
                previous = Some(r.absolute);
            }
            let density =
                density_invariance(&reference, &reference.apply_gauge(&g, params.hbar()))?;
            row(
                "density",
                &g,
                &n.to_string(),
                grid_step * length,
                density,
                density,
                None,
            )?;
        }
    }

    // τ = mL²/ħ puts y = x/L, so the grid step is the same fraction of L.
    let tau = params.time_scale();
    let eval = config.evaluator()?;
    let zero = GaugeFunction::zero();
    let references = steps
        .iter()
        .map(|&h| time_wavefunction(&zero, tau, params, GAUGE_Y_RANGE, h * length, &eval))
        .collect::<Result<Vec<_>, _>>()?;
    for g in GaugeFunction::builtin_suite() {
        let mut previous: Option<f64> = None;
        for (reference, &h) in references.iter().zip(&steps) {
            let r = gauged_time_residual(reference, &g, tau, params)?;
            row(
                "time",
                &g,
                "1",
                h * length,
                r.absolute,
                r.relative,
                previous.map(|p| p / r.absolute),
            )?;
            previous = Some(r.absolute);
        }
        let density = density_invariance(
            &references[0],
            &references[0].apply_gauge(&g, params.hbar()),
        )?;
        row(
            "density",
            &g,
            "time",
            grid_step * length,
            density,
            density,
            None,
        )?;
    }
    Ok(())
}

fn write_plot<W: Write>(
    config: &RunConfig,
    what: PlotKind,
    y_max: f64,
    samples: usize,
    writer: &mut csv::Writer<W>,
) -> Result<(), CliError> {
    let eval = config.evaluator()?;
    match what {
        PlotKind::Theta => {
            writer.write_record(["y", "theta"])?;
            let last = samples - 1;
            for i in 0..samples {
                let y = if i == last {
                    y_max
                } else {
                    y_max * i as f64 / last as f64
                };
                writer.write_record([format_number(y), format_number(eval.theta(y)?)])?;
            }
        }
        PlotKind::ZeroSpacing | PlotKind::RelativeError => {
            let positions = zero_positions(config.count, &eval, DEFAULT_ZERO_TOLERANCE)?;
            let records = records_from_positions(&positions, config.predicted_constant)?;
            let (header, pick): (_, fn(&crate::zeros::ZeroRecord) -> Option<f64>) = match what {
                PlotKind::ZeroSpacing => ("spacing", |r| r.spacing),
                _ => ("relative_error", |r| r.relative_error),
            };
            writer.write_record(["n", header])?;
            for r in &records {
                if let Some(v) = pick(r) {
                    writer.write_record([r.n.to_string(), format_number(v)])?;
                }
            }
        }
    }
    Ok(())
}

/// Runs `config`, writing to its output file or standard output.
pub fn run(config: &RunConfig) -> Result<(), CliError> {
    match &config.output_path {
        Some(path) => {
            let mut buffer = Vec::new();
            write_output(config, &mut buffer)?;
            let mut file = BufWriter::new(File::create(path)?);
            file.write_all(&buffer)?;
            file.flush()?;
            Ok(())
        }
        None => write_output(config, io::stdout().lock()),
    }
}

/// Parses `args`, runs, and returns the process exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 2 } else { 0 };
            let _ = err.print();
            return code;
        }
    };
    match RunConfig::from_cli(cli).and_then(|config| run(&config)) {
        Ok(()) => 0,
        Err(err) => {
            eprintln!("timewell: {err}");
            err.exit_code()
        }
    }
}
