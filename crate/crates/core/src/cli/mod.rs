//! Library side of the `eigenbench` command line: ground-energy assembly,
//! the benchmark table, the figure sweep and the oscillator report.
//!
//! Every command produces a [`Table`], which renders either as CSV or as a
//! JSON array of string-valued records.

mod output;
mod svg;

use std::path::Path;

use rayon::prelude::*;
use thiserror::Error;

use crate::harmonium_rpm::{
    rpm_ground, EnergyResult, Method, OrderStep, RadialProblem, RpmConfig, RpmError,
};
use crate::harmonium_rr::{rr_ground_converged, RrError};
use crate::numerics::{BigReal, ParseRealError, Precision};
use crate::oscillator_exact::{exact_eigenvalue, OscillatorError, QuantumNumbers};
use crate::oscillator_variational::{solve_stationarity, variational_energy, VariationalPoint};

pub use output::{Format, Table};
pub use svg::render_svg;

/// `k` values of the benchmark table, in the published order.
pub const TABLE1_K: [&str; 14] = [
    "0.25", "0.23", "0.20", "0.18", "0.15", "0.10", "0.09", "0.05", "0.04", "0.026", "0.01",
    "0.004", "0.0013", "0.0012",
];

/// Target digits of the figure sweep.
pub const FIGURE_DIGITS: u32 = 12;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("spring constant k must be positive, got {0}")]
    InvalidK(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("cannot parse number: {0}")]
    Parse(#[from] ParseRealError),
    #[error("overlay {path}, line {line}: {reason}")]
    OverlayParseError {
        path: String,
        line: u64,
        reason: String,
    },
    #[error(transparent)]
    Rpm(#[from] RpmError),
    #[error(transparent)]
    Rr(#[from] RrError),
    #[error(transparent)]
    Oscillator(#[from] OscillatorError),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl CliError {
    /// 2 for bad input, 3 for solver non-convergence.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Rpm(
                RpmError::NoConvergence { .. } | RpmError::RootLost { .. } | RpmError::Seed(_),
            ) => 3,
            CliError::Rpm(_) => 2,
            CliError::Rr(RrError::InvalidBasisSize(_)) => 2,
            CliError::Rr(_) => 3,
            CliError::Oscillator(OscillatorError::NoConvergence | OscillatorError::NonMinimum) => 3,
            _ => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolverMethod {
    Rpm,
    Rr,
}

/// Working precision for a target: the explicit one if given, else
/// `max(50, 3 target)`.
pub fn working_precision(
    target_digits: u32,
    precision: Option<u32>,
) -> Result<Precision, CliError> {
    if target_digits == 0 {
        return Err(CliError::InvalidInput("--digits must be positive".into()));
    }
    match precision {
        None => Ok(Precision::for_target(target_digits)),
        Some(p) if p >= 3 * target_digits => Ok(Precision::digits(p)),
        Some(p) => Err(CliError::InvalidInput(format!(
            "--precision {p} is below three times the {target_digits} target digits"
        ))),
    }
}

/// Full ground energy `E₀ = √k (3/2 + ε₀)` at `λ = k^(-1/4)`, with
/// `ħ = m = e = 1`. The returned `value` is `E₀`; `orders_used` traces `ε₀`.
pub fn ground_energy(
    k: &BigReal,
    method: SolverMethod,
    target_digits: u32,
    p: Precision,
) -> Result<EnergyResult, CliError> {
    if !k.is_positive() {
        return Err(CliError::InvalidK(k.to_sig_string(6)));
    }
    let k = k.with_precision(p);
    let root_k = k.sqrt();
    let problem = RadialProblem::new(root_k.sqrt().recip())?;
    let (eps, certified_digits, method, orders_used) = match method {
        SolverMethod::Rpm => {
            let r = rpm_ground(
                &problem,
                &RpmConfig::new(target_digits).with_precision(p),
                None,
            )?;
            (r.value, r.certified_digits, r.method, r.orders_used)
        }
        SolverMethod::Rr => {
            let (v, d, steps) = rr_ground_converged(&problem, target_digits, p)?;
            let trace = steps
                .into_iter()
                .map(|s| OrderStep {
                    order: s.basis_size,
                    value: s.value,
                })
                .collect();
            (v, d, Method::Rr, trace)
        }
    };
    Ok(EnergyResult {
        value: root_k * (eps + BigReal::ratio(3, 2, p)),
        certified_digits,
        method,
        orders_used,
    })
}

#[derive(Debug)]
pub struct Table1Row {
    /// `k` as printed in the table.
    pub k_text: &'static str,
    pub k: BigReal,
    pub result: Result<EnergyResult, CliError>,
}

/// The fourteen benchmark rows by the Riccati–Padé method. Rows are solved
/// concurrently and returned in table order; a failing row carries its error.
pub fn table1(target_digits: u32, p: Precision) -> Result<Vec<Table1Row>, CliError> {
    if 3 * target_digits > p.decimal_digits() {
        return Err(CliError::InvalidInput(
            "target digits exceed a third of the working precision".into(),
        ));
    }
    let rows = TABLE1_K
        .par_iter()
        .map(|&k_text| {
            let k = BigReal::parse(k_text, p).expect("table constants parse");
            let result = ground_energy(&k, SolverMethod::Rpm, target_digits, p);
            Table1Row { k_text, k, result }
        })
        .collect();
    Ok(rows)
}

pub fn table1_table(rows: &[Table1Row], target_digits: u32) -> Table {
    let mut t = Table::new(&["k", "E0", "certified_digits"]);
    for row in rows {
        match &row.result {
            Ok(r) => t.push(vec![
                row.k_text.to_string(),
                r.value.to_sig_string(target_digits as usize),
                r.certified_digits.to_string(),
            ]),
            Err(_) => t.push(vec![row.k_text.to_string(), String::new(), "0".into()]),
        }
    }
    t
}

pub fn ground_table(k_text: &str, r: &EnergyResult, target_digits: u32) -> Table {
    let mut t = Table::new(&["k", "E0", "certified_digits", "method"]);
    t.push(vec![
        k_text.trim().to_string(),
        r.value.to_sig_string(target_digits as usize),
        r.certified_digits.to_string(),
        r.method.as_str().to_string(),
    ]);
    t
}

#[derive(Debug, Clone)]
pub struct CurveSample {
    pub k: BigReal,
    pub e0: BigReal,
}

#[derive(Debug, Clone)]
pub struct Figure {
    pub samples: Vec<CurveSample>,
    pub overlay: Option<Vec<(f64, f64)>>,
}

/// `samples` log-spaced values from `k_min` to `k_max`, both included.
pub fn log_grid(k_min: &BigReal, k_max: &BigReal, samples: usize) -> Vec<BigReal> {
    let lo = k_min.ln();
    let step = (k_max.ln() - &lo) / (samples as i64 - 1);
    (0..samples)
        .map(|i| match i {
            0 => k_min.clone(),
            i if i == samples - 1 => k_max.clone(),
            i => (&lo + &(&step * i as i64)).exp(),
        })
        .collect()
}

/// Ground-energy curve on a log-spaced grid, plus an optional external
/// curve read from a two-column CSV.
pub fn figure1(
    k_min: &BigReal,
    k_max: &BigReal,
    samples: usize,
    overlay: Option<&Path>,
    p: Precision,
) -> Result<Figure, CliError> {
    if samples < 2 {
        return Err(CliError::InvalidInput(
            "figure needs at least 2 samples".into(),
        ));
    }
    if !k_min.is_positive() {
        return Err(CliError::InvalidK(k_min.to_sig_string(6)));
    }
    if k_max <= k_min {
        return Err(CliError::InvalidInput("k_max must exceed k_min".into()));
    }
    let overlay = overlay.map(read_overlay).transpose()?;
    let p = p.max(Precision::for_target(FIGURE_DIGITS));
    let grid = log_grid(&k_min.with_precision(p), &k_max.with_precision(p), samples);
    let samples = grid
        .into_par_iter()
        .map(|k| {
            let e0 = ground_energy(&k, SolverMethod::Rpm, FIGURE_DIGITS, p)?.value;
            Ok(CurveSample { k, e0 })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(Figure { samples, overlay })
}

pub fn figure_table(fig: &Figure) -> Table {
    let mut t = Table::new(&["k", "E0"]);
    let d = FIGURE_DIGITS as usize;
    for s in &fig.samples {
        t.push(vec![s.k.to_sig_string(d), s.e0.to_sig_string(d)]);
    }
    t
}

/// Reads `k,E0` pairs; a non-numeric first record is taken as a header.
pub fn read_overlay(path: &Path) -> Result<Vec<(f64, f64)>, CliError> {
    let shown = path.display().to_string();
    let bad = |line: u64, reason: String| CliError::OverlayParseError {
        path: shown.clone(),
        line,
        reason,
    };
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| bad(0, e.to_string()))?;
    let mut out = Vec::new();
    for (i, rec) in reader.records().enumerate() {
        let rec = rec.map_err(|e| bad(i as u64 + 1, e.to_string()))?;
        let line = rec.position().map_or(i as u64 + 1, |p| p.line());
        if rec.iter().all(str::is_empty) {
            continue;
        }
        if rec.len() != 2 {
            return Err(bad(
                line,
                format!("expected 2 columns, found {}", rec.len()),
            ));
        }
        let parsed = (rec[0].parse::<f64>(), rec[1].parse::<f64>());
        match parsed {
            (Ok(k), Ok(e)) if k.is_finite() && e.is_finite() => out.push((k, e)),
            _ if out.is_empty() && i == 0 => {}
            _ => {
                return Err(bad(
                    line,
                    format!("non-numeric record `{},{}`", &rec[0], &rec[1]),
                ))
            }
        }
    }
    if out.is_empty() {
        return Err(bad(0, "no data rows".into()));
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct OscReport {
    /// `(j, n, ε_jn)`
    pub spectrum: Vec<(u32, u32, BigReal)>,
    pub point: VariationalPoint,
    pub energy: BigReal,
    /// `|W - ε₀₀|`
    pub gap: BigReal,
}

pub fn osc_report(lambda: &BigReal, j_max: u32, n_max: u32) -> Result<OscReport, CliError> {
    let p = lambda.precision();
    let mut spectrum = Vec::new();
    for j in 0..=j_max {
        for n in 0..=n_max {
            spectrum.push((j, n, exact_eigenvalue(QuantumNumbers::new(j, n), lambda)?));
        }
    }
    let point = solve_stationarity(lambda, &VariationalPoint::default_init(p), &p.tolerance(10))?;
    let energy = variational_energy(&point, lambda)?;
    let gap = (&energy - &exact_eigenvalue(QuantumNumbers::GROUND, lambda)?).abs();
    Ok(OscReport {
        spectrum,
        point,
        energy,
        gap,
    })
}

pub fn spectrum_table(r: &OscReport, digits: u32) -> Table {
    let mut t = Table::new(&["j", "n", "eps"]);
    for (j, n, e) in &r.spectrum {
        t.push(vec![
            j.to_string(),
            n.to_string(),
            e.to_sig_string(digits as usize),
        ]);
    }
    t
}

/// Values are rounded to `digits` decimal places, so the gap of an exact
/// optimum prints as zero.
pub fn variational_table(r: &OscReport, digits: u32) -> Table {
    let fixed = |x: &BigReal| x.to_fixed_string(digits as usize);
    let mut t = Table::new(&["alpha", "beta", "W", "abs_error"]);
    t.push(vec![
        fixed(&r.point.alpha),
        fixed(&r.point.beta),
        fixed(&r.energy),
        fixed(&r.gap),
    ]);
    t
}
