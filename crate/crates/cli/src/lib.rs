//! Batch front end: load or generate states, run a check family and render
//! the reports as JSON Lines or CSV.
//!
//! Commands return their rendered output together with an exit code, so the
//! binary is a thin wrapper and the same byte stream can be tested in-process.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::PathBuf;
use std::str::FromStr;

use qudit_ineq::entropy::{improved_chain_check, permutation_scan, subadditivity_check};
use qudit_ineq::matcore::ComplexMatrix;
use qudit_ineq::random::trial_seed;
use qudit_ineq::report::{InequalityReport, MetaValue};
use qudit_ineq::states::{named_state, random_density, validate, MatrixRecord, ValidationReport, STATE_TOL};
use qudit_ineq::tomography::{
    information_chain, min_tomographic_entropy, AxisDirection, InformationSummary, OptimizerConfig, QuadratureOrder,
};
use qudit_ineq::{von_neumann, DensityMatrix, IndexCoding, Measure, StateLabel};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::ser::Formatter;
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("i/o error on {path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("cannot parse {what}: {message}")]
    Parse { what: String, message: String },
    #[error("unknown family `{0}` (expected subadditivity, permutation_scan, improved_chain or tomo_chain)")]
    UnknownFamily(String),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] qudit_ineq::Error),
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Validate,
    Check,
    Tomo,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Subadditivity,
    PermutationScan,
    ImprovedChain,
    TomoChain,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Subadditivity => "subadditivity",
            Family::PermutationScan => "permutation_scan",
            Family::ImprovedChain => "improved_chain",
            Family::TomoChain => "tomo_chain",
        }
    }
}

impl FromStr for Family {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        match s {
            "subadditivity" => Ok(Family::Subadditivity),
            "permutation_scan" => Ok(Family::PermutationScan),
            "improved_chain" => Ok(Family::ImprovedChain),
            "tomo_chain" => Ok(Family::TomoChain),
            other => Err(CliError::UnknownFamily(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(CliError::Parse {
                what: "format".into(),
                message: format!("`{other}` is neither json nor csv"),
            }),
        }
    }
}

/// A reproducible random ensemble; trial `i` is drawn from
/// [`trial_seed`]`(seed, i)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnsembleSpec {
    pub count: usize,
    pub dim: usize,
    pub rank: usize,
    pub measure: Measure,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum StateSource {
    /// JSON file holding one matrix record or an array of them.
    Input(PathBuf),
    Label(StateLabel),
    Ensemble(EnsembleSpec),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub source: StateSource,
    pub coding: IndexCoding,
    pub family: Option<Family>,
    pub tolerance: f64,
    pub quadrature: QuadratureOrder,
    pub optimizer: OptimizerConfig,
    /// Axes for the fixed-axis information bound.
    pub axes: (AxisDirection, AxisDirection),
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(command: Command, source: StateSource) -> Self {
        Self {
            command,
            source,
            coding: IndexCoding::TwoQubit,
            family: None,
            tolerance: qudit_ineq::report::DEFAULT_TOL,
            quadrature: QuadratureOrder::default(),
            optimizer: OptimizerConfig::default(),
            axes: (AxisDirection::Z, AxisDirection::Z),
            format: OutputFormat::Json,
            out: None,
        }
    }

    pub fn check(&self) -> CliResult<()> {
        if !self.tolerance.is_finite() || self.tolerance <= 0.0 {
            return Err(CliError::Usage(format!("tolerance must be positive, got {}", self.tolerance)));
        }
        if let StateSource::Ensemble(e) = &self.source {
            if e.count == 0 {
                return Err(CliError::Usage("ensemble count must be positive".into()));
            }
        }
        if !self.optimizer.step_tol.is_finite() || self.optimizer.step_tol <= 0.0 {
            return Err(CliError::Usage("step tolerance must be positive".into()));
        }
        QuadratureOrder::new(self.quadrature.n_theta, self.quadrature.n_phi)?;
        Ok(())
    }
}

/// Rendered command result.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    /// Report stream; for JSON the last line is the summary object.
    pub output: Vec<u8>,
    /// Summary object, also printed on stderr for CSV output.
    pub summary: Value,
    pub exit_code: i32,
}

/// Writes every float with 17 significant digits.
#[derive(Debug, Clone, Copy, Default)]
pub struct RoundTripFormatter;

impl Formatter for RoundTripFormatter {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        write!(writer, "{:.16e}", value as f64)
    }
}

/// One JSON line with [`RoundTripFormatter`].
pub fn json_line<T: Serialize>(value: &T, out: &mut Vec<u8>) {
    let mut ser = serde_json::Serializer::with_formatter(&mut *out, RoundTripFormatter);
    value.serialize(&mut ser).expect("in-memory JSON serialization");
    out.push(b'\n');
}

fn real(x: f64) -> String {
    format!("{x:.16e}")
}

/// A state with its position in the input.
struct Trial<T> {
    index: usize,
    state: T,
}

fn read_records(path: &PathBuf) -> CliResult<Vec<MatrixRecord>> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let parse_err = |e: serde_json::Error| CliError::Parse {
        what: path.display().to_string(),
        message: e.to_string(),
    };
    let value: Value = serde_json::from_str(&text).map_err(parse_err)?;
    match value {
        Value::Array(_) => serde_json::from_value(value).map_err(parse_err),
        other => Ok(vec![serde_json::from_value(other).map_err(parse_err)?]),
    }
}

fn raw_matrices(source: &StateSource) -> CliResult<Vec<(ComplexMatrix, Vec<usize>)>> {
    match source {
        StateSource::Input(path) => read_records(path)?
            .iter()
            .map(|r| r.to_matrix().map_err(CliError::from))
            .collect(),
        _ => Ok(states(source)?
            .into_iter()
            .map(|t| (t.state.matrix().clone(), t.state.dims().to_vec()))
            .collect()),
    }
}

fn states(source: &StateSource) -> CliResult<Vec<Trial<DensityMatrix>>> {
    let list: Vec<DensityMatrix> = match source {
        StateSource::Input(path) => read_records(path)?
            .iter()
            .map(|r| r.to_state())
            .collect::<qudit_ineq::Result<_>>()?,
        StateSource::Label(label) => vec![named_state(*label)?],
        StateSource::Ensemble(e) => (0..e.count)
            .into_par_iter()
            .map(|i| random_density(e.dim, e.rank, trial_seed(e.seed, i as u64), e.measure))
            .collect::<qudit_ineq::Result<_>>()?,
    };
    Ok(list
        .into_iter()
        .enumerate()
        .map(|(index, state)| Trial { index, state })
        .collect())
}

fn source_meta(config: &RunConfig) -> Value {
    match &config.source {
        StateSource::Input(p) => json!({ "input": p.display().to_string() }),
        StateSource::Label(l) => json!({ "state": l.to_string() }),
        StateSource::Ensemble(e) => json!({
            "ensemble": e.count,
            "dim": e.dim,
            "rank": e.rank,
            "measure": e.measure.to_string(),
            "seed": e.seed,
        }),
    }
}

fn write_output(config: &RunConfig, outcome: &Outcome) -> CliResult<()> {
    if let Some(path) = &config.out {
        fs::write(path, &outcome.output).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
    }
    Ok(())
}

/// Runs the configured command and writes to `config.out` when set.
pub fn run(config: &RunConfig) -> CliResult<Outcome> {
    config.check()?;
    let outcome = match config.command {
        Command::Validate => cmd_validate(config)?,
        Command::Check => cmd_check(config)?,
        Command::Tomo => cmd_tomo(config)?,
    };
    write_output(config, &outcome)?;
    Ok(outcome)
}

#[derive(Serialize)]
struct IndexedValidation<'a> {
    index: usize,
    #[serde(flatten)]
    report: &'a ValidationReport,
}

/// Validation report per input state; exit 0 iff all are valid.
pub fn cmd_validate(config: &RunConfig) -> CliResult<Outcome> {
    let matrices = raw_matrices(&config.source)?;
    let reports: Vec<ValidationReport> = matrices.par_iter().map(|(m, _)| validate(m, STATE_TOL)).collect();
    let invalid = reports.iter().filter(|r| !r.valid).count();
    let summary = json!({
        "command": "validate",
        "source": source_meta(config),
        "states": reports.len(),
        "invalid": invalid,
    });

    let mut output = Vec::new();
    match config.format {
        OutputFormat::Json => {
            for (index, report) in reports.iter().enumerate() {
                json_line(&IndexedValidation { index, report }, &mut output);
            }
            json_line(&json!({ "summary": summary }), &mut output);
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(&mut output);
            w.write_record(["index", "hermiticity_defect", "trace_defect", "min_eigenvalue", "valid"])
                .and_then(|_| {
                    for (i, r) in reports.iter().enumerate() {
                        w.write_record([
                            i.to_string(),
                            real(r.hermiticity_defect),
                            real(r.trace_defect),
                            real(r.min_eigenvalue),
                            r.valid.to_string(),
                        ])?;
                    }
                    w.flush().map_err(csv::Error::from)
                })
                .map_err(csv_error)?;
        }
    }
    Ok(Outcome {
        output,
        summary,
        exit_code: if invalid == 0 { EXIT_OK } else { EXIT_VIOLATION },
    })
}

fn csv_error(e: csv::Error) -> CliError {
    CliError::Io {
        path: "<csv output>".into(),
        source: io::Error::other(e),
    }
}

/// Scalars reported per state by the tomographic chain.
#[derive(Debug, Clone, Copy)]
struct TomoScalars {
    trial: usize,
    chain: InformationSummary,
    min_entropy: Option<f64>,
}

impl TomoScalars {
    fn to_json(self) -> Value {
        let (a1, a2) = self.chain.witness;
        let mut v = json!({
            "trial": self.trial,
            "i_q": self.chain.quantum,
            "i_t": self.chain.maximum,
            "i_avg": self.chain.averaged,
            "delta_i": self.chain.gap,
            "i_at_axes": self.chain.at_axes,
            "witness": { "theta1": a1.theta(), "phi1": a1.phi(), "theta2": a2.theta(), "phi2": a2.phi() },
        });
        if let Some(h) = self.min_entropy {
            v["h_min"] = json!(h);
        }
        v
    }
}

fn tomo_reports(
    rho: &DensityMatrix,
    trial: usize,
    config: &RunConfig,
    with_min_entropy: bool,
) -> CliResult<(Vec<InequalityReport>, TomoScalars)> {
    let chain = information_chain(rho, config.axes, &config.optimizer, config.quadrature, config.tolerance)?;
    let mut reports = chain.reports;
    let mut min_entropy = None;
    if with_min_entropy {
        let (h, _) = min_tomographic_entropy(rho, &config.optimizer)?;
        reports.push(
            InequalityReport::greater_equal("min_tomographic_entropy", h, von_neumann(rho)?, config.tolerance)
                .with_meta("probes", config.optimizer.probes),
        );
        min_entropy = Some(h);
    }
    Ok((
        reports,
        TomoScalars {
            trial,
            chain: chain.summary,
            min_entropy,
        },
    ))
}

fn family_reports(
    rho: &DensityMatrix,
    trial: usize,
    family: Family,
    config: &RunConfig,
) -> CliResult<(Vec<InequalityReport>, Option<TomoScalars>)> {
    Ok(match family {
        Family::Subadditivity => (vec![subadditivity_check(rho, config.coding)?], None),
        Family::PermutationScan => (permutation_scan(rho, config.coding)?, None),
        Family::ImprovedChain => (improved_chain_check(rho)?, None),
        Family::TomoChain => {
            let (r, s) = tomo_reports(rho, trial, config, false)?;
            (r, Some(s))
        }
    })
}

fn evaluate(
    config: &RunConfig,
    per_state: impl Fn(&DensityMatrix, usize) -> CliResult<(Vec<InequalityReport>, Option<TomoScalars>)> + Sync,
) -> CliResult<(Vec<InequalityReport>, Vec<TomoScalars>)> {
    let trials = states(&config.source)?;
    let results: Vec<(Vec<InequalityReport>, Option<TomoScalars>)> = trials
        .par_iter()
        .map(|t| {
            let (reports, scalars) = per_state(&t.state, t.index)?;
            let reports = reports
                .into_iter()
                .map(|r| r.with_tolerance(config.tolerance).with_meta("trial", t.index))
                .collect();
            Ok((reports, scalars))
        })
        .collect::<CliResult<_>>()?;
    let mut reports = Vec::new();
    let mut scalars = Vec::new();
    for (r, s) in results {
        reports.extend(r);
        scalars.extend(s);
    }
    Ok((reports, scalars))
}

fn render_reports(
    command: &str,
    config: &RunConfig,
    family: Family,
    reports: &[InequalityReport],
    scalars: &[TomoScalars],
) -> CliResult<Outcome> {
    let violations = reports.iter().filter(|r| !r.holds).count();
    // min_by keeps the first of equal minima
    let worst = reports.iter().min_by(|a, b| a.slack.total_cmp(&b.slack));
    let mut summary = json!({
        "command": command,
        "family": family.name(),
        "coding": config.coding.name(),
        "source": source_meta(config),
        "tolerance": config.tolerance,
        "reports": reports.len(),
        "violations": violations,
    });
    if let Some(w) = worst {
        summary["min_slack"] = json!(w.slack);
        summary["argmin"] = json!({ "name": w.name, "meta": w.meta });
    }
    if !scalars.is_empty() {
        summary["scalars"] = Value::Array(scalars.iter().map(|s| s.to_json()).collect());
    }

    let mut output = Vec::new();
    match config.format {
        OutputFormat::Json => {
            for r in reports {
                json_line(r, &mut output);
            }
            json_line(&json!({ "summary": summary }), &mut output);
        }
        OutputFormat::Csv => write_csv(reports, &mut output).map_err(csv_error)?,
    }
    Ok(Outcome {
        output,
        summary,
        exit_code: if violations == 0 { EXIT_OK } else { EXIT_VIOLATION },
    })
}

/// `k=v;k=v` with keys in sorted order.
pub fn meta_string(meta: &std::collections::BTreeMap<String, MetaValue>) -> String {
    let mut s = String::new();
    for (i, (k, v)) in meta.iter().enumerate() {
        if i > 0 {
            s.push(';');
        }
        let _ = write!(s, "{k}={v}");
    }
    s
}

/// CSV with columns name, lhs, rhs, slack, holds, tolerance, meta.
pub fn write_csv(reports: &[InequalityReport], out: &mut Vec<u8>) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["name", "lhs", "rhs", "slack", "holds", "tolerance", "meta"])?;
    for r in reports {
        w.write_record([
            r.name.clone(),
            real(r.lhs),
            real(r.rhs),
            real(r.slack),
            r.holds.to_string(),
            real(r.tolerance),
            meta_string(&r.meta),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Runs one check family over every state.
pub fn cmd_check(config: &RunConfig) -> CliResult<Outcome> {
    let family = config
        .family
        .ok_or_else(|| CliError::Usage("check needs --family".into()))?;
    let (reports, scalars) = evaluate(config, |rho, i| family_reports(rho, i, family, config))?;
    render_reports("check", config, family, &reports, &scalars)
}

/// Tomographic chain plus the minimum-entropy bound, with the scalar
/// information measures in the summary.
pub fn cmd_tomo(config: &RunConfig) -> CliResult<Outcome> {
    let (reports, scalars) = evaluate(config, |rho, i| {
        let (r, s) = tomo_reports(rho, i, config, true)?;
        Ok((r, Some(s)))
    })?;
    render_reports("tomo", config, Family::TomoChain, &reports, &scalars)
}
