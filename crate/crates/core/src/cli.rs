//! Command-line front end.
//!
//! Four subcommands share one flag set:
//!
//! - `leakage-curve`: closed-system leakage `p(t)` for each requested `n` (CSV `n,t,leakage`).
//! - `error-vs-n`: operation error `1 − f` under collective dephasing plus a power-law fit.
//! - `closure-check`: Lie-closure dimension of the projected XY generators.
//! - `analytic-compare`: simulated integrated leakage against `T − (n/2) sin(2T/n)`.
//!
//! Flags may also come from a `key=value` file passed with `--config`; the
//! keys are the long flag names without dashes (`n-list=1,2,4`). Command-line
//! flags take precedence over the file.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::analysis::{analytic_total_population, fit_power_law, PowerLawFit};
use crate::codes::{standard_code, CodeSpace};
use crate::dynamics::{sweep_alternation, ExperimentConfig, ExperimentResult, InitialState};
use crate::error::Error;
use crate::universality::{all_pairs, check_encoded_universality};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_INVALID_CONFIG: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

pub const MIN_STEPS_PER_SEGMENT: usize = 10;

#[derive(Debug, Parser)]
#[command(
    name = "iontrap-dfs",
    version,
    about = "Alternating σxσx/σyσy pulses on collective-dephasing decoherence-free subspaces"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum CommandKind {
    LeakageCurve,
    ErrorVsN,
    ClosureCheck,
    AnalyticCompare,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-system leakage p(t) over one full operation for each n.
    LeakageCurve(RunArgs),
    /// Operation error 1 − f versus n under collective dephasing, with a power-law fit.
    ErrorVsN(RunArgs),
    /// Lie-closure dimension of the XY generators projected onto a qutrit code.
    ClosureCheck(RunArgs),
    /// Simulated integrated leakage against the closed-form population model.
    AnalyticCompare(RunArgs),
}

impl Command {
    pub fn kind(&self) -> CommandKind {
        match self {
            Command::LeakageCurve(_) => CommandKind::LeakageCurve,
            Command::ErrorVsN(_) => CommandKind::ErrorVsN,
            Command::ClosureCheck(_) => CommandKind::ClosureCheck,
            Command::AnalyticCompare(_) => CommandKind::AnalyticCompare,
        }
    }

    pub fn args(&self) -> &RunArgs {
        match self {
            Command::LeakageCurve(a)
            | Command::ErrorVsN(a)
            | Command::ClosureCheck(a)
            | Command::AnalyticCompare(a) => a,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Default, Args)]
pub struct RunArgs {
    /// key=value file with defaults for any of the flags below.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Comma-separated alternation counts, e.g. 1,2,4,8 or a range 1..64.
    #[arg(long = "n-list")]
    pub n_list: Option<String>,
    /// Collective dephasing rate γ in units of g.
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Coupling g = η²Ω²/Δ.
    #[arg(long)]
    pub g: Option<f64>,
    /// Total XY time T in units of 1/g.
    #[arg(long)]
    pub time: Option<f64>,
    /// Qubit pair driven by the pulses, e.g. 0,1.
    #[arg(long)]
    pub pair: Option<String>,
    /// Pairs for closure-check, e.g. "0,1;1,2" or "all".
    #[arg(long)]
    pub pairs: Option<String>,
    /// Code name: CI, CII, PAIR or QUBIT_CI.
    #[arg(long)]
    pub code: Option<String>,
    /// Initial state: a bitstring such as 001, or `plus` for (|001> + |010>)/√2.
    #[arg(long)]
    pub state: Option<String>,
    /// RK4 steps per pulse segment (>= 10).
    #[arg(long)]
    pub steps: Option<usize>,
    /// Smallest n included in the power-law fit.
    #[arg(long = "n-min")]
    pub n_min: Option<u32>,
    /// Output path; stdout when omitted or `-`.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Run the n-sweep on a single thread.
    #[arg(long)]
    pub serial: bool,
}

/// Fully resolved configuration of one CLI run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: CommandKind,
    pub n_values: Vec<usize>,
    pub gamma: f64,
    pub g: f64,
    pub total_time: f64,
    pub pair: (usize, usize),
    pub pairs: Vec<(usize, usize)>,
    pub code_name: String,
    pub rho0_name: String,
    pub steps_per_segment: usize,
    pub n_min: u32,
    pub output_path: Option<PathBuf>,
    pub format: Format,
    pub parallel: bool,
}

impl RunConfig {
    /// Defaults: γ = g = 1, T = π, pair (0, 1), code CI, state 001, n = 1..64.
    pub fn defaults(command: CommandKind) -> Self {
        Self {
            command,
            n_values: (1..=64).collect(),
            gamma: 1.0,
            g: 1.0,
            total_time: std::f64::consts::PI,
            pair: (0, 1),
            pairs: all_pairs(3),
            code_name: "CI".into(),
            rho0_name: "001".into(),
            steps_per_segment: crate::dynamics::DEFAULT_STEPS_PER_SEGMENT,
            n_min: 17,
            output_path: None,
            format: Format::Csv,
            parallel: true,
        }
    }

    /// Merges config-file values and flags over the defaults, then validates.
    pub fn resolve(command: &Command) -> Result<Self, CliError> {
        let args = command.args();
        let mut cfg = Self::defaults(command.kind());
        if let Some(path) = &args.config {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::Config(format!("cannot read config {}: {e}", path.display())))?;
            for (key, value) in parse_key_values(&text)? {
                cfg.apply(&key, &value)?;
            }
        }
        let flags: [(&str, Option<String>); 11] = [
            ("n-list", args.n_list.clone()),
            ("gamma", args.gamma.map(|v| v.to_string())),
            ("g", args.g.map(|v| v.to_string())),
            ("time", args.time.map(|v| v.to_string())),
            ("pair", args.pair.clone()),
            ("pairs", args.pairs.clone()),
            ("code", args.code.clone()),
            ("state", args.state.clone()),
            ("steps", args.steps.map(|v| v.to_string())),
            ("n-min", args.n_min.map(|v| v.to_string())),
            ("out", args.out.as_ref().map(|p| p.display().to_string())),
        ];
        for (key, value) in flags {
            if let Some(value) = value {
                cfg.apply(key, &value)?;
            }
        }
        if let Some(format) = args.format {
            cfg.format = format;
        }
        if args.serial {
            cfg.parallel = false;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    /// Sets one option from its textual `key=value` form.
    pub fn apply(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        let bad = |what: &str| CliError::Config(format!("invalid {key} value {value:?}: {what}"));
        let float = || value.parse::<f64>().map_err(|e| bad(&e.to_string()));
        match key {
            "n-list" => self.n_values = parse_n_list(value).map_err(|e| bad(&e))?,
            "gamma" => self.gamma = float()?,
            "g" => self.g = float()?,
            "time" => self.total_time = float()?,
            "pair" => self.pair = parse_pair(value).map_err(|e| bad(&e))?,
            "pairs" => {
                self.pairs = if value == "all" {
                    all_pairs(3)
                } else {
                    value
                        .split(';')
                        .map(parse_pair)
                        .collect::<Result<_, _>>()
                        .map_err(|e| bad(&e))?
                }
            }
            "code" => self.code_name = value.to_string(),
            "state" => self.rho0_name = value.to_string(),
            "steps" => self.steps_per_segment = value.parse().map_err(|_| bad("not an integer"))?,
            "n-min" => self.n_min = value.parse().map_err(|_| bad("not an integer"))?,
            "out" => {
                self.output_path = match value {
                    "" | "-" => None,
                    path => Some(PathBuf::from(path)),
                }
            }
            "format" => {
                self.format = Format::from_str(value, true).map_err(|e| bad(&e))?;
            }
            "serial" => self.parallel = !matches!(value, "true" | "1" | "yes"),
            other => return Err(CliError::Config(format!("unknown option {other:?}"))),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let fail = |msg: String| Err(CliError::Config(msg));
        if self.n_values.is_empty() || self.n_values.contains(&0) {
            return fail("n values must be a nonempty list of positive integers".into());
        }
        if self.steps_per_segment < MIN_STEPS_PER_SEGMENT {
            return fail(format!(
                "steps per segment must be >= {MIN_STEPS_PER_SEGMENT}, got {}",
                self.steps_per_segment
            ));
        }
        if !(self.total_time > 0.0 && self.total_time.is_finite()) {
            return fail(format!("total time must be positive, got {}", self.total_time));
        }
        if !(self.gamma >= 0.0 && self.gamma.is_finite()) {
            return fail(format!("gamma must be nonnegative, got {}", self.gamma));
        }
        if !(self.g.is_finite() && self.g != 0.0) {
            return fail(format!("g must be finite and nonzero, got {}", self.g));
        }
        if self.pairs.is_empty() {
            return fail("pairs must be nonempty".into());
        }
        self.code()?;
        self.state()?;
        Ok(())
    }

    pub fn code(&self) -> Result<CodeSpace, CliError> {
        standard_code(&self.code_name).map_err(CliError::from)
    }

    pub fn state(&self) -> Result<InitialState, CliError> {
        self.rho0_name.parse::<InitialState>().map_err(CliError::from)
    }

    fn experiment(&self, gamma: f64) -> Result<ExperimentConfig, CliError> {
        Ok(ExperimentConfig {
            n: 1,
            gamma,
            g: self.g,
            total_time: self.total_time,
            pair: self.pair,
            n_qubits: self.code()?.n_qubits(),
            steps_per_segment: self.steps_per_segment,
        })
    }

    fn sweep(&self, gamma: f64) -> Result<Vec<ExperimentResult>, CliError> {
        let code = self.code()?;
        let base = self.experiment(gamma)?;
        let rho0 = self.state()?.density(code.n_qubits())?;
        Ok(sweep_alternation(&base, &self.n_values, &rho0, &code, self.parallel)?)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("numerical failure: {0}")]
    Numerical(Error),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::StepTooLarge { .. }
            | Error::NotPsd { .. }
            | Error::NotHermitian { .. }
            | Error::LeakageOutOfRange(_)
            | Error::ClosureDidNotConverge(_)
            | Error::InsufficientPoints(_)
            | Error::NonPositiveValue { .. } => CliError::Numerical(e),
            other => CliError::Config(other.to_string()),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => EXIT_INVALID_CONFIG,
            CliError::Numerical(_) => EXIT_NUMERICAL,
            CliError::Io(_) => EXIT_IO,
        }
    }
}

/// Parses `key=value` lines; blank lines and `#` comments are skipped.
pub fn parse_key_values(text: &str) -> Result<Vec<(String, String)>, CliError> {
    text.lines()
        .enumerate()
        .map(|(k, line)| (k, line.trim()))
        .filter(|(_, line)| !line.is_empty() && !line.starts_with('#'))
        .map(|(k, line)| {
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::Config(format!("line {}: expected key=value", k + 1)))?;
            let key = key.trim().trim_start_matches("--");
            Ok((key.to_string(), value.trim().to_string()))
        })
        .collect()
}

/// `1,2,8` or `17..64` (inclusive) or a mix: `1,2,17..20`.
pub fn parse_n_list(s: &str) -> Result<Vec<usize>, String> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        if let Some((lo, hi)) = part.split_once("..") {
            let lo: usize = lo.trim().parse().map_err(|_| format!("bad range start in {part:?}"))?;
            let hi: usize = hi
                .trim()
                .trim_start_matches('=')
                .parse()
                .map_err(|_| format!("bad range end in {part:?}"))?;
            if lo > hi {
                return Err(format!("empty range {part:?}"));
            }
            out.extend(lo..=hi);
        } else {
            out.push(part.parse().map_err(|_| format!("bad integer {part:?}"))?);
        }
    }
    if out.is_empty() {
        return Err("empty list".into());
    }
    Ok(out)
}

pub fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected i,j in {s:?}"))?;
    let a = a.trim().parse().map_err(|_| format!("bad qubit index in {s:?}"))?;
    let b = b.trim().parse().map_err(|_| format!("bad qubit index in {s:?}"))?;
    Ok((a, b))
}

/// 17 significant digits, enough to round-trip any `f64`.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LeakageRow {
    pub n: usize,
    pub t: f64,
    pub leakage: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorRow {
    pub n: usize,
    pub one_minus_f: f64,
    pub integrated_leakage: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompareRow {
    pub n: usize,
    pub numeric_integrated_leakage: f64,
    pub analytic_total_population: f64,
    pub relative_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitSummary {
    pub exponent: f64,
    pub log_prefactor: f64,
    pub prefactor: f64,
    pub residual: f64,
    pub n_min: u32,
    pub n_max: u32,
    pub n_points: usize,
}

impl From<&PowerLawFit> for FitSummary {
    fn from(fit: &PowerLawFit) -> Self {
        Self {
            exponent: fit.exponent,
            log_prefactor: fit.log_prefactor,
            prefactor: fit.prefactor(),
            residual: fit.residual,
            n_min: fit.n_min,
            n_max: fit.n_max,
            n_points: fit.n_points,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorSweepSummary {
    pub gamma: f64,
    pub g: f64,
    pub total_time: f64,
    pub pair: (usize, usize),
    pub code: String,
    pub state: String,
    pub steps_per_segment: usize,
    pub fit_n_min: u32,
    pub fit: Option<FitSummary>,
    pub warning: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorSweep {
    pub rows: Vec<ErrorRow>,
    pub summary: ErrorSweepSummary,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClosureSummary {
    pub code: String,
    pub pairs: Vec<(usize, usize)>,
    pub closure_dimension: usize,
    pub universal: bool,
}

/// Closed-system (`γ = 0`) leakage at every RK4 step of the full operation.
pub fn cmd_leakage_curve(cfg: &RunConfig) -> Result<Vec<LeakageRow>, CliError> {
    Ok(cfg
        .sweep(0.0)?
        .into_iter()
        .flat_map(|r| {
            let n = r.n;
            r.times
                .into_iter()
                .zip(r.leakage_series)
                .map(move |(t, leakage)| LeakageRow { n, t, leakage })
        })
        .collect())
}

/// `1 − f` and integrated leakage for every `n`, with a power-law fit over `n >= n_min`.
pub fn cmd_error_vs_n(cfg: &RunConfig) -> Result<ErrorSweep, CliError> {
    let results = cfg.sweep(cfg.gamma)?;
    let rows: Vec<ErrorRow> = results
        .iter()
        .map(|r| ErrorRow {
            n: r.n,
            one_minus_f: r.one_minus_f,
            integrated_leakage: r.integrated_leakage,
        })
        .collect();

    let (fit, warning) = if cfg.gamma == 0.0 {
        (
            None,
            Some("gamma = 0: operation error is numerical noise only; fit refused (NonPositiveValue)".to_string()),
        )
    } else {
        let points: Vec<(u32, f64)> = rows.iter().map(|r| (r.n as u32, r.one_minus_f)).collect();
        match fit_power_law(&points, cfg.n_min) {
            Ok(fit) => (Some(FitSummary::from(&fit)), None),
            Err(e @ (Error::InsufficientPoints(_) | Error::NonPositiveValue { .. })) => {
                (None, Some(format!("fit refused: {e}")))
            }
            Err(e) => return Err(e.into()),
        }
    };

    Ok(ErrorSweep {
        rows,
        summary: ErrorSweepSummary {
            gamma: cfg.gamma,
            g: cfg.g,
            total_time: cfg.total_time,
            pair: cfg.pair,
            code: cfg.code_name.clone(),
            state: cfg.rho0_name.clone(),
            steps_per_segment: cfg.steps_per_segment,
            fit_n_min: cfg.n_min,
            fit,
            warning,
        },
    })
}

pub fn cmd_closure_check(cfg: &RunConfig) -> Result<ClosureSummary, CliError> {
    if !matches!(cfg.code_name.as_str(), "CI" | "CII") {
        return Err(CliError::Config(format!(
            "closure-check needs a qutrit code (CI or CII), got {}",
            cfg.code_name
        )));
    }
    let code = cfg.code()?;
    let report = check_encoded_universality(&code, &cfg.pairs)?;
    Ok(ClosureSummary {
        code: cfg.code_name.clone(),
        pairs: cfg.pairs.clone(),
        closure_dimension: report.closure_dimension,
        universal: report.is_full_su(code.dim()),
    })
}

pub fn cmd_analytic_compare(cfg: &RunConfig) -> Result<Vec<CompareRow>, CliError> {
    Ok(cfg
        .sweep(0.0)?
        .iter()
        .map(|r| {
            let analytic = analytic_total_population(cfg.total_time, r.n);
            CompareRow {
                n: r.n,
                numeric_integrated_leakage: r.integrated_leakage,
                analytic_total_population: analytic,
                relative_error: (r.integrated_leakage - analytic).abs() / analytic.abs(),
            }
        })
        .collect())
}

pub fn leakage_csv(rows: &[LeakageRow]) -> String {
    let mut s = String::from("n,t,leakage\n");
    for r in rows {
        let _ = writeln!(s, "{},{},{}", r.n, format_float(r.t), format_float(r.leakage));
    }
    s
}

pub fn error_csv(rows: &[ErrorRow]) -> String {
    let mut s = String::from("n,one_minus_f,integrated_leakage\n");
    for r in rows {
        let _ = writeln!(
            s,
            "{},{},{}",
            r.n,
            format_float(r.one_minus_f),
            format_float(r.integrated_leakage)
        );
    }
    s
}

pub fn compare_csv(rows: &[CompareRow]) -> String {
    let mut s = String::from("n,numeric_integrated_leakage,analytic_total_population,relative_error\n");
    for r in rows {
        let _ = writeln!(
            s,
            "{},{},{},{}",
            r.n,
            format_float(r.numeric_integrated_leakage),
            format_float(r.analytic_total_population),
            format_float(r.relative_error)
        );
    }
    s
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serialises");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct Rows<'a, T> {
    rows: &'a [T],
}

/// Files written by one command: the main output plus an optional JSON sidecar.
#[derive(Debug, Clone, PartialEq)]
pub struct Rendered {
    pub main: String,
    pub summary: Option<String>,
    pub warning: Option<String>,
}

/// Runs the command and renders its output without touching the filesystem.
pub fn render(cfg: &RunConfig) -> Result<Rendered, CliError> {
    let json = cfg.format == Format::Json;
    let plain = |main: String| Rendered {
        main,
        summary: None,
        warning: None,
    };
    Ok(match cfg.command {
        CommandKind::LeakageCurve => {
            let rows = cmd_leakage_curve(cfg)?;
            plain(if json { to_json(&Rows { rows: &rows }) } else { leakage_csv(&rows) })
        }
        CommandKind::AnalyticCompare => {
            let rows = cmd_analytic_compare(cfg)?;
            plain(if json { to_json(&Rows { rows: &rows }) } else { compare_csv(&rows) })
        }
        CommandKind::ClosureCheck => plain(to_json(&cmd_closure_check(cfg)?)),
        CommandKind::ErrorVsN => {
            let sweep = cmd_error_vs_n(cfg)?;
            let warning = sweep.summary.warning.clone();
            if json {
                Rendered {
                    main: to_json(&sweep),
                    summary: None,
                    warning,
                }
            } else {
                Rendered {
                    main: error_csv(&sweep.rows),
                    summary: Some(to_json(&sweep.summary)),
                    warning,
                }
            }
        }
    })
}

/// `results.csv` → `results.csv.summary.json`.
pub fn summary_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".summary.json");
    PathBuf::from(name)
}

/// Resolves the configuration, runs the command, and writes its outputs.
///
/// With CSV output the error sweep's JSON summary goes to a sidecar file next
/// to `--out`, or to stderr when writing to stdout.
pub fn run(command: &Command) -> Result<(), CliError> {
    let cfg = RunConfig::resolve(command)?;
    let rendered = render(&cfg)?;
    if let Some(w) = &rendered.warning {
        eprintln!("warning: {w}");
    }
    match &cfg.output_path {
        Some(path) => {
            fs::write(path, &rendered.main)?;
            if let Some(summary) = &rendered.summary {
                fs::write(summary_path(path), summary)?;
            }
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(rendered.main.as_bytes())?;
            lock.flush()?;
            if let Some(summary) = &rendered.summary {
                eprint!("{summary}");
            }
        }
    }
    Ok(())
}
