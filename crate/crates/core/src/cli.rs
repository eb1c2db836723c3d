//! Batch entry point: one JSON file in, one JSON report out.
//!
//! Exit codes: 0 on success, 2 when a computation rejects the input on
//! mathematical grounds, 1 for I/O and schema problems. Every report, error
//! reports included, is written to the output.

use std::fmt;
use std::fs;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::config::{ConfigError, Problem, ProblemConfig, RationalEntry};
use crate::geometry::{
    boundary_cycle, crossing_number, log_area_any_chart, quantum_index_k, quantum_index_toric, smoothing_side_fd,
    beta_moment_sum, menelaus_defect, CurveConfig, GeometryError, ParametrizedCurve, ReduciblePair,
};
use crate::lattice::{parse_rational, rational_to_string, LatticeVector, Rational, TwoForm};
use crate::quadrature::{area_quadrature, area_quadrature_conjugate, AreaKind, QuadratureConfig, QuadratureError};
use crate::tropical::{
    check_genericity, correspondence, count, draw_constraints, invariance_harness, tropical_menelaus_check, CountResult,
    EngineError, SamplingConfig, TropicalConstraints, MAX_RESAMPLES,
};
use crate::config::trop_vectors;

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;

const DEFAULT_TRIALS: usize = 5;
const DEFAULT_DELTA: f64 = 1e-5;
const DEFAULT_INDEX_TOL: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Validate,
    Count,
    Invariance,
    Correspond,
    Qindex,
    Logarea,
    Oracle,
    Crossing,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Count => "count",
            Command::Invariance => "invariance",
            Command::Correspond => "correspond",
            Command::Qindex => "qindex",
            Command::Logarea => "logarea",
            Command::Oracle => "oracle",
            Command::Crossing => "crossing",
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "refined-count", version, about = "Refined tropical counts, quantum indices and log-areas")]
pub struct Args {
    /// Input JSON file.
    #[arg(long)]
    pub config: PathBuf,
    #[arg(long, value_enum)]
    pub command: Command,
    /// Number of constraint draws for `invariance`.
    #[arg(long)]
    pub trials: Option<usize>,
    /// Seed of the ChaCha8 generator behind every random draw.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Quadrature tolerance in units of π².
    #[arg(long)]
    pub tol: Option<f64>,
    /// Report destination; standard output when absent.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

/// A failure with its exit code and a stable `kind` for the report.
#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub code: i32,
    pub kind: String,
    pub message: String,
}

impl CliError {
    fn io(kind: &str, message: impl fmt::Display) -> Self {
        CliError {
            code: EXIT_IO,
            kind: kind.into(),
            message: message.to_string(),
        }
    }

    fn domain(kind: &str, message: impl fmt::Display) -> Self {
        CliError {
            code: EXIT_DOMAIN,
            kind: kind.into(),
            message: message.to_string(),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({ "kind": self.kind, "message": self.message, "exit_code": self.code })
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind, self.message)
    }
}

impl From<EngineError> for CliError {
    fn from(e: EngineError) -> Self {
        CliError::domain(e.kind(), &e)
    }
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        match &e {
            ConfigError::Schema(_) => CliError::io("Schema", &e),
            ConfigError::DegenerateRoot => CliError::domain("DegenerateRoot", &e),
            ConfigError::Lattice(_) => CliError::domain("Lattice", &e),
            ConfigError::Degree(_) => CliError::domain("InvalidDegree", &e),
        }
    }
}

impl From<GeometryError> for CliError {
    fn from(e: GeometryError) -> Self {
        let kind = match &e {
            GeometryError::Schema(_) => return CliError::io("Schema", &e),
            GeometryError::RankMismatch { .. } => "RankMismatch",
            GeometryError::NotBalanced(_) => "NotBalanced",
            GeometryError::MultipleInfinity => "MultipleInfinity",
            GeometryError::CoincidentPunctures => "CoincidentPunctures",
            GeometryError::NotUpperHalfPlane(_) => "NotUpperHalfPlane",
            GeometryError::InfinitePuncture => "InfinitePuncture",
            GeometryError::NoInfinityPuncture => "NoInfinityPuncture",
            GeometryError::AlreadyAtInfinity(_) => "AlreadyAtInfinity",
            GeometryError::IndexOutOfRange(_) => "IndexOutOfRange",
            GeometryError::DegenerateArgument(_) => "DegenerateArgument",
            GeometryError::NonClosedComponent(_) => "NonClosedComponent",
            GeometryError::NodeAtPuncture => "NodeAtPuncture",
            GeometryError::ShiftCollision => "ShiftCollision",
            GeometryError::ResidualTooLarge { .. } => "ResidualTooLarge",
            GeometryError::Lattice(_) => "Lattice",
        };
        CliError::domain(kind, &e)
    }
}

impl From<QuadratureError> for CliError {
    fn from(e: QuadratureError) -> Self {
        match e {
            QuadratureError::Geometry(g) => g.into(),
            QuadratureError::Config(_) => CliError::io("QuadratureConfig", &e),
            QuadratureError::ToleranceNotReached { .. } => CliError::domain("ToleranceNotReached", &e),
            QuadratureError::EvaluationAtPuncture => CliError::domain("EvaluationAtPuncture", &e),
        }
    }
}

/// Options after merging command-line flags over the input file.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub input_path: PathBuf,
    pub output_path: Option<PathBuf>,
    pub seed: u64,
    pub trials: usize,
    pub quadrature: QuadratureConfig,
}

#[derive(Debug, Clone, Default, Deserialize)]
struct RandomSpec {
    trials: Option<usize>,
    seed: Option<u64>,
}

#[derive(Debug, Clone, Deserialize)]
struct ConstraintSpec {
    #[serde(rename = "P", default)]
    p: Vec<RationalEntry>,
    #[serde(default)]
    mu: Vec<RationalEntry>,
}

#[derive(Debug, Clone, Deserialize)]
struct TropicalInput {
    #[serde(flatten)]
    problem: ProblemConfig,
    constraints: Option<ConstraintSpec>,
}

#[derive(Debug, Clone, Deserialize)]
struct CurveInput {
    omega: Vec<Vec<RationalEntry>>,
    curve: CurveConfig,
    /// Residual tolerance for the half-integer `k`.
    index_tol: Option<f64>,
}

#[derive(Debug, Clone, Deserialize)]
struct PunctureSpec {
    at: f64,
    n: Vec<i64>,
}

#[derive(Debug, Clone, Deserialize)]
struct PairSpec {
    a: Vec<PunctureSpec>,
    eta: f64,
    b: Vec<PunctureSpec>,
    xi: Vec<f64>,
}

#[derive(Debug, Clone, Deserialize)]
struct CrossingInput {
    omega: Vec<Vec<RationalEntry>>,
    pair: PairSpec,
    delta: Option<f64>,
}

fn parse_entry(e: &RationalEntry) -> Result<Rational, CliError> {
    match e {
        RationalEntry::Int(i) => Ok(Rational::from_integer((*i).into())),
        RationalEntry::Text(s) => parse_rational(s).ok_or_else(|| CliError::io("Schema", format!("bad rational {s:?}"))),
    }
}

fn parse_omega(rows: &[Vec<RationalEntry>]) -> Result<TwoForm, CliError> {
    let m = rows
        .iter()
        .map(|r| r.iter().map(parse_entry).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    TwoForm::new(m).map_err(|e| CliError::io("Schema", e))
}

fn omega_json(f: &TwoForm) -> Value {
    json!(f
        .matrix()
        .iter()
        .map(|r| r.iter().map(rational_to_string).collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

fn from_value<T: for<'de> Deserialize<'de>>(v: &Value) -> Result<T, CliError> {
    serde_json::from_value(v.clone()).map_err(|e| CliError::io("Schema", e))
}

fn read_input(path: &PathBuf) -> Result<Value, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io("Io", format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::io("Parse", format!("{}: {e}", path.display())))
}

/// Merges flags over the `random` and `quadrature` sections of the input.
pub fn resolve_run_config(args: &Args, input: &Value) -> Result<RunConfig, CliError> {
    let random: RandomSpec = match input.get("random") {
        Some(v) => from_value(v)?,
        None => RandomSpec::default(),
    };
    let mut quadrature: QuadratureConfig = match input.get("quadrature") {
        Some(v) => from_value(v)?,
        None => QuadratureConfig::default(),
    };
    if let Some(t) = args.tol {
        quadrature.tol = t;
    }
    let trials = args.trials.or(random.trials).unwrap_or(DEFAULT_TRIALS);
    if trials == 0 {
        return Err(CliError::io("Schema", "trials must be at least 1"));
    }
    Ok(RunConfig {
        command: args.command,
        input_path: args.config.clone(),
        output_path: args.output.clone(),
        seed: args.seed.or(random.seed).unwrap_or(0),
        trials,
        quadrature,
    })
}

fn run_config_json(cfg: &RunConfig) -> Value {
    json!({
        "command": cfg.command.name(),
        "seed": cfg.seed,
        "trials": cfg.trials,
        "rng": "ChaCha8",
        "quadrature": {
            "tol": cfg.quadrature.tol,
            "puncture_radius": cfg.quadrature.puncture_radius,
            "richardson_levels": cfg.quadrature.richardson_levels,
            "truncation_radius": cfg.quadrature.truncation_radius,
            "max_cells": cfg.quadrature.max_cells,
        },
    })
}

fn resolve_problem(input: &Value) -> Result<(Problem, Option<TropicalConstraints>), CliError> {
    let t: TropicalInput = from_value(input)?;
    let problem = t.problem.resolve()?;
    let constraints = match t.constraints {
        Some(c) => Some(TropicalConstraints {
            p: c.p.iter().map(parse_entry).collect::<Result<_, _>>()?,
            mu: c.mu.iter().map(parse_entry).collect::<Result<_, _>>()?,
        }),
        None => None,
    };
    Ok((problem, constraints))
}

/// Counts with the given constraints, or with a seeded draw resampled past walls.
fn count_with(problem: &Problem, given: Option<TropicalConstraints>, seed: u64) -> Result<(TropicalConstraints, CountResult, usize), CliError> {
    let tdeg = trop_vectors(&problem.tdeg);
    check_genericity(&tdeg, &problem.omega)?;
    if let Some(c) = given {
        let r = count(&tdeg, &problem.omega, &problem.basis, &c)?;
        return Ok((c, r, 0));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sampling = SamplingConfig::default();
    for resamples in 0..MAX_RESAMPLES {
        let c = draw_constraints(&mut rng, problem.basis.monomials.len(), tdeg.len() - 1, &sampling);
        match count(&tdeg, &problem.omega, &problem.basis, &c) {
            Ok(r) => return Ok((c, r, resamples)),
            Err(EngineError::DegenerateConstraints(_)) => continue,
            Err(e) => return Err(e.into()),
        }
    }
    Err(EngineError::ExhaustedResampling(MAX_RESAMPLES).into())
}

fn count_json(problem: &Problem, c: &TropicalConstraints, r: &CountResult, resamples: usize) -> Value {
    let menelaus_ok = r
        .solutions
        .iter()
        .all(|s| tropical_menelaus_check(s, &problem.omega) == Rational::from_integer(0.into()));
    json!({
        "constraints": c.to_json(),
        "resamples": resamples,
        "polynomial": r.polynomial.to_json(),
        "polynomial_display": r.polynomial.to_string(),
        "solutions": r.solutions.len(),
        "curves": r.solutions.iter().map(|s| s.to_json()).collect::<Vec<_>>(),
        "menelaus_exact": menelaus_ok,
    })
}

fn curve_input(input: &Value) -> Result<(TwoForm, ParametrizedCurve, f64), CliError> {
    let ci: CurveInput = from_value(input)?;
    let f = parse_omega(&ci.omega)?;
    let c = ci.curve.build()?;
    if f.rank() != c.rank() {
        return Err(GeometryError::RankMismatch {
            expected: c.rank(),
            found: f.rank(),
        }
        .into());
    }
    Ok((f, c, ci.index_tol.unwrap_or(DEFAULT_INDEX_TOL)))
}

fn execute(cfg: &RunConfig, input: &Value) -> Result<(Value, Value), CliError> {
    match cfg.command {
        Command::Validate | Command::Count | Command::Invariance | Command::Correspond => {
            let (problem, constraints) = resolve_problem(input)?;
            let echo = problem.to_json();
            let tdeg = trop_vectors(&problem.tdeg);
            let result = match cfg.command {
                Command::Validate => {
                    let generic = check_genericity(&tdeg, &problem.omega);
                    json!({
                        "valid": true,
                        "generic": generic.is_ok(),
                        "genericity_error": generic.err().map(|e| json!({ "kind": e.kind(), "message": e.to_string() })),
                    })
                }
                Command::Count => {
                    let (c, r, resamples) = count_with(&problem, constraints, cfg.seed)?;
                    count_json(&problem, &c, &r, resamples)
                }
                Command::Invariance => {
                    let report = invariance_harness(&tdeg, &problem.omega, &problem.basis, cfg.trials, cfg.seed)?;
                    if let Some(v) = &report.violation {
                        return Err(v.clone().into());
                    }
                    report.to_json()
                }
                _ => {
                    let (c, r, resamples) = count_with(&problem, constraints, cfg.seed)?;
                    let s = problem.degree.pair_count() as u32;
                    let corr = correspondence(&r.polynomial, &problem.omega, s)?;
                    json!({
                        "count": count_json(&problem, &c, &r, resamples),
                        "correspondence": corr.to_json(),
                    })
                }
            };
            Ok((echo, result))
        }
        Command::Qindex | Command::Logarea | Command::Oracle => {
            let (f, c, index_tol) = curve_input(input)?;
            let echo = json!({ "omega": omega_json(&f), "curve": c.to_json(), "index_tol": index_tol });
            let result = match cfg.command {
                Command::Qindex => {
                    let h = if c.is_totally_real() {
                        let h = quantum_index_toric(&[boundary_cycle(&c)])?;
                        json!({
                            "h": h.terms().map(|(&(i, j), v)| json!([i, j, rational_to_string(v)])).collect::<Vec<_>>(),
                            "h_pairing": rational_to_string(&f.pair_bivector(&h)),
                        })
                    } else {
                        Value::Null
                    };
                    let k = quantum_index_k(&c, &f, index_tol)?;
                    json!({
                        "quantum_index": h,
                        "k": k.k,
                        "k_raw": k.raw,
                        "residual": k.residual,
                        "theta_shift": k.shift,
                        "log_area": k.area.value,
                        "no_real_punctures": k.area.no_real_punctures,
                    })
                }
                Command::Logarea => {
                    let a = log_area_any_chart(&c, &f)?;
                    json!({
                        "log_area": a.value,
                        "log_area_over_pi2": a.value / std::f64::consts::PI.powi(2),
                        "no_real_punctures": a.no_real_punctures,
                        "menelaus_defect": menelaus_defect(&c, &f).ok(),
                    })
                }
                _ => {
                    let log = area_quadrature(&c, &f, AreaKind::Log, &cfg.quadrature)?;
                    let arg = area_quadrature(&c, &f, AreaKind::Arg, &cfg.quadrature)?;
                    let conj = area_quadrature_conjugate(&c, &f, AreaKind::Log, &cfg.quadrature)?;
                    let closed = log_area_any_chart(&c, &f)?;
                    json!({
                        "log": log.to_json(),
                        "arg": arg.to_json(),
                        "conjugate_log": conj.to_json(),
                        "log_minus_arg": log.value - arg.value,
                        "closed_form": closed.value,
                        "closed_form_minus_quadrature": closed.value - log.value,
                    })
                }
            };
            Ok((echo, result))
        }
        Command::Crossing => {
            let ci: CrossingInput = from_value(input)?;
            let f = parse_omega(&ci.omega)?;
            let to_list = |v: &[PunctureSpec]| {
                v.iter()
                    .map(|p| (p.at, LatticeVector::new(p.n.clone())))
                    .collect::<Vec<_>>()
            };
            let pair = ReduciblePair::new(to_list(&ci.pair.a), ci.pair.eta, to_list(&ci.pair.b), ci.pair.xi.clone())?;
            if pair.rank() != f.rank() {
                return Err(GeometryError::RankMismatch {
                    expected: pair.rank(),
                    found: f.rank(),
                }
                .into());
            }
            let delta = ci.delta.unwrap_or(DEFAULT_DELTA);
            let crossing = crossing_number(&pair, &f);
            let fd = smoothing_side_fd(&pair, &f, delta)?;
            let plus = beta_moment_sum(&pair, &f, delta)?;
            let echo = json!({ "omega": omega_json(&f), "pair": input.get("pair"), "delta": delta });
            let result = json!({
                "crossing_number": crossing,
                "finite_difference": fd,
                "beta_moment_sum_at_delta": plus,
                "side": if plus < 0.0 { "negative" } else if plus > 0.0 { "positive" } else { "wall" },
            });
            Ok((echo, result))
        }
    }
}

fn report(args: &Args) -> Result<Value, (CliError, Value)> {
    let bare = json!({ "command": args.command.name() });
    let input = read_input(&args.config).map_err(|e| (e, bare.clone()))?;
    let cfg = resolve_run_config(args, &input).map_err(|e| (e, bare))?;
    let run = run_config_json(&cfg);
    match execute(&cfg, &input) {
        Ok((echo, result)) => Ok(json!({ "run": run, "config": echo, "result": result })),
        Err(e) => Err((e, run)),
    }
}

/// Runs one command and returns the exit code with the rendered report.
pub fn run(args: &Args) -> (i32, String) {
    let (code, value) = match report(args) {
        Ok(v) => (EXIT_OK, v),
        Err((e, run)) => (e.code, json!({ "run": run, "error": e.to_json() })),
    };
    let mut text = serde_json::to_string_pretty(&value).expect("report serializes");
    text.push('\n');
    (code, text)
}

/// Entry point for the binary: renders the report, writes it, and returns the exit code.
pub fn main_with(args: &Args) -> i32 {
    let (code, text) = run(args);
    if code != EXIT_OK {
        if let Ok(v) = serde_json::from_str::<Value>(&text) {
            if let Some(m) = v.pointer("/error/message").and_then(Value::as_str) {
                eprintln!("error: {m}");
            }
        }
    }
    match &args.output {
        Some(path) => {
            if let Err(e) = fs::write(path, &text) {
                eprintln!("error: {}: {e}", path.display());
                return EXIT_IO;
            }
        }
        None => print!("{text}"),
    }
    code
}
