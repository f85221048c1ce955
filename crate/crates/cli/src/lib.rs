//! Command-line front end: generation, verification, solvers, exact checks,
//! the random construction, bound calculators and Monte Carlo sweeps.
//!
//! Exit codes: 0 on success, 1 when the answer is negative (not proper, not
//! colorable, not certified, solver failure), 2 on usage, input or I/O errors.

pub mod experiment;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use frachyp::alon::{precondition_alon, solve_alon, AlonParams};
use frachyp::bounds::{cherk_kozik_ab_bound, m_bounds_proper, prop2_bound, thm1_bound, thm2_bound};
use frachyp::coloring::{
    is_panchromatic, monochromatic_pairs, parse_coloring, parse_panchromatic, serialize_coloring, FractionalColoring,
};
use frachyp::construction::{edge_count_m, sample_and_certify, union_bound, ConstructionParams};
use frachyp::exact::{
    brute_force_colorable, chi_f_dual, chi_f_primal, chi_f_via_ab_search, edge_packing_lp, Budget, RationalLpResult,
};
use frachyp::hypergraph::{
    gen_complete_uniform, gen_cycle, gen_random_uniform, parse_hypergraph, serialize_hypergraph, Hypergraph,
};
use frachyp::theorem1::{solve_theorem1, SolveStatus, SolverParams};
use frachyp::Error;

use crate::experiment::{run_experiment, ExperimentConfig, ExperimentReport, Method};

#[derive(Debug, Parser)]
#[command(
    name = "frachyp",
    version,
    about = "Fractional (a:b)-colorings of uniform hypergraphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a hypergraph file
    Gen(GenArgs),
    /// Check a coloring against a hypergraph
    Verify(VerifyArgs),
    /// Run a randomized solver
    Solve(SolveArgs),
    /// Decide (a:b)-colorability by exhaustive search
    Exact(ExactArgs),
    /// Exact fractional chromatic number
    Chif(ChifArgs),
    /// Sample a hypergraph with no proper (a:b)-coloring
    Construct(ConstructArgs),
    /// Evaluate an edge-count bound
    Bounds(BoundsArgs),
    /// Seeded Monte Carlo sweep
    Experiment(ExperimentArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Kind {
    Random,
    Complete,
    Cycle,
}

#[derive(Debug, Args)]
struct GenArgs {
    #[arg(long, value_enum, default_value = "random")]
    kind: Kind,
    #[arg(long)]
    v: usize,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 0)]
    m: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Reject repeated edges
    #[arg(long)]
    distinct: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long)]
    hypergraph: PathBuf,
    #[arg(long, conflicts_with = "panchromatic", required_unless_present = "panchromatic")]
    coloring: Option<PathBuf>,
    /// Single-color-per-vertex coloring file
    #[arg(long)]
    panchromatic: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SolveMethod {
    Theorem1,
    Alon,
}

#[derive(Debug, Args)]
struct SolveArgs {
    #[arg(long)]
    hypergraph: PathBuf,
    #[arg(long, value_enum, default_value = "theorem1")]
    method: SolveMethod,
    #[arg(long)]
    a: u32,
    #[arg(long)]
    b: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Weight threshold override (theorem1)
    #[arg(long)]
    p: Option<f64>,
    /// Restart budget (alon)
    #[arg(long, default_value_t = 50)]
    max_attempts: usize,
    /// Write the final coloring here
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ExactArgs {
    #[arg(long)]
    hypergraph: PathBuf,
    #[arg(long)]
    a: u32,
    #[arg(long)]
    b: u32,
    /// Write the witness coloring here instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ChifArgs {
    #[arg(long)]
    hypergraph: PathBuf,
    /// Also search (a:b)-colorings with a up to this value
    #[arg(long)]
    a_max: Option<u32>,
}

#[derive(Debug, Args)]
struct ConstructArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    a: u32,
    #[arg(long)]
    b: u32,
    #[arg(long)]
    v: Option<usize>,
    #[arg(long)]
    m: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    attempts: usize,
    /// Resample until certified
    #[arg(long)]
    shrink: bool,
    /// Write the hypergraph here
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Which {
    Thm1,
    Eq1,
    Eq5,
    Prop2,
    Thm2,
}

#[derive(Debug, Args)]
struct BoundsArgs {
    #[arg(long, value_enum)]
    which: Which,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    a: Option<u32>,
    #[arg(long)]
    b: Option<u32>,
    #[arg(long)]
    r: Option<u32>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
struct ExperimentArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    n: Vec<usize>,
    #[arg(long, value_delimiter = ',', required = true)]
    a: Vec<u32>,
    #[arg(long, value_delimiter = ',', required = true)]
    b: Vec<u32>,
    /// Edge counts as multiples of the method's budget
    #[arg(long, value_delimiter = ',', default_value = "1.0")]
    multiplier: Vec<f64>,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "theorem1")]
    method: SolveMethod,
    #[arg(long, default_value_t = 200)]
    vertices: usize,
    /// Write per-trial JSON lines here
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

/// Why a command did not succeed.
#[derive(Debug)]
enum Failure {
    /// Negative answer; the message goes to standard output.
    Negative,
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotFound { .. } | Error::AttemptsExhausted { .. } | Error::FullPalette { .. } => {
                Failure::Domain(e.to_string())
            }
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = std::result::Result<(), Failure>;

fn io_err(path: &Path, e: std::io::Error) -> Failure {
    Failure::Usage(format!("{}: {e}", path.display()))
}

fn read(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| io_err(path, e))
}

fn write_file(path: &Path, text: &str) -> Outcome {
    fs::write(path, text).map_err(|e| io_err(path, e))
}

fn load_hypergraph(path: &Path) -> std::result::Result<Hypergraph, Failure> {
    parse_hypergraph(&read(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn emit(out: &mut dyn Write, value: &Value) -> Outcome {
    let text = serde_json::to_string_pretty(value).expect("json values serialize");
    writeln!(out, "{text}").map_err(|e| Failure::Usage(e.to_string()))
}

fn line(out: &mut dyn Write, text: &str) -> Outcome {
    writeln!(out, "{text}").map_err(|e| Failure::Usage(e.to_string()))
}

fn budget() -> std::result::Result<Budget, Failure> {
    Budget::from_env().map_err(Failure::from)
}

/// Parses `argv` (program name first), runs the command, and returns the exit code.
pub fn run_cli<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_cli_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// [`run_cli`] with explicit output streams.
pub fn run_cli_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Gen(a) => gen(a, out),
        Command::Verify(a) => verify(a, out),
        Command::Solve(a) => solve(a, out),
        Command::Exact(a) => exact(a, out),
        Command::Chif(a) => chif(a, out),
        Command::Construct(a) => construct(a, out),
        Command::Bounds(a) => bounds(a, out),
        Command::Experiment(a) => experiment(a, out),
    };
    match result {
        Ok(()) => 0,
        Err(Failure::Negative) => 1,
        Err(Failure::Domain(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn gen(args: GenArgs, out: &mut dyn Write) -> Outcome {
    let need_n = || {
        args.n
            .ok_or_else(|| Failure::Usage("--n is required for this kind".into()))
    };
    let h = match args.kind {
        Kind::Random => gen_random_uniform(args.v, need_n()?, args.m, args.seed, args.distinct)?,
        Kind::Complete => gen_complete_uniform(args.v, need_n()?)?,
        Kind::Cycle => gen_cycle(args.v)?,
    };
    let text = serialize_hypergraph(&h);
    match args.out {
        Some(path) => write_file(&path, &text),
        None => write!(out, "{text}").map_err(|e| Failure::Usage(e.to_string())),
    }
}

fn verify(args: VerifyArgs, out: &mut dyn Write) -> Outcome {
    let h = load_hypergraph(&args.hypergraph)?;
    if let Some(path) = args.panchromatic {
        let c = parse_panchromatic(&read(&path)?)?;
        return if is_panchromatic(&h, &c)? {
            line(out, "panchromatic")
        } else {
            line(out, "not panchromatic")?;
            Err(Failure::Negative)
        };
    }
    let path = args.coloring.expect("clap enforces one coloring source");
    let chi = parse_coloring(&read(&path)?)?;
    let pairs = monochromatic_pairs(&h, &chi)?;
    if pairs.is_empty() {
        return line(out, "proper");
    }
    line(out, "not proper")?;
    for (edge, color) in pairs {
        line(out, &format!("edge {edge} monochromatic in color {color}"))?;
    }
    Err(Failure::Negative)
}

fn save_coloring(path: &Option<PathBuf>, chi: &FractionalColoring) -> Outcome {
    match path {
        Some(p) => write_file(p, &serialize_coloring(chi)),
        None => Ok(()),
    }
}

fn solve(args: SolveArgs, out: &mut dyn Write) -> Outcome {
    let h = load_hypergraph(&args.hypergraph)?;
    match args.method {
        SolveMethod::Theorem1 => {
            let params = SolverParams {
                p_override: args.p,
                ..SolverParams::new(args.a, args.b, args.seed)
            };
            let outcome = solve_theorem1(&h, &params)?;
            save_coloring(&args.out, &outcome.final_coloring)?;
            let (status, report) = match &outcome.status {
                SolveStatus::Proper => ("proper", None),
                SolveStatus::Failed(r) => ("failed", Some(r)),
            };
            emit(
                out,
                &json!({
                    "method": "theorem1",
                    "status": status,
                    "threshold": outcome.threshold,
                    "regime_ok": outcome.regime_ok,
                    "recolorings": outcome.events.len(),
                    "events": outcome.events,
                    "bad_events": report,
                }),
            )?;
            if outcome.is_proper() {
                Ok(())
            } else {
                Err(Failure::Negative)
            }
        }
        SolveMethod::Alon => {
            let pre = precondition_alon(&h, args.a, args.b)?;
            let params = AlonParams {
                max_attempts: args.max_attempts,
                ..AlonParams::new(args.a, args.b, args.seed)
            };
            match solve_alon(&h, &params) {
                Ok((chi, ledger)) => {
                    save_coloring(&args.out, &chi)?;
                    emit(
                        out,
                        &json!({
                            "method": "alon",
                            "status": "proper",
                            "preconditions": pre,
                            "preconditions_ok": pre.all(),
                            "attempt": ledger.attempt,
                            "repairs": ledger.repairs(),
                            "reserve_usage": ledger.usage,
                            "events": ledger.events,
                        }),
                    )
                }
                Err(Error::AttemptsExhausted { attempts }) => {
                    emit(
                        out,
                        &json!({
                            "method": "alon",
                            "status": "exhausted",
                            "preconditions": pre,
                            "preconditions_ok": pre.all(),
                            "attempts": attempts,
                        }),
                    )?;
                    Err(Failure::Negative)
                }
                Err(e) => Err(e.into()),
            }
        }
    }
}

fn exact(args: ExactArgs, out: &mut dyn Write) -> Outcome {
    let h = load_hypergraph(&args.hypergraph)?;
    match brute_force_colorable(&h, args.a, args.b, &budget()?)? {
        Some(chi) => {
            line(out, &format!("colorable {}/{}", args.a, args.b))?;
            let text = serialize_coloring(&chi);
            match args.out {
                Some(path) => write_file(&path, &text),
                None => write!(out, "{text}").map_err(|e| Failure::Usage(e.to_string())),
            }
        }
        None => {
            line(out, "not colorable")?;
            Err(Failure::Negative)
        }
    }
}

fn lp_json(r: &RationalLpResult) -> Value {
    let strings = |v: &[num_rational::BigRational]| v.iter().map(|q| q.to_string()).collect::<Vec<_>>();
    json!({
        "status": format!("{:?}", r.status).to_lowercase(),
        "value": r.value.as_ref().map(|q| q.to_string()),
        "independent_sets": r.independent_sets,
        "set_weights": strings(&r.set_weights),
        "vertex_weights": strings(&r.vertex_weights),
    })
}

fn chif(args: ChifArgs, out: &mut dyn Write) -> Outcome {
    let h = load_hypergraph(&args.hypergraph)?;
    let budget = budget()?;
    let primal = chi_f_primal(&h, &budget)?;
    let dual = chi_f_dual(&h, &budget)?;
    let packing = edge_packing_lp(&h);
    let search = match args.a_max {
        Some(a_max) => match chi_f_via_ab_search(&h, a_max, &budget) {
            Ok(r) => json!({"ratio": r.ratio.to_string(), "a": r.a, "b": r.b}),
            Err(e @ Error::NotFound { .. }) => json!({"error": e.to_string()}),
            Err(e) => return Err(e.into()),
        },
        None => Value::Null,
    };
    emit(
        out,
        &json!({
            "chi_f": primal.value.as_ref().map(|q| q.to_string()),
            "primal": lp_json(&primal),
            "dual": lp_json(&dual),
            "edge_packing": {
                "value": packing.value.to_string(),
                "edge_weights": packing.edge_weights.iter().map(|q| q.to_string()).collect::<Vec<_>>(),
            },
            "ab_search": search,
        }),
    )
}

fn construct(args: ConstructArgs, out: &mut dyn Write) -> Outcome {
    let mut params = match args.v {
        Some(v) => ConstructionParams::with_v(args.n, args.a, args.b, v, args.seed)?,
        None => ConstructionParams::new(args.n, args.a, args.b, args.seed)?,
    };
    params.attempts = args.attempts;
    let count = edge_count_m(params.v, params.n, params.a, params.b)?;
    let (certificate, ln_bound) = match args.m {
        Some(m) => {
            params.m = m;
            let p = frachyp::construction::bad_prob_lower_p(params.v, params.n, params.a, params.b)?;
            let (ok, _, ln) = union_bound(&p, params.v, params.a, params.b, m);
            (ok, ln)
        }
        None => (count.certificate, count.ln_union_bound),
    };
    let cert = match sample_and_certify(&params, args.shrink, &budget()?) {
        Ok(c) => c,
        Err(Error::AttemptsExhausted { attempts }) => {
            emit(
                out,
                &json!({"v": params.v, "m": params.m, "p": count.p, "certified": false, "attempts": attempts}),
            )?;
            return Err(Failure::Negative);
        }
        Err(e) => return Err(e.into()),
    };
    let text = serialize_hypergraph(&cert.hypergraph);
    let mut report = json!({
        "n": params.n,
        "a": params.a,
        "b": params.b,
        "v": params.v,
        "m": params.m,
        "p": count.p,
        "union_bound_value": ln_bound.exp(),
        "ln_union_bound": ln_bound,
        "union_bound_below_one": certificate,
        "certifiable": cert.certifiable,
        "certified": cert.certified,
        "attempts_used": cert.attempts_used,
    });
    match &args.out {
        Some(path) => write_file(path, &text)?,
        None => report["hypergraph"] = Value::String(text),
    }
    emit(out, &report)?;
    if cert.certified {
        Ok(())
    } else {
        Err(Failure::Negative)
    }
}

fn bounds(args: BoundsArgs, out: &mut dyn Write) -> Outcome {
    let need =
        |v: Option<u32>, flag: &str| v.ok_or_else(|| Failure::Usage(format!("--{flag} is required for this bound")));
    let value = match args.which {
        Which::Thm1 => json!(thm1_bound(args.n, need(args.a, "a")?, need(args.b, "b")?)?),
        Which::Eq5 => json!(cherk_kozik_ab_bound(args.n, need(args.a, "a")?, need(args.b, "b")?)?),
        Which::Prop2 => json!(prop2_bound(args.n, need(args.a, "a")?)?),
        Which::Thm2 => json!(thm2_bound(args.n, need(args.a, "a")?, need(args.b, "b")?)?),
        Which::Eq1 => {
            let (lower, upper) = m_bounds_proper(args.n, need(args.r, "r")?)?;
            json!({"lower": lower, "upper": upper})
        }
    };
    emit(out, &value)
}

#[derive(serde::Serialize)]
struct CsvRow {
    n: usize,
    a: u32,
    b: u32,
    multiplier: f64,
    edges: usize,
    trials: usize,
    success_rate: f64,
    success_low: f64,
    success_high: f64,
    b1: f64,
    b2: f64,
    b3: f64,
    b4: f64,
    b5: f64,
    flagged: bool,
    unclassified_failures: usize,
    mean_events: f64,
    wall_micros: u64,
}

fn write_csv(report: &ExperimentReport, out: &mut dyn Write) -> Outcome {
    let mut w = csv::Writer::from_writer(out);
    for c in &report.cells {
        let f = c.bad_event_freq;
        w.serialize(CsvRow {
            n: c.cell.n,
            a: c.cell.a,
            b: c.cell.b,
            multiplier: c.cell.multiplier,
            edges: c.edges,
            trials: c.trials,
            success_rate: c.success_rate,
            success_low: c.success_interval.low,
            success_high: c.success_interval.high,
            b1: f[0],
            b2: f[1],
            b3: f[2],
            b4: f[3],
            b5: f[4],
            flagged: c.any_flagged(),
            unclassified_failures: c.failures_unclassified,
            mean_events: c.mean_events,
            wall_micros: c.wall_micros,
        })
        .map_err(|e| Failure::Usage(e.to_string()))?;
    }
    w.flush().map_err(|e| Failure::Usage(e.to_string()))
}

fn experiment(args: ExperimentArgs, out: &mut dyn Write) -> Outcome {
    let config = ExperimentConfig {
        cells: ExperimentConfig::grid(&args.n, &args.a, &args.b, &args.multiplier),
        trials: args.trials,
        base_seed: args.seed,
        method: match args.method {
            SolveMethod::Theorem1 => Method::Theorem1,
            SolveMethod::Alon => Method::Alon,
        },
        vertices: args.vertices,
    };
    let report = run_experiment(&config)?;
    if let Some(path) = &args.out {
        let mut lines = String::new();
        for t in &report.trials {
            lines.push_str(&serde_json::to_string(t).expect("trial records serialize"));
            lines.push('\n');
        }
        write_file(path, &lines)?;
    }
    match args.format {
        Format::Json => emit(out, &json!({"config": report.config, "cells": report.cells}))?,
        Format::Csv => write_csv(&report, out)?,
    }
    let bad = report
        .cells
        .iter()
        .any(|c| c.any_flagged() || c.failures_unclassified > 0);
    if bad {
        Err(Failure::Negative)
    } else {
        Ok(())
    }
}
