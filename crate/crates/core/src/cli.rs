//! Command-line front end.
//!
//! Exit status: 0 on success, 2 on a usage or validation error, 3 when a
//! solver or the consistency oracle fails.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::bifurcation::{
    default_convexity_grid, find_lambda_cr, sweep, verify_convexity_loop_k3, SweepPoint,
};
use crate::graphs::FertileGraph;
use crate::oracle::{consistency_defect, FiniteTree, ENUMERATION_LIMIT};
use crate::plot::{fmt_sig, round_sig, sweep_csv, sweep_svg};
use crate::recursion::ModelParams;
use crate::solver::{solve_all, Branch, SolutionSet};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_FAILURE: u8 = 3;

/// Defect below which the consistency check passes.
pub const CONSISTENCY_TOL: f64 = 1e-12;

#[derive(Debug, Parser)]
#[command(
    name = "fertile-hc",
    version,
    about = "Translation-invariant Gibbs measures of fertile hard-core models on Cayley trees"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// All translation-invariant fixed points at one activity.
    Solve(SolveArgs),
    /// Solution counts and branches over a range of activities.
    Sweep(SweepArgs),
    /// Critical activity of loop or rod (k = 2 or 3).
    Critical(CriticalArgs),
    /// Convexity check of the order-3 loop branch map.
    Convexity(CommonOutput),
    /// Brute-force consistency check on a finite tree.
    VerifyConsistency(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
    Svg,
}

#[derive(Debug, Args)]
pub struct CommonOutput {
    #[arg(long)]
    pub format: Option<Format>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long)]
    pub graph: String,
    #[arg(long)]
    pub k: u32,
    /// Decimal or rational `p/q`.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: String,
    #[command(flatten)]
    pub output: CommonOutput,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub graph: String,
    #[arg(long)]
    pub k: u32,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda_min: String,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda_max: String,
    #[arg(long, default_value_t = 200)]
    pub steps: usize,
    #[command(flatten)]
    pub output: CommonOutput,
}

#[derive(Debug, Args)]
pub struct CriticalArgs {
    #[arg(long)]
    pub graph: String,
    #[arg(long, default_value_t = 3)]
    pub k: u32,
    #[command(flatten)]
    pub output: CommonOutput,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub graph: String,
    #[arg(long)]
    pub k: u32,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: String,
    #[arg(long, default_value_t = 2)]
    pub depth: usize,
    #[command(flatten)]
    pub output: CommonOutput,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Solve,
    Sweep,
    Critical,
    Convexity,
    VerifyConsistency,
}

/// Validated run request.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: CommandKind,
    pub graph: FertileGraph,
    pub k: u32,
    pub lambda: Option<f64>,
    /// `(min, max, steps)`, linearly spaced.
    pub lambda_range: Option<(f64, f64, usize)>,
    pub depth: Option<usize>,
    pub format: Format,
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RunError {
    Usage(String),
    Failure(String),
}

impl RunError {
    pub fn exit_code(&self) -> u8 {
        match self {
            RunError::Usage(_) => EXIT_USAGE,
            RunError::Failure(_) => EXIT_FAILURE,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            RunError::Usage(m) | RunError::Failure(m) => m,
        }
    }
}

fn usage(flag: &str, msg: impl std::fmt::Display) -> RunError {
    RunError::Usage(format!("invalid {flag}: {msg}"))
}

/// Parses a positive activity given as a decimal or as `p/q` with integer
/// `p` and `q`. The rational is divided once in floating point, which is
/// correctly rounded whenever `p` and `q` are exactly representable.
pub fn parse_lambda(s: &str) -> Result<f64, String> {
    let s = s.trim();
    let value = match s.split_once('/') {
        Some((p, q)) => {
            let p: u64 = p
                .trim()
                .parse()
                .map_err(|_| format!("'{s}' is not a rational p/q"))?;
            let q: u64 = q
                .trim()
                .parse()
                .map_err(|_| format!("'{s}' is not a rational p/q"))?;
            if q == 0 {
                return Err(format!("'{s}' has a zero denominator"));
            }
            const EXACT: u64 = 1 << 53;
            if p > EXACT || q > EXACT {
                return Err(format!("'{s}' has terms beyond 2^53"));
            }
            p as f64 / q as f64
        }
        None => s
            .parse::<f64>()
            .map_err(|_| format!("'{s}' is not a number"))?,
    };
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(format!("'{s}' must be a positive finite number"))
    }
}

fn parse_graph(s: &str) -> Result<FertileGraph, RunError> {
    s.parse().map_err(|e| usage("--graph", e))
}

fn check_k(k: u32) -> Result<u32, RunError> {
    if k == 0 {
        Err(usage("--k", "tree order must be at least 1"))
    } else {
        Ok(k)
    }
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self, RunError> {
        match cli.command {
            Command::Solve(a) => {
                let format = a.output.format.unwrap_or(Format::Text);
                if format == Format::Svg {
                    return Err(usage("--format", "solve writes text, json or csv"));
                }
                Ok(Self {
                    command: CommandKind::Solve,
                    graph: parse_graph(&a.graph)?,
                    k: check_k(a.k)?,
                    lambda: Some(parse_lambda(&a.lambda).map_err(|e| usage("--lambda", e))?),
                    lambda_range: None,
                    depth: None,
                    format,
                    out: a.output.out,
                })
            }
            Command::Sweep(a) => {
                let lo = parse_lambda(&a.lambda_min).map_err(|e| usage("--lambda-min", e))?;
                let hi = parse_lambda(&a.lambda_max).map_err(|e| usage("--lambda-max", e))?;
                if !(lo < hi) {
                    return Err(usage("--lambda-max", "must exceed --lambda-min"));
                }
                if a.steps < 2 {
                    return Err(usage("--steps", "need at least 2 points"));
                }
                Ok(Self {
                    command: CommandKind::Sweep,
                    graph: parse_graph(&a.graph)?,
                    k: check_k(a.k)?,
                    lambda: None,
                    lambda_range: Some((lo, hi, a.steps)),
                    depth: None,
                    format: a.output.format.unwrap_or(Format::Csv),
                    out: a.output.out,
                })
            }
            Command::Critical(a) => {
                let format = a.output.format.unwrap_or(Format::Text);
                if matches!(format, Format::Csv | Format::Svg) {
                    return Err(usage("--format", "critical writes text or json"));
                }
                let graph = parse_graph(&a.graph)?;
                let k = check_k(a.k)?;
                if !(graph.is_swap_symmetric() && (k == 2 || k == 3)) {
                    return Err(usage(
                        "--graph",
                        "critical activities are available for loop and rod with k = 2 or 3",
                    ));
                }
                Ok(Self {
                    command: CommandKind::Critical,
                    graph,
                    k,
                    lambda: None,
                    lambda_range: None,
                    depth: None,
                    format,
                    out: a.output.out,
                })
            }
            Command::Convexity(o) => {
                let format = o.format.unwrap_or(Format::Text);
                if matches!(format, Format::Csv | Format::Svg) {
                    return Err(usage("--format", "convexity writes text or json"));
                }
                Ok(Self {
                    command: CommandKind::Convexity,
                    graph: FertileGraph::Loop,
                    k: 3,
                    lambda: None,
                    lambda_range: None,
                    depth: None,
                    format,
                    out: o.out,
                })
            }
            Command::VerifyConsistency(a) => {
                let format = a.output.format.unwrap_or(Format::Text);
                if matches!(format, Format::Csv | Format::Svg) {
                    return Err(usage("--format", "verify-consistency writes text or json"));
                }
                let k = check_k(a.k)?;
                if a.depth < 2 {
                    return Err(usage("--depth", "consistency needs depth >= 2"));
                }
                let vertices = FiniteTree::new(k as usize, a.depth).num_vertices();
                let fits = u32::try_from(vertices)
                    .ok()
                    .and_then(|e| 3u64.checked_pow(e))
                    .is_some_and(|c| c <= ENUMERATION_LIMIT);
                if !fits {
                    return Err(usage(
                        "--depth",
                        format!("{vertices} vertices are too many to enumerate"),
                    ));
                }
                Ok(Self {
                    command: CommandKind::VerifyConsistency,
                    graph: parse_graph(&a.graph)?,
                    k,
                    lambda: Some(parse_lambda(&a.lambda).map_err(|e| usage("--lambda", e))?),
                    lambda_range: None,
                    depth: Some(a.depth),
                    format,
                    out: a.output.out,
                })
            }
        }
    }
}

/// Evenly spaced grid; the last point is exactly `max`.
pub fn linear_grid(min: f64, max: f64, steps: usize) -> Vec<f64> {
    (0..steps)
        .map(|i| {
            if i + 1 == steps {
                max
            } else {
                min + (max - min) * i as f64 / (steps - 1) as f64
            }
        })
        .collect()
}

fn failure(e: impl std::fmt::Display) -> RunError {
    RunError::Failure(e.to_string())
}

fn params(config: &RunConfig) -> Result<ModelParams, RunError> {
    let lambda = config
        .lambda
        .ok_or_else(|| RunError::Usage("missing --lambda".into()))?;
    ModelParams::new(config.k, lambda).map_err(|e| usage("--lambda", e))
}

fn branch_name(b: Branch) -> &'static str {
    match b {
        Branch::Symmetric => "symmetric",
        Branch::Asymmetric => "asymmetric",
    }
}

pub fn solution_set_json(set: &SolutionSet) -> Value {
    json!({
        "graph": set.graph.name(),
        "k": set.params.k,
        "lambda": round_sig(set.params.lambda),
        "count": set.count,
        "empirical_count": set.empirical,
        "solutions": set.solutions.iter().map(|s| json!({
            "z1": round_sig(s.z.z1),
            "z2": round_sig(s.z.z2),
            "branch": branch_name(s.branch),
            "residual": round_sig(s.residual_norm),
            "note": s.multiplicity_note,
        })).collect::<Vec<_>>(),
    })
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value serializes");
    s.push('\n');
    s
}

fn run_solve(config: &RunConfig) -> Result<String, RunError> {
    let p = params(config)?;
    let set = solve_all(config.graph, &p).map_err(failure)?;
    let mut out = String::new();
    match config.format {
        Format::Json => out = pretty(&solution_set_json(&set)),
        Format::Csv => {
            out.push_str("z1,z2,branch,residual\n");
            for s in &set.solutions {
                let _ = writeln!(
                    out,
                    "{},{},{},{}",
                    fmt_sig(s.z.z1),
                    fmt_sig(s.z.z2),
                    branch_name(s.branch),
                    fmt_sig(s.residual_norm)
                );
            }
        }
        _ => {
            let _ = writeln!(out, "graph = {}", set.graph);
            let _ = writeln!(out, "k = {}", p.k);
            let _ = writeln!(out, "lambda = {}", fmt_sig(p.lambda));
            let _ = writeln!(
                out,
                "count = {}{}",
                set.count,
                if set.empirical {
                    " (empirical count)"
                } else {
                    ""
                }
            );
            for (i, s) in set.solutions.iter().enumerate() {
                let _ = write!(
                    out,
                    "solution {}: z1 = {}, z2 = {}, branch = {}, residual = {}",
                    i + 1,
                    fmt_sig(s.z.z1),
                    fmt_sig(s.z.z2),
                    branch_name(s.branch),
                    fmt_sig(s.residual_norm)
                );
                if let Some(note) = &s.multiplicity_note {
                    let _ = write!(out, " [{note}]");
                }
                out.push('\n');
            }
        }
    }
    Ok(out)
}

fn sweep_points(config: &RunConfig) -> Result<Vec<SweepPoint>, RunError> {
    let (lo, hi, steps) = config
        .lambda_range
        .ok_or_else(|| RunError::Usage("missing --lambda-min/--lambda-max".into()))?;
    sweep(config.graph, config.k, &linear_grid(lo, hi, steps)).map_err(failure)
}

fn run_sweep(config: &RunConfig) -> Result<String, RunError> {
    let points = sweep_points(config)?;
    Ok(match config.format {
        Format::Csv => sweep_csv(&points),
        Format::Svg => sweep_svg(
            &points,
            &format!(
                "{} model, k = {}: z1 of translation-invariant solutions",
                config.graph, config.k
            ),
        ),
        Format::Json => pretty(&json!({
            "graph": config.graph.name(),
            "k": config.k,
            "points": points.iter().map(|p| match &p.outcome {
                Ok(r) => json!({
                    "lambda": round_sig(p.lambda),
                    "count": r.count,
                    "z1": r.z1_values.iter().map(|&z| round_sig(z)).collect::<Vec<_>>(),
                    "empirical_count": r.empirical,
                }),
                Err(e) => json!({ "lambda": round_sig(p.lambda), "error": e }),
            }).collect::<Vec<_>>(),
        })),
        Format::Text => {
            let mut out = String::new();
            for p in &points {
                match &p.outcome {
                    Ok(r) => {
                        let zs: Vec<String> = r.z1_values.iter().map(|&z| fmt_sig(z)).collect();
                        let _ = writeln!(
                            out,
                            "lambda = {}: count = {}, z1 = [{}]",
                            fmt_sig(p.lambda),
                            r.count,
                            zs.join(", ")
                        );
                    }
                    Err(e) => {
                        let _ = writeln!(out, "lambda = {}: error: {e}", fmt_sig(p.lambda));
                    }
                }
            }
            out
        }
    })
}

fn run_critical(config: &RunConfig) -> Result<String, RunError> {
    let cp = find_lambda_cr(config.graph, config.k).map_err(failure)?;
    Ok(match config.format {
        Format::Json => pretty(&json!({
            "graph": cp.graph.name(),
            "k": cp.k,
            "lambda_cr": round_sig(cp.lambda_cr),
            "x_star": round_sig(cp.x_star),
            "z_star": [round_sig(cp.z_star.z1), round_sig(cp.z_star.z2)],
        })),
        _ => format!(
            "graph = {}\nk = {}\nlambda_cr = {}\nx_star = {}\nz_star = ({}, {})\n",
            cp.graph,
            cp.k,
            fmt_sig(cp.lambda_cr),
            fmt_sig(cp.x_star),
            fmt_sig(cp.z_star.z1),
            fmt_sig(cp.z_star.z2)
        ),
    })
}

fn run_convexity(config: &RunConfig) -> Result<String, RunError> {
    let grid = default_convexity_grid();
    let report = verify_convexity_loop_k3(&grid).map_err(failure)?;
    let roots: Vec<String> = report
        .alpha_positive_roots
        .iter()
        .map(|&r| fmt_sig(r))
        .collect();
    Ok(match config.format {
        Format::Json => pretty(&json!({
            "grid_points": report.grid_len,
            "violations": report.violations.len(),
            "min_second_difference": round_sig(report.min_second_difference),
            "second_difference_at_x_star": round_sig(report.second_difference_at_x_star),
            "alpha_at_one": report.alpha_at_one,
            "alpha_positive_roots": report.alpha_positive_roots.iter().map(|&r| round_sig(r)).collect::<Vec<_>>(),
            "alpha_positive_beyond_cbrt2": report.alpha_positive_beyond_cbrt2,
        })),
        _ => format!(
            "grid points = {}\nviolations = {}\nmin second difference = {}\nsecond difference at x* = {}\nalpha(1) = {}\nalpha positive roots = [{}]\nalpha > 0 where x^3 > 2: {}\n",
            report.grid_len,
            report.violations.len(),
            fmt_sig(report.min_second_difference),
            fmt_sig(report.second_difference_at_x_star),
            report.alpha_at_one,
            roots.join(", "),
            report.alpha_positive_beyond_cbrt2
        ),
    })
}

fn run_verify(config: &RunConfig) -> Result<(String, bool), RunError> {
    let p = params(config)?;
    let depth = config.depth.unwrap_or(2);
    let set = solve_all(config.graph, &p).map_err(failure)?;
    let mut defects = Vec::with_capacity(set.count);
    for s in &set.solutions {
        defects.push(consistency_defect(config.graph, &p, depth, &s.z).map_err(failure)?);
    }
    let worst = defects.iter().copied().fold(0.0, f64::max);
    let pass = worst <= CONSISTENCY_TOL;
    let verdict = if pass { "PASS" } else { "FAIL" };
    let text = match config.format {
        Format::Json => pretty(&json!({
            "graph": config.graph.name(),
            "k": p.k,
            "lambda": round_sig(p.lambda),
            "depth": depth,
            "solutions": set.solutions.iter().zip(&defects).map(|(s, d)| json!({
                "z1": round_sig(s.z.z1),
                "z2": round_sig(s.z.z2),
                "defect": round_sig(*d),
            })).collect::<Vec<_>>(),
            "defect": round_sig(worst),
            "pass": pass,
        })),
        _ => {
            let mut out = String::new();
            for (i, (s, d)) in set.solutions.iter().zip(&defects).enumerate() {
                let _ = writeln!(
                    out,
                    "solution {}: z = ({}, {}), defect = {}",
                    i + 1,
                    fmt_sig(s.z.z1),
                    fmt_sig(s.z.z2),
                    fmt_sig(*d)
                );
            }
            let _ = writeln!(out, "defect = {}; {verdict}", fmt_sig(worst));
            out
        }
    };
    Ok((text, pass))
}

/// Runs a validated configuration and returns the artifact text.
/// A failed consistency check still returns its report, as `Failure`
/// carrying the full text.
pub fn run(config: &RunConfig) -> Result<String, RunError> {
    match config.command {
        CommandKind::Solve => run_solve(config),
        CommandKind::Sweep => run_sweep(config),
        CommandKind::Critical => run_critical(config),
        CommandKind::Convexity => run_convexity(config),
        CommandKind::VerifyConsistency => {
            let (text, pass) = run_verify(config)?;
            if pass {
                Ok(text)
            } else {
                Err(RunError::Failure(text))
            }
        }
    }
}

/// Parses `args`, runs, and writes the artifact to `--out` or `stdout`.
/// Diagnostics go to `stderr`. Returns the process exit status.
pub fn main_with_args<I, T>(
    args: I,
    stdout: &mut dyn std::io::Write,
    stderr: &mut dyn std::io::Write,
) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(
                e.kind(),
                ErrorKind::DisplayHelp
                    | ErrorKind::DisplayVersion
                    | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand
            ) {
                let _ = write!(stdout, "{e}");
                return if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand {
                    EXIT_USAGE
                } else {
                    EXIT_OK
                };
            }
            let rendered = e.to_string();
            let line = rendered
                .lines()
                .next()
                .unwrap_or("error: invalid arguments");
            let _ = writeln!(stderr, "{line}");
            return EXIT_USAGE;
        }
    };
    let config = match RunConfig::from_cli(cli) {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(stderr, "error: {}", e.message());
            return e.exit_code();
        }
    };
    let (text, code) = match run(&config) {
        Ok(text) => (text, EXIT_OK),
        Err(RunError::Failure(text))
            if config.command == CommandKind::VerifyConsistency && text.contains("defect =") =>
        {
            (text, EXIT_FAILURE)
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {}", e.message());
            return e.exit_code();
        }
    };
    match &config.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                let _ = writeln!(stderr, "error: cannot write {}: {e}", path.display());
                return EXIT_FAILURE;
            }
        }
        None => {
            let _ = stdout.write_all(text.as_bytes());
        }
    }
    code
}
