//! Command-line front end: parse a run configuration, dispatch the pipeline, map errors to exit codes.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};

use clap::{Args, Parser, Subcommand};

use crate::cdr1d::problem::export_solution;
use crate::cdr1d::{assemble_and_solve, Method, ProblemFile1D};
use crate::cdr2d::{export_solution_2d, solve_2d, ProblemFile2D};
use crate::error::{FsmError, Result};
use crate::experiments::conv1d::{EXPERIMENTS_1D, M_SEQUENCE, PARAM_SETS};
use crate::experiments::conv2d::EXPERIMENTS_2D;
use crate::experiments::green1d::{DEFAULT_A2, DEFAULT_WHOLE_M};
use crate::experiments::metrics::GRID_2D;
use crate::experiments::report::{write_experiment_1d, write_experiment_2d, write_green_1d, write_oracle};
use crate::experiments::{oracle_check_1d, oracle_check_2d, Experiment1D, Experiment2D, GreenScheme, OracleReport};
use crate::verify::{DEFAULT_NODES_1D, DEFAULT_NODES_2D};

pub const EXIT_OK: i32 = 0;
pub const EXIT_SOLVER: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "fsm", version, about = "Fourier series multiscale solver for convection-diffusion-reaction problems")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve a 1D problem from a JSON file.
    Solve1d(Solve1dArgs),
    /// Solve a 2D problem from a JSON file.
    Solve2d(Solve2dArgs),
    /// Point-source profiles by the whole-interval and subinterval schemes.
    Green1d(Green1dArgs),
    /// 1D comparative convergence experiments.
    Convergence1d(Convergence1dArgs),
    /// 2D inverse-validation convergence experiments.
    Convergence2d(Convergence2dArgs),
    /// Cross-check the series solutions against the finite-difference oracle.
    OracleCheck(OracleArgs),
}

#[derive(Debug, Args)]
pub struct OutArg {
    /// Output directory.
    #[arg(long, env = "FSM_OUT_DIR", default_value = "out")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct Solve1dArgs {
    #[arg(long)]
    pub config: PathBuf,
    #[arg(long = "M")]
    pub m: Option<usize>,
    #[arg(long = "N1s")]
    pub n1s: Option<usize>,
    #[arg(long, value_enum)]
    pub method: Option<Method>,
    /// Number of profile samples.
    #[arg(long, default_value_t = 1001)]
    pub samples: usize,
    #[command(flatten)]
    pub out: OutArg,
}

#[derive(Debug, Args)]
pub struct Solve2dArgs {
    #[arg(long)]
    pub config: PathBuf,
    #[arg(long = "M")]
    pub m: Option<usize>,
    #[arg(long = "N")]
    pub n: Option<usize>,
    /// Points per axis of the field lattice.
    #[arg(long, default_value_t = GRID_2D)]
    pub grid: usize,
    #[command(flatten)]
    pub out: OutArg,
}

#[derive(Debug, Args)]
pub struct Green1dArgs {
    /// Péclet number; all four standard parameter sets when omitted.
    #[arg(long = "Pe", requires = "da")]
    pub pe: Option<f64>,
    #[arg(long = "Da", requires = "pe")]
    pub da: Option<f64>,
    /// Both schemes when omitted.
    #[arg(long, value_enum)]
    pub scheme: Option<GreenScheme>,
    /// `M` values (whole) or `a2` values (subinterval).
    #[arg(long, value_delimiter = ',')]
    pub knobs: Vec<f64>,
    #[arg(long, default_value_t = 1001)]
    pub samples: usize,
    #[command(flatten)]
    pub out: OutArg,
}

#[derive(Debug, Args)]
pub struct Convergence1dArgs {
    /// Experiment ids; all when omitted.
    #[arg(long, value_delimiter = ',')]
    pub experiment: Vec<String>,
    /// Truncation sequence.
    #[arg(long = "M", value_delimiter = ',')]
    pub m: Vec<usize>,
    #[arg(long = "N1s")]
    pub n1s: Option<usize>,
    #[arg(long, value_enum)]
    pub method: Option<Method>,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    #[command(flatten)]
    pub out: OutArg,
}

#[derive(Debug, Args)]
pub struct Convergence2dArgs {
    #[arg(long, value_delimiter = ',')]
    pub experiment: Vec<String>,
    #[arg(long = "M", value_delimiter = ',')]
    pub m: Vec<usize>,
    /// Paired with `--M`; `N = M` when omitted.
    #[arg(long = "N", value_delimiter = ',')]
    pub n: Vec<usize>,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    #[command(flatten)]
    pub out: OutArg,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    /// 1 or 2; both when omitted.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
    pub dim: Option<u8>,
    #[arg(long, value_delimiter = ',')]
    pub experiment: Vec<String>,
    #[arg(long = "M", default_value_t = 40)]
    pub m: usize,
    /// FD nodes per axis; 20001 in 1D and 401 in 2D by default.
    #[arg(long)]
    pub nodes: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    #[command(flatten)]
    pub out: OutArg,
}

pub fn parse_args<I, T>(argv: I) -> std::result::Result<RunConfig, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    RunConfig::try_parse_from(argv)
}

/// Parses `argv`, runs the command and returns the exit status.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match parse_args(argv) {
        Ok(cfg) => dispatch(&cfg),
        Err(e) => {
            let _ = e.print();
            match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_CONFIG,
            }
        }
    }
}

pub fn exit_code(e: &FsmError) -> i32 {
    match e {
        FsmError::Config(_) | FsmError::Json(_) | FsmError::Io(_) => EXIT_CONFIG,
        _ => EXIT_SOLVER,
    }
}

pub fn dispatch(cfg: &RunConfig) -> i32 {
    let outcome = match &cfg.command {
        Command::Solve1d(a) => solve1d(a),
        Command::Solve2d(a) => solve2d(a),
        Command::Green1d(a) => green1d(a),
        Command::Convergence1d(a) => convergence1d(a),
        Command::Convergence2d(a) => convergence2d(a),
        Command::OracleCheck(a) => oracle_check(a),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn solve1d(a: &Solve1dArgs) -> Result<i32> {
    let mut file = ProblemFile1D::load(&a.config)?;
    if let Some(m) = a.m {
        file.m = m;
    }
    if let Some(n1s) = a.n1s {
        file.n1s = n1s;
    }
    if let Some(method) = a.method {
        file.method = method;
    }
    let sol = assemble_and_solve(&file.to_problem()?)?;
    export_solution(&sol, &a.out.out, a.samples)?;
    let d = sol.diagnostics;
    println!(
        "solved: M = {}, boundary cond = {:.3e}, particular cond = {:.3e}, bc residuals = [{:.3e}, {:.3e}]",
        file.m, d.rf_cond, d.particular_cond, d.bc_residuals[0], d.bc_residuals[1]
    );
    Ok(EXIT_OK)
}

fn solve2d(a: &Solve2dArgs) -> Result<i32> {
    let mut file = ProblemFile2D::load(&a.config)?;
    if let Some(m) = a.m {
        file.m = m;
    }
    if let Some(n) = a.n {
        file.n = n;
    }
    let sol = solve_2d(&file.to_problem()?)?;
    export_solution_2d(&sol, &a.out.out, a.grid)?;
    let d = sol.diagnostics;
    println!(
        "solved: M = {}, N = {}, {} x {} system, residual = {:.3e} (data {:.3e}), cond = {:.3e}",
        file.m, file.n, d.rows, d.cols, d.residual_norm, d.data_norm, d.cond
    );
    if d.poorly_resolved {
        println!("note: boundary data not fully resolved at this truncation");
    }
    Ok(EXIT_OK)
}

fn green1d(a: &Green1dArgs) -> Result<i32> {
    let sets: Vec<(f64, f64)> = match (a.pe, a.da) {
        (Some(pe), Some(da)) => vec![(pe, da)],
        _ => PARAM_SETS.to_vec(),
    };
    let schemes = match a.scheme {
        Some(s) => vec![s],
        None => vec![GreenScheme::Whole, GreenScheme::Subinterval],
    };
    for (pe, da) in sets {
        for &scheme in &schemes {
            let knobs = if !a.knobs.is_empty() {
                a.knobs.clone()
            } else {
                match scheme {
                    GreenScheme::Whole => DEFAULT_WHOLE_M.iter().map(|&m| m as f64).collect(),
                    GreenScheme::Subinterval => DEFAULT_A2.to_vec(),
                }
            };
            if scheme == GreenScheme::Whole && knobs.iter().any(|k| k.fract() != 0.0 || *k < 1.0) {
                return Err(FsmError::config("whole-interval knobs are truncations M >= 1"));
            }
            write_green_1d(pe, da, scheme, &knobs, a.samples.max(2), &a.out.out)?;
            println!("green1d: Pe = {pe}, Da = {da}, {scheme:?}: {} profiles", knobs.len());
        }
    }
    Ok(EXIT_OK)
}

fn ids<'a>(requested: &'a [String], all: &'a [&'a str]) -> Vec<&'a str> {
    if requested.is_empty() {
        all.to_vec()
    } else {
        requested.iter().map(String::as_str).collect()
    }
}

/// Runs `f` over `items` on up to `jobs` threads; results keep the input order.
fn run_parallel<T: Sync, R: Send>(items: &[T], jobs: usize, f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    let next = AtomicUsize::new(0);
    let mut slots: Vec<Option<R>> = (0..items.len()).map(|_| None).collect();
    let results = std::sync::Mutex::new(&mut slots);
    std::thread::scope(|s| {
        for _ in 0..jobs.clamp(1, items.len().max(1)) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= items.len() {
                    break;
                }
                let r = f(&items[i]);
                results.lock().unwrap()[i] = Some(r);
            });
        }
    });
    slots.into_iter().map(|r| r.expect("every item is processed")).collect()
}

/// Reports every outcome, returning the first error after all items ran.
fn finish(results: Vec<Result<String>>) -> Result<i32> {
    let mut first = None;
    for r in results {
        match r {
            Ok(line) => println!("{line}"),
            Err(e) => {
                eprintln!("error: {e}");
                first.get_or_insert(e);
            }
        }
    }
    first.map_or(Ok(EXIT_OK), Err)
}

fn convergence1d(a: &Convergence1dArgs) -> Result<i32> {
    let mut exps = Vec::new();
    for id in ids(&a.experiment, &EXPERIMENTS_1D) {
        let mut e = Experiment1D::by_id(id)?;
        if let Some(n1s) = a.n1s {
            e.n1s = n1s;
        }
        if let Some(method) = a.method {
            e.method = method;
        }
        exps.push(e);
    }
    let ms = if a.m.is_empty() { M_SEQUENCE.to_vec() } else { a.m.clone() };
    let results = run_parallel(&exps, a.jobs, |e| {
        let curve = write_experiment_1d(e, &ms, &a.out.out)?;
        Ok(summary(&e.id, &a.out.out, &curve))
    });
    finish(results)
}

fn convergence2d(a: &Convergence2dArgs) -> Result<i32> {
    let exps: Vec<Experiment2D> =
        ids(&a.experiment, &EXPERIMENTS_2D).into_iter().map(Experiment2D::by_id).collect::<Result<_>>()?;
    let ms = if a.m.is_empty() { M_SEQUENCE.to_vec() } else { a.m.clone() };
    let truncations: Vec<(usize, usize)> = if a.n.is_empty() {
        ms.iter().map(|&m| (m, m)).collect()
    } else if a.n.len() == ms.len() {
        ms.iter().copied().zip(a.n.iter().copied()).collect()
    } else {
        return Err(FsmError::config(format!("--N lists {} values but --M lists {}", a.n.len(), ms.len())));
    };
    let results = run_parallel(&exps, a.jobs, |e| {
        let curve = write_experiment_2d(e, &truncations, &a.out.out)?;
        Ok(summary(&e.id, &a.out.out, &curve))
    });
    finish(results)
}

fn summary(id: &str, out: &Path, curve: &crate::experiments::ConvergenceCurve) -> String {
    let last = curve.points.last().map(|p| p.report.errors[0].overall).unwrap_or(f64::NAN);
    format!("{id}: {} points, final overall phi error {last:.3e} -> {}", curve.points.len(), out.join(id).display())
}

fn oracle_line(r: &OracleReport) -> String {
    format!(
        "{}D {:<3} M = {} nodes = {}: fsm-fd {:.3e}  fd-exact {:.3e}  fsm-exact {:.3e}  tol {:.0e}  {}",
        r.dim,
        r.id,
        r.m,
        r.nodes,
        r.fsm_vs_fd,
        r.fd_vs_exact,
        r.fsm_vs_exact,
        r.tolerance,
        if r.pass { "PASS" } else { "FAIL" }
    )
}

fn oracle_check(a: &OracleArgs) -> Result<i32> {
    enum Job {
        One(Experiment1D),
        Two(Experiment2D),
    }
    let mut jobs = Vec::new();
    if a.dim.is_none_or(|d| d == 1) {
        for id in ids(&a.experiment, &EXPERIMENTS_1D) {
            jobs.push(Job::One(Experiment1D::by_id(id)?));
        }
    }
    if a.dim.is_none_or(|d| d == 2) {
        for id in ids(&a.experiment, &EXPERIMENTS_2D) {
            jobs.push(Job::Two(Experiment2D::by_id(id)?));
        }
    }
    let results = run_parallel(&jobs, a.jobs, |j| {
        let r = match j {
            Job::One(e) => oracle_check_1d(e, a.m, a.nodes.unwrap_or(DEFAULT_NODES_1D))?,
            Job::Two(e) => oracle_check_2d(e, a.m, a.nodes.unwrap_or(DEFAULT_NODES_2D))?,
        };
        write_oracle(&r, &a.out.out)?;
        Ok(r)
    });
    let mut failed = 0;
    let mut first_err = None;
    for r in results {
        match r {
            Ok(r) => {
                println!("{}", oracle_line(&r));
                failed += usize::from(!r.pass);
            }
            Err(e) => {
                eprintln!("error: {e}");
                first_err.get_or_insert(e);
            }
        }
    }
    if let Some(e) = first_err {
        return Err(e);
    }
    if failed > 0 {
        eprintln!("{failed} configuration(s) outside the oracle tolerance");
        return Ok(EXIT_SOLVER);
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solve1d_overrides_parse() {
        let cfg = parse_args(["fsm", "solve1d", "--config", "p.json", "--M", "40", "--method", "fccm", "--out", "out/"])
            .unwrap();
        match cfg.command {
            Command::Solve1d(a) => {
                assert_eq!(a.m, Some(40));
                assert_eq!(a.method, Some(Method::Fccm));
                assert_eq!(a.out.out, PathBuf::from("out/"));
            }
            _ => panic!("wrong command"),
        }
    }

    #[test]
    fn missing_command_is_usage_error() {
        assert_eq!(run(["fsm"]), EXIT_CONFIG);
        assert_eq!(run(["fsm", "frobnicate"]), EXIT_CONFIG);
    }

    #[test]
    fn convergence_lists() {
        let cfg = parse_args(["fsm", "convergence2d", "--experiment", "3c", "--M", "20,20", "--N", "20,40"]).unwrap();
        match cfg.command {
            Command::Convergence2d(a) => {
                assert_eq!(a.experiment, vec!["3c"]);
                assert_eq!(a.n, vec![20, 40]);
            }
            _ => panic!("wrong command"),
        }
    }

    #[test]
    fn parallel_keeps_order() {
        let items: Vec<usize> = (0..17).collect();
        assert_eq!(run_parallel(&items, 4, |i| i * i), items.iter().map(|i| i * i).collect::<Vec<_>>());
    }

    #[test]
    fn error_classes() {
        assert_eq!(exit_code(&FsmError::config("x")), EXIT_CONFIG);
        assert_eq!(exit_code(&FsmError::ResonantMode { m: 1, n: 1 }), EXIT_SOLVER);
    }
}
