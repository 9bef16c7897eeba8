//! Command-line front end for the `frackin` library.
//!
//! Exit statuses: 0 on success, 1 on I/O failure, 2 on a parse error, 3 on
//! a domain or convergence error and 4 when `verify --expect` disagrees with
//! the verdict.

pub mod args;
pub mod emit;

use std::ffi::OsString;
use std::io::{self, Write};

use clap::error::ErrorKind;
use clap::Parser;
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use frackin::fractional::Grid;
use frackin::kinetic::{
    build_solution_to, corollary_params, eval_on, haubold_solution, KineticProblem, Mode,
    ProblemParams, Theorem, DEFAULT_HORIZON,
};
use frackin::special::{struve_h, struve_l, GeneralizedStruve, MittagLeffler, SeriesSpec};
use frackin::verify::{adjudicate_with, Adjudication, ModeOutcome};
use frackin::Error;

use args::{
    Cli, Command, CorollaryArgs, EvalMlfArgs, EvalStruveArgs, Format, GridArgs, HauboldArgs,
    OutputArgs, RateArgs, SolveArgs, Spacing, SpecArgs, StruveFunction, VerifyArgs,
};
use emit::{json_f64, Artifact};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_MISMATCH: i32 = 4;

/// Environment variable capping the worker thread count.
pub const THREADS_VAR: &str = "FRACKIN_THREADS";

const TABLE_POINTS: usize = 200;
const VERIFY_POINTS: usize = 2048;

struct Outcome {
    artifact: Artifact,
    format: Format,
    code: i32,
    /// Diagnostic for standard error.
    note: Option<String>,
}

/// Runs the command line `args` (program name first) against the process's
/// standard streams.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(args, &mut io::stdout().lock(), &mut io::stderr().lock())
}

pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_PARSE
                }
            };
        }
    };
    if let Err(msg) = configure_threads() {
        let _ = writeln!(err, "error: {msg}");
        return EXIT_PARSE;
    }
    let target = output_args(&cli.command).output.clone();
    let outcome = match execute(&cli.command) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_DOMAIN;
        }
    };
    if let Some(note) = &outcome.note {
        let _ = writeln!(err, "{note}");
    }
    let text = outcome.artifact.render(outcome.format);
    let written = match target {
        Some(path) => std::fs::write(&path, text).map_err(|e| (path.display().to_string(), e)),
        None => out
            .write_all(text.as_bytes())
            .and_then(|_| out.flush())
            .map_err(|e| ("standard output".to_string(), e)),
    };
    if let Err((what, e)) = written {
        let _ = writeln!(err, "error: writing {what}: {e}");
        return EXIT_IO;
    }
    outcome.code
}

fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("{THREADS_VAR} must be a positive integer, got {raw:?}"))?;
    // Fails only if a pool already exists, e.g. on a second run in-process.
    if rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .is_err()
    {
        log::debug!("thread pool already initialized; ignoring {THREADS_VAR}");
    }
    Ok(())
}

fn output_args(cmd: &Command) -> &OutputArgs {
    match cmd {
        Command::EvalStruve(a) => &a.output,
        Command::EvalMlf(a) => &a.output,
        Command::Solve(a) => &a.output,
        Command::Verify(a) => &a.output,
        Command::Corollary(a) => &a.output,
        Command::Haubold(a) => &a.output,
    }
}

fn execute(cmd: &Command) -> Result<Outcome, Error> {
    match cmd {
        Command::EvalStruve(a) => eval_struve(a),
        Command::EvalMlf(a) => eval_mlf(a),
        Command::Solve(a) => solve(a),
        Command::Verify(a) => verify(a),
        Command::Corollary(a) => corollary(a),
        Command::Haubold(a) => haubold(a),
    }
}

fn table(artifact: Artifact, output: &OutputArgs) -> Outcome {
    Outcome {
        artifact,
        format: output.format.unwrap_or(Format::Csv),
        code: EXIT_OK,
        note: None,
    }
}

fn series_spec(s: &SpecArgs) -> Result<SeriesSpec, Error> {
    let spec = SeriesSpec::new(s.lambda, s.alpha_p, s.mu, s.l)?;
    match s.sigma {
        Some(sigma) => spec.with_sigma(sigma),
        None => Ok(spec),
    }
}

fn problem_params(s: &SpecArgs, r: &RateArgs) -> ProblemParams {
    ProblemParams {
        lambda: s.lambda,
        alpha: s.alpha_p,
        mu: s.mu,
        order: s.l,
        d: r.d,
        relax: r.relax,
        v: r.v,
        n0: r.n0,
    }
}

fn build_grid(g: &GridArgs, default_n: usize) -> Result<Grid, Error> {
    let n = g.n.unwrap_or(default_n);
    match (g.spacing, g.tmin) {
        (Spacing::Uniform, None) => Grid::uniform_from_origin(g.tmax, n),
        (Spacing::Uniform, Some(t_min)) => Grid::uniform(t_min, g.tmax, n),
        (Spacing::Log, t_min) => {
            let t_min = t_min.unwrap_or(g.tmax / n.max(1) as f64);
            Grid::log_spaced(t_min, g.tmax, n)
        }
        (Spacing::Graded, None) => Grid::graded(g.tmax, n, 2.0),
        (Spacing::Graded, Some(_)) => Err(Error::InvalidGrid(
            "graded grids start at the origin; --tmin does not apply".into(),
        )),
    }
}

fn grid_meta(g: &Grid, spacing: Spacing) -> Value {
    let spacing = match spacing {
        Spacing::Uniform => "uniform",
        Spacing::Log => "log",
        Spacing::Graded => "graded",
    };
    json!({
        "spacing": spacing,
        "n": g.len(),
        "t_min": json_f64(g.t_min()),
        "t_max": json_f64(g.t_max()),
        "max_spacing": json_f64(g.max_spacing()),
    })
}

fn spec_meta(s: &SeriesSpec) -> Value {
    json!({
        "lambda": json_f64(s.lambda),
        "alpha": json_f64(s.alpha),
        "mu": json_f64(s.mu),
        "order": json_f64(s.order),
        "sigma": json_f64(s.sigma),
    })
}

fn problem_meta(p: &KineticProblem) -> Value {
    let forcing = match p.forcing.spec() {
        Some(s) => spec_meta(s),
        None => Value::String("constant".into()),
    };
    json!({
        "forcing": forcing,
        "v": json_f64(p.v),
        "d": json_f64(p.d),
        "relax": json_f64(p.relax),
        "n0": json_f64(p.n0),
    })
}

fn meta(command: &str) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("command".into(), Value::String(command.into()));
    m
}

fn eval_struve(a: &EvalStruveArgs) -> Result<Outcome, Error> {
    let mut art = Artifact::new(vec!["z", "value"]);
    art.meta = meta("eval-struve");
    let values: Vec<f64> = match a.function {
        StruveFunction::Generalized => {
            let spec = series_spec(&a.spec)?;
            art.meta.insert("spec".into(), spec_meta(&spec));
            let f = GeneralizedStruve::new(spec)?;
            a.z.iter().map(|&z| f.eval(z)).collect::<Result<_, _>>()?
        }
        StruveFunction::H => {
            a.z.iter()
                .map(|&z| struve_h(a.spec.l, z))
                .collect::<Result<_, _>>()?
        }
        StruveFunction::L => {
            a.z.iter()
                .map(|&z| struve_l(a.spec.l, z))
                .collect::<Result<_, _>>()?
        }
    };
    let name = match a.function {
        StruveFunction::Generalized => "generalized",
        StruveFunction::H => "h",
        StruveFunction::L => "l",
    };
    art.meta
        .insert("function".into(), Value::String(name.into()));
    art.meta.insert("order".into(), json_f64(a.spec.l));
    art.rows = a.z.iter().zip(values).map(|(&z, y)| vec![z, y]).collect();
    Ok(table(art, &a.output))
}

fn eval_mlf(a: &EvalMlfArgs) -> Result<Outcome, Error> {
    let f = MittagLeffler::new(a.alpha, a.beta)?;
    let mut art = Artifact::new(vec!["z", "value"]);
    art.meta = meta("eval-mlf");
    art.meta.insert("alpha".into(), json_f64(a.alpha));
    art.meta.insert("beta".into(), json_f64(a.beta));
    for &z in &a.z {
        art.rows.push(vec![z, f.eval(z)?]);
    }
    Ok(table(art, &a.output))
}

fn solution_table(
    command: &str,
    problem: &KineticProblem,
    mode: Mode,
    grid_args: &GridArgs,
) -> Result<Artifact, Error> {
    let grid = build_grid(grid_args, TABLE_POINTS)?;
    let sol = build_solution_to(problem, mode, grid.t_max().max(DEFAULT_HORIZON))?;
    let values = eval_on(&sol, grid.points())?;
    let mut art = Artifact::new(vec!["t", "value"]);
    art.meta = meta(command);
    art.meta
        .insert("mode".into(), Value::String(mode.name().into()));
    art.meta.insert("problem".into(), problem_meta(problem));
    art.meta
        .insert("grid".into(), grid_meta(&grid, grid_args.spacing));
    art.rows = grid
        .points()
        .iter()
        .zip(values)
        .map(|(&t, n)| vec![t, n])
        .collect();
    art.summary.insert("terms".into(), json!(sol.len()));
    art.summary
        .insert("truncation_k".into(), json!(sol.truncation_k));
    art.summary.insert("horizon".into(), json_f64(sol.horizon));
    Ok(art)
}

fn solve(a: &SolveArgs) -> Result<Outcome, Error> {
    let problem = Theorem::from_number(a.theorem)?
        .problem(series_spec(&a.spec)?, &problem_params(&a.spec, &a.rate))?;
    let mut art = solution_table("solve", &problem, a.mode, &a.grid)?;
    art.meta.insert("theorem".into(), json!(a.theorem));
    Ok(table(art, &a.output))
}

fn corollary(a: &CorollaryArgs) -> Result<Outcome, Error> {
    let c = corollary_params(a.id)?;
    let problem = c.problem(&problem_params(&a.spec, &a.rate))?;
    let mut art = solution_table("corollary", &problem, a.mode, &a.grid)?;
    art.meta.insert("id".into(), json!(a.id));
    art.meta.insert("theorem".into(), json!(c.theorem.number()));
    art.meta.insert("family".into(), json!(c.family));
    Ok(table(art, &a.output))
}

fn haubold(a: &HauboldArgs) -> Result<Outcome, Error> {
    let grid = build_grid(&a.grid, TABLE_POINTS)?;
    let values = grid
        .points()
        .par_iter()
        .map(|&t| haubold_solution(a.n0, a.c, a.v, t))
        .collect::<Result<Vec<_>, _>>()?;
    let mut art = Artifact::new(vec!["t", "value"]);
    art.meta = meta("haubold");
    art.meta.insert("c".into(), json_f64(a.c));
    art.meta.insert("v".into(), json_f64(a.v));
    art.meta.insert("n0".into(), json_f64(a.n0));
    art.meta
        .insert("grid".into(), grid_meta(&grid, a.grid.spacing));
    art.rows = grid
        .points()
        .iter()
        .zip(values)
        .map(|(&t, n)| vec![t, n])
        .collect();
    Ok(table(art, &a.output))
}

fn outcome_summary(o: &ModeOutcome) -> Value {
    json!({
        "max_residual": json_f64(o.report.max_abs),
        "relative_residual": json_f64(o.report.relative()),
        "refined_max_residual": json_f64(o.refined_max_abs),
        "quadrature_error": json_f64(o.report.quadrature_error),
        "grid_too_coarse": o.report.grid_too_coarse,
        "passes": o.passes,
    })
}

fn verify_problem(a: &VerifyArgs) -> Result<(KineticProblem, Value), Error> {
    let params = problem_params(&a.spec, &a.rate);
    if let Some(n) = a.theorem {
        let p = Theorem::from_number(n)?.problem(series_spec(&a.spec)?, &params)?;
        Ok((p, json!({ "theorem": n })))
    } else if let Some(id) = a.corollary {
        let p = corollary_params(id)?.problem(&params)?;
        Ok((p, json!({ "corollary": id })))
    } else {
        let c = a.c.unwrap_or(a.rate.d);
        let p = KineticProblem::haubold(c, a.rate.v, a.rate.n0)?;
        Ok((p, json!({ "haubold": true })))
    }
}

fn verify(a: &VerifyArgs) -> Result<Outcome, Error> {
    if !(a.tol.is_finite() && a.tol > 0.0) {
        return Err(Error::Domain(format!(
            "tolerance must be positive, got {}",
            a.tol
        )));
    }
    let (problem, target) = verify_problem(a)?;
    let grid = build_grid(&a.grid, VERIFY_POINTS)?;
    let adj: Adjudication = adjudicate_with(&problem, &grid, a.tol)?;

    let mut art = Artifact::new(vec!["t", "residual_paper_stated", "residual_corrected"]);
    art.meta = meta("verify");
    art.meta.insert("target".into(), target);
    art.meta.insert("problem".into(), problem_meta(&problem));
    art.meta
        .insert("grid".into(), grid_meta(&grid, a.grid.spacing));
    art.rows = grid
        .points()
        .iter()
        .zip(&adj.paper_stated.report.residual)
        .zip(&adj.corrected.report.residual)
        .map(|((&t, &p), &c)| vec![t, p, c])
        .collect();
    art.summary.insert(
        "adjudication".into(),
        Value::String(adj.verdict.name().into()),
    );
    art.summary
        .insert("tolerance".into(), json_f64(adj.tolerance));
    art.summary
        .insert("scale".into(), json_f64(adj.corrected.report.scale));
    for mode in Mode::ALL {
        art.summary
            .insert(mode.name().into(), outcome_summary(adj.outcome(mode)));
    }

    let mut code = EXIT_OK;
    let mut note = None;
    if let Some(expected) = a.expect {
        art.summary
            .insert("expected".into(), Value::String(expected.name().into()));
        if !adj.verdict.passes(expected) {
            note = Some(format!(
                "error: expected {expected} to pass, verdict is {}",
                adj.verdict.name()
            ));
            code = EXIT_MISMATCH;
        }
    }
    Ok(Outcome {
        artifact: art,
        format: a.output.format.unwrap_or(Format::Json),
        code,
        note,
    })
}
