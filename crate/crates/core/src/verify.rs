//! Residual checks of candidate solutions
//!
//! A candidate N is substituted back into N - N₀ f + c^v D^{-v} N = 0 with
//! D^{-v} N from product quadrature on the grid. Only quadrature and direct
//! series evaluation are involved, never the transform that produced the
//! candidate.

use log::{debug, warn};
use serde::Serialize;

use crate::error::Result;
use crate::fractional::{Grid, RlOperator};
use crate::kinetic::{build_solution_to, eval_on, KineticProblem, Mode, SolutionSeries};

/// A mode passes when its max residual is at most this fraction of the
/// forcing scale.
pub const TOLERANCE: f64 = 1e-4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    PaperStatedPasses,
    CorrectedPasses,
    BothPass,
    NeitherPass,
}

impl Verdict {
    fn from_passes(paper: bool, corrected: bool) -> Self {
        match (paper, corrected) {
            (true, true) => Verdict::BothPass,
            (true, false) => Verdict::PaperStatedPasses,
            (false, true) => Verdict::CorrectedPasses,
            (false, false) => Verdict::NeitherPass,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Verdict::PaperStatedPasses => "paper-stated-passes",
            Verdict::CorrectedPasses => "corrected-passes",
            Verdict::BothPass => "both-pass",
            Verdict::NeitherPass => "neither-pass",
        }
    }

    /// Whether `mode` is among the passing modes.
    pub fn passes(self, mode: Mode) -> bool {
        matches!(
            (self, mode),
            (Verdict::BothPass, _)
                | (Verdict::PaperStatedPasses, Mode::PaperStated)
                | (Verdict::CorrectedPasses, Mode::Corrected)
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GridSummary {
    pub n: usize,
    pub t_min: f64,
    pub t_max: f64,
    pub max_spacing: f64,
}

impl From<&Grid> for GridSummary {
    fn from(g: &Grid) -> Self {
        GridSummary {
            n: g.len(),
            t_min: g.t_min(),
            t_max: g.t_max(),
            max_spacing: g.max_spacing(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ResidualReport {
    pub problem: KineticProblem,
    pub mode: Mode,
    pub grid: GridSummary,
    /// N - N₀ f + c^v D^{-v} N at each grid point.
    #[serde(skip)]
    pub residual: Vec<f64>,
    pub max_abs: f64,
    /// max |N₀ f| over the grid.
    pub scale: f64,
    /// Richardson estimate of the quadrature error, from the grid with every
    /// other point dropped.
    pub quadrature_error: f64,
    /// The quadrature estimate exceeds half the pass tolerance.
    pub grid_too_coarse: bool,
}

impl ResidualReport {
    /// max_abs / scale, or max_abs itself when the forcing vanishes.
    pub fn relative(&self) -> f64 {
        if self.scale > 0.0 {
            self.max_abs / self.scale
        } else {
            self.max_abs
        }
    }
}

/// Residual of the solution built in `mode`.
pub fn residual(problem: &KineticProblem, mode: Mode, grid: &Grid) -> Result<ResidualReport> {
    let sol = build_solution_to(problem, mode, grid.t_max())?;
    residual_of_series(problem, &sol, grid)
}

fn max_abs(values: &[f64]) -> f64 {
    values
        .iter()
        .map(|r| if r.is_nan() { f64::INFINITY } else { r.abs() })
        .fold(0.0, f64::max)
}

fn rl_on(grid: &Grid, v: f64, samples: &[f64]) -> Result<Vec<f64>> {
    RlOperator::new(grid, v)?.apply(samples)
}

/// Residual of an arbitrary candidate series.
pub fn residual_of_series(
    problem: &KineticProblem,
    sol: &SolutionSeries,
    grid: &Grid,
) -> Result<ResidualReport> {
    problem.validate()?;
    let mut times = Vec::with_capacity(grid.len() + 1);
    times.push(0.0);
    times.extend_from_slice(grid.points());
    let n = eval_on(sol, &times)?;
    let f = problem.forcing_on(grid.points())?;
    let cv = problem.relax.powf(problem.v);
    let integral = rl_on(grid, problem.v, &n)?;

    let residual: Vec<f64> = (0..grid.len())
        .map(|i| n[i + 1] - problem.n0 * f[i] + cv * integral[i])
        .collect();
    let scale = max_abs(&f) * problem.n0.abs();

    let quadrature_error = match grid.coarsen() {
        Some(coarse) => {
            let samples: Vec<f64> = std::iter::once(n[0])
                .chain(n[1..].iter().skip(1).step_by(2).copied())
                .collect();
            let rough = rl_on(&coarse, problem.v, &samples)?;
            let diffs: Vec<f64> = rough
                .iter()
                .enumerate()
                .map(|(j, r)| cv * (r - integral[2 * j + 1]) / 3.0)
                .collect();
            max_abs(&diffs)
        }
        None => f64::INFINITY,
    };
    let grid_too_coarse = quadrature_error > 0.5 * TOLERANCE * scale;
    if grid_too_coarse {
        warn!(
            "quadrature error estimate {quadrature_error:e} exceeds half the tolerance on a {}-point grid",
            grid.len()
        );
    }
    Ok(ResidualReport {
        problem: *problem,
        mode: sol.mode,
        grid: grid.into(),
        max_abs: max_abs(&residual),
        residual,
        scale,
        quadrature_error,
        grid_too_coarse,
    })
}

/// One candidate on the base grid and on its 2x refinement.
#[derive(Clone, Debug, Serialize)]
pub struct ModeOutcome {
    pub report: ResidualReport,
    pub refined_max_abs: f64,
    pub passes: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Adjudication {
    pub paper_stated: ModeOutcome,
    pub corrected: ModeOutcome,
    pub verdict: Verdict,
    pub tolerance: f64,
}

impl Adjudication {
    pub fn outcome(&self, mode: Mode) -> &ModeOutcome {
        match mode {
            Mode::PaperStated => &self.paper_stated,
            Mode::Corrected => &self.corrected,
        }
    }
}

/// Both modes with the default tolerance.
pub fn adjudicate(problem: &KineticProblem, grid: &Grid) -> Result<Adjudication> {
    adjudicate_with(problem, grid, TOLERANCE)
}

pub fn adjudicate_with(
    problem: &KineticProblem,
    grid: &Grid,
    tolerance: f64,
) -> Result<Adjudication> {
    let horizon = grid.t_max();
    let paper = build_solution_to(problem, Mode::PaperStated, horizon)?;
    let corrected = build_solution_to(problem, Mode::Corrected, horizon)?;
    adjudicate_series(problem, &paper, &corrected, grid, tolerance)
}

/// Adjudicates two given candidates. A candidate passes iff its max residual
/// is within `tolerance * scale` and does not grow when the grid is refined.
pub fn adjudicate_series(
    problem: &KineticProblem,
    paper: &SolutionSeries,
    corrected: &SolutionSeries,
    grid: &Grid,
    tolerance: f64,
) -> Result<Adjudication> {
    let fine = grid.refine();
    let outcome = |sol: &SolutionSeries| -> Result<ModeOutcome> {
        let report = residual_of_series(problem, sol, grid)?;
        let refined_max_abs = residual_of_series(problem, sol, &fine)?.max_abs;
        let passes =
            report.max_abs <= tolerance * report.scale && refined_max_abs <= report.max_abs;
        debug!(
            "{}: max residual {:e} (refined {:e}), scale {:e}",
            sol.mode, report.max_abs, refined_max_abs, report.scale
        );
        Ok(ModeOutcome {
            report,
            refined_max_abs,
            passes,
        })
    };
    let paper_stated = outcome(paper)?;
    let corrected = outcome(corrected)?;
    Ok(Adjudication {
        verdict: Verdict::from_passes(paper_stated.passes, corrected.passes),
        paper_stated,
        corrected,
        tolerance,
    })
}
