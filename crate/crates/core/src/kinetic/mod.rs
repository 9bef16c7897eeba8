//! Series solutions of the fractional kinetic equation
//!
//! N(t) - N₀ f(t) = -c^v D^{-v} N(t)
//!
//! with a Struve-type forcing f. Writing the forcing as Σ_k a_k t^{w_k}, the
//! equation is solved term by term: a forcing term t^w contributes
//! Γ(w+1) t^w E_{v,w+1}(-c^v t^v).
//!
//! Two candidate forms are built. `Corrected` is the term-wise solution
//! above. `PaperStated` is the published closed form, whose powers and second
//! Mittag-Leffler indices are both one lower (with the same coefficients).
//! Neither is assumed right here; [`crate::verify`] substitutes both back into
//! the equation.

mod corollary;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

pub use corollary::{corollary_params, Corollary, Family, ProblemParams, Theorem};

use crate::error::{Error, Result};
use crate::special::{
    ln_gamma, signed_ln_rgamma, GeneralizedStruve, MittagLeffler, SeriesSpec, ML_MAX_ARGUMENT,
};

/// Hard cap on the solution index k.
pub const K_CAP: usize = 200;
/// Time horizon solutions are built for unless told otherwise.
pub const DEFAULT_HORIZON: f64 = 5.0;
/// Evaluation stops once a term proxy falls below this fraction of the
/// largest one seen.
const EVAL_TOL: f64 = 1e-14;
/// Construction keeps terms until the proxy at the horizon falls below this.
const BUILD_TOL: f64 = 1e-17;

/// The forcing function f(t) on the right-hand side.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", content = "spec", rename_all = "kebab-case")]
pub enum Forcing {
    /// f ≡ 1: the classical fractional relaxation equation.
    Constant,
    /// f(t) = H(t), the generalized Struve series at t.
    PlainTime(SeriesSpec),
    /// f(t) = H(d^v t^v).
    PoweredTime(SeriesSpec),
}

impl Forcing {
    pub fn spec(&self) -> Option<&SeriesSpec> {
        match self {
            Forcing::Constant => None,
            Forcing::PlainTime(s) | Forcing::PoweredTime(s) => Some(s),
        }
    }
}

/// Which closed form to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    PaperStated,
    Corrected,
}

impl Mode {
    pub const ALL: [Mode; 2] = [Mode::PaperStated, Mode::Corrected];

    pub fn name(self) -> &'static str {
        match self {
            Mode::PaperStated => "paper-stated",
            Mode::Corrected => "corrected",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper-stated" | "paper" | "paperstated" => Ok(Mode::PaperStated),
            "corrected" => Ok(Mode::Corrected),
            _ => Err(Error::domain(format!(
                "unknown mode {s:?}; expected paper-stated or corrected"
            ))),
        }
    }
}

/// One instance of the kinetic equation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct KineticProblem {
    pub forcing: Forcing,
    /// Fractional order, 0 < v <= 2.
    pub v: f64,
    /// Rate inside a powered-time forcing.
    pub d: f64,
    /// Relaxation rate c in front of D^{-v}.
    pub relax: f64,
    /// Initial density N₀.
    pub n0: f64,
}

impl KineticProblem {
    pub fn new(forcing: Forcing, v: f64, d: f64, relax: f64, n0: f64) -> Result<Self> {
        let p = KineticProblem {
            forcing,
            v,
            d,
            relax,
            n0,
        };
        p.validate()?;
        Ok(p)
    }

    /// f = H(t), relaxation rate d.
    pub fn theorem1(spec: SeriesSpec, d: f64, v: f64, n0: f64) -> Result<Self> {
        Self::new(Forcing::PlainTime(spec), v, d, d, n0)
    }

    /// f = H(d^v t^v), relaxation rate d.
    pub fn theorem2(spec: SeriesSpec, d: f64, v: f64, n0: f64) -> Result<Self> {
        Self::new(Forcing::PoweredTime(spec), v, d, d, n0)
    }

    /// f = H(d^v t^v) with a distinct relaxation rate.
    pub fn theorem3(spec: SeriesSpec, d: f64, relax: f64, v: f64, n0: f64) -> Result<Self> {
        if relax == d {
            return Err(Error::domain(
                "the distinct-rate form needs relax != d; use theorem2 for relax = d",
            ));
        }
        Self::new(Forcing::PoweredTime(spec), v, d, relax, n0)
    }

    /// Constant forcing with relaxation rate c.
    pub fn haubold(c: f64, v: f64, n0: f64) -> Result<Self> {
        Self::new(Forcing::Constant, v, c, c, n0)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.v > 0.0 && self.v <= 2.0) {
            return Err(Error::domain(format!(
                "order v must be in (0, 2], got {}",
                self.v
            )));
        }
        if !(self.d > 0.0) || !self.d.is_finite() {
            return Err(Error::domain(format!("rate d must be > 0, got {}", self.d)));
        }
        if !(self.relax > 0.0) || !self.relax.is_finite() {
            return Err(Error::domain(format!(
                "relaxation rate must be > 0, got {}",
                self.relax
            )));
        }
        if !self.n0.is_finite() {
            return Err(Error::domain(format!("N0 must be finite, got {}", self.n0)));
        }
        if let Some(spec) = self.forcing.spec() {
            spec.validate()?;
        }
        Ok(())
    }

    /// Struve argument at time t.
    fn argument(&self, t: f64) -> f64 {
        match self.forcing {
            Forcing::PoweredTime(_) => (self.d * t).powf(self.v),
            _ => t,
        }
    }

    /// f(t) at each time (the origin allowed), evaluated in parallel.
    pub fn forcing_on(&self, times: &[f64]) -> Result<Vec<f64>> {
        let spec = match self.forcing {
            Forcing::Constant => return Ok(vec![1.0; times.len()]),
            Forcing::PlainTime(s) | Forcing::PoweredTime(s) => s,
        };
        let t_max = times.iter().copied().fold(0.0, f64::max);
        let h = GeneralizedStruve::with_bound(spec, self.argument(t_max))?;
        times
            .par_iter()
            .map(|&t| h.eval(self.argument(t)))
            .collect()
    }

    pub fn forcing_at(&self, t: f64) -> Result<f64> {
        Ok(self.forcing_on(&[t])?[0])
    }
}

/// One term coeff · t^power · E_{v,ml_beta}(-rate^v t^v).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Term {
    pub coeff: f64,
    pub power: f64,
    pub ml_beta: f64,
}

/// A truncated series solution.
#[derive(Clone, Debug, Serialize)]
pub struct SolutionSeries {
    pub terms: Vec<Term>,
    pub ml_alpha: f64,
    pub rate: f64,
    pub truncation_k: usize,
    pub mode: Mode,
    /// Largest t the truncation was chosen for.
    pub horizon: f64,
    /// Whether the stored terms reach the truncation tolerance at the horizon.
    #[serde(skip)]
    complete: bool,
    #[serde(skip)]
    ln_gamma_beta: Vec<f64>,
    #[serde(skip)]
    evaluators: Vec<MittagLeffler>,
}

impl PartialEq for SolutionSeries {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
            && self.ml_alpha == other.ml_alpha
            && self.rate == other.rate
            && self.truncation_k == other.truncation_k
            && self.mode == other.mode
            && self.horizon == other.horizon
    }
}

impl SolutionSeries {
    /// Assembles a series from explicit terms, e.g. a hand-modified one. The
    /// terms are taken as the complete solution up to `horizon`.
    pub fn from_terms(
        terms: Vec<Term>,
        ml_alpha: f64,
        rate: f64,
        mode: Mode,
        horizon: f64,
    ) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::domain("a solution series needs at least one term"));
        }
        if !(ml_alpha > 0.0) || !(rate > 0.0) {
            return Err(Error::domain(
                "solution series needs ml_alpha > 0 and rate > 0",
            ));
        }
        let z_bound = (rate * horizon).powf(ml_alpha).min(ML_MAX_ARGUMENT);
        let evaluators = terms
            .iter()
            .map(|t| MittagLeffler::with_bound(ml_alpha, t.ml_beta, z_bound))
            .collect::<Result<Vec<_>>>()?;
        let ln_gamma_beta = terms
            .iter()
            .map(|t| signed_ln_rgamma(t.ml_beta).map_or(f64::INFINITY, |(_, l)| -l))
            .collect();
        Ok(SolutionSeries {
            truncation_k: terms.len() - 1,
            terms,
            ml_alpha,
            rate,
            mode,
            horizon,
            complete: true,
            ln_gamma_beta,
            evaluators,
        })
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// lim_{t→0+} N(t): zero when every power is positive, infinite when the
    /// leading power is negative.
    pub fn origin_limit(&self) -> f64 {
        let Some(lead) = self.terms.iter().find(|t| t.coeff != 0.0) else {
            return 0.0;
        };
        if lead.power > 0.0 {
            0.0
        } else if lead.power == 0.0 {
            lead.coeff * crate::special::reciprocal_gamma(lead.ml_beta)
        } else {
            lead.coeff.signum() * f64::INFINITY
        }
    }
}

/// The solution series for t up to [`DEFAULT_HORIZON`].
pub fn build_solution(problem: &KineticProblem, mode: Mode) -> Result<SolutionSeries> {
    build_solution_to(problem, mode, DEFAULT_HORIZON)
}

/// The solution series, truncated so it converges for 0 < t <= `horizon`.
pub fn build_solution_to(
    problem: &KineticProblem,
    mode: Mode,
    horizon: f64,
) -> Result<SolutionSeries> {
    problem.validate()?;
    if !(horizon > 0.0) || !horizon.is_finite() {
        return Err(Error::domain(format!("horizon must be > 0, got {horizon}")));
    }
    let v = problem.v;
    let spec = match problem.forcing {
        Forcing::Constant => {
            let term = Term {
                coeff: problem.n0,
                power: 0.0,
                ml_beta: 1.0,
            };
            return SolutionSeries::from_terms(vec![term], v, problem.relax, mode, horizon);
        }
        Forcing::PlainTime(s) | Forcing::PoweredTime(s) => s,
    };
    let powered = matches!(problem.forcing, Forcing::PoweredTime(_));
    // ln of the forcing's scale per unit of p = 2k + l + 1: the series runs in
    // (t/2)^p or (d^v t^v / 2)^p.
    let ln_scale = if powered {
        v * problem.d.ln() - std::f64::consts::LN_2
    } else {
        -std::f64::consts::LN_2
    };
    let ln_horizon = horizon.ln();
    let mut terms = Vec::new();
    let mut peak = f64::NEG_INFINITY;
    let mut complete = false;
    for k in 0..=K_CAP {
        let kf = k as f64;
        let p = 2.0 * kf + spec.order + 1.0;
        // forcing term t^w
        let w = if powered { p * v } else { p };
        let (power, ml_beta) = match mode {
            Mode::Corrected => (w, w + 1.0),
            Mode::PaperStated => (w - 1.0, w),
        };
        let coeff = match (
            signed_ln_rgamma(spec.alpha * kf + spec.mu),
            signed_ln_rgamma(spec.lambda * kf + spec.sigma),
        ) {
            (Some((s1, l1)), Some((s2, l2))) if problem.n0 != 0.0 => {
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 } * s1 * s2 * problem.n0.signum();
                let ln = problem.n0.abs().ln() + l1 + l2 + p * ln_scale + ln_gamma(w + 1.0)?;
                let c = sign * ln.exp();
                if !c.is_finite() {
                    return Err(Error::NonFinite(format!(
                        "solution coefficient {k} overflows"
                    )));
                }
                c
            }
            _ => 0.0,
        };
        terms.push(Term {
            coeff,
            power,
            ml_beta,
        });
        if coeff != 0.0 {
            let proxy = coeff.abs().ln() + power * ln_horizon - ln_gamma(ml_beta)?;
            peak = peak.max(proxy);
            if k >= 2 && proxy < peak + BUILD_TOL.ln() {
                complete = true;
                break;
            }
        } else if problem.n0 == 0.0 {
            complete = true;
            break;
        }
    }
    let mut sol = SolutionSeries::from_terms(terms, v, problem.relax, mode, horizon)?;
    sol.complete = complete;
    Ok(sol)
}

/// N(t) for t >= 0.
pub fn eval_solution(sol: &SolutionSeries, t: f64) -> Result<f64> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::domain(format!("t must be >= 0, got {t}")));
    }
    if t == 0.0 {
        return Ok(sol.origin_limit());
    }
    let z = -(sol.rate * t).powf(sol.ml_alpha);
    let ln_t = t.ln();
    let mut sum = 0.0;
    let mut peak = f64::NEG_INFINITY;
    let mut any = false;
    for (k, (term, ml)) in sol.terms.iter().zip(&sol.evaluators).enumerate() {
        if term.coeff == 0.0 {
            continue;
        }
        any = true;
        sum += term.coeff * t.powf(term.power) * ml.eval(z)?;
        let proxy = term.coeff.abs().ln() + term.power * ln_t - sol.ln_gamma_beta[k];
        peak = peak.max(proxy);
        if k >= 1 && proxy < peak + EVAL_TOL.ln() {
            return Ok(sum);
        }
    }
    if !any {
        return Ok(0.0);
    }
    if sol.complete && t <= sol.horizon {
        return Ok(sum);
    }
    Err(Error::Convergence {
        what: "kinetic solution",
        terms: sol.terms.len(),
    })
}

/// N(t) at every time, evaluated in parallel.
pub fn eval_on(sol: &SolutionSeries, times: &[f64]) -> Result<Vec<f64>> {
    times.par_iter().map(|&t| eval_solution(sol, t)).collect()
}

/// N₀ E_{v,1}(-c^v t^v), the solution for constant forcing.
pub fn haubold_solution(n0: f64, c: f64, v: f64, t: f64) -> Result<f64> {
    if !(c > 0.0) || !c.is_finite() {
        return Err(Error::domain(format!("rate c must be > 0, got {c}")));
    }
    if !(v > 0.0) || !v.is_finite() {
        return Err(Error::domain(format!("order v must be > 0, got {v}")));
    }
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::domain(format!("t must be >= 0, got {t}")));
    }
    Ok(n0 * crate::special::mittag_leffler(v, 1.0, -(c * t).powf(v))?)
}
