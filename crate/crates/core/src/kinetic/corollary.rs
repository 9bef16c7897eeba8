use serde::Serialize;

use super::KineticProblem;
use crate::error::{Error, Result};
use crate::special::SeriesSpec;

/// Which equation: plain-time forcing, powered-time forcing, or powered-time
/// forcing with a distinct relaxation rate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Theorem {
    One,
    Two,
    Three,
}

impl Theorem {
    pub fn from_number(n: u8) -> Result<Self> {
        match n {
            1 => Ok(Theorem::One),
            2 => Ok(Theorem::Two),
            3 => Ok(Theorem::Three),
            _ => Err(Error::Range(format!("theorem {n} (expected 1, 2 or 3)"))),
        }
    }

    pub fn number(self) -> u8 {
        match self {
            Theorem::One => 1,
            Theorem::Two => 2,
            Theorem::Three => 3,
        }
    }

    pub fn problem(self, spec: SeriesSpec, p: &ProblemParams) -> Result<KineticProblem> {
        match self {
            Theorem::One => KineticProblem::theorem1(spec, p.d, p.v, p.n0),
            Theorem::Two => KineticProblem::theorem2(spec, p.d, p.v, p.n0),
            Theorem::Three => {
                let relax = p.relax.ok_or_else(|| {
                    Error::domain("the distinct-rate equation needs a relaxation rate")
                })?;
                KineticProblem::theorem3(spec, p.d, relax, p.v, p.n0)
            }
        }
    }
}

/// Struve-type forcing families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// Classical H_l: λ = α = 1, μ = 3/2.
    Struve,
    /// Γ(λk + l + 3/2) Γ(k + 3/2).
    Bhowmick,
    /// Γ(λk + l + 3/2) Γ(αk + 3/2).
    Kant,
    /// Γ(λk + l/μ + 3/2) Γ(k + 3/2).
    Singh,
}

impl Family {
    /// The series spec of this family; parameters a family fixes are ignored.
    pub fn spec(self, p: &ProblemParams) -> Result<SeriesSpec> {
        match self {
            Family::Struve => SeriesSpec::struve(p.order),
            Family::Bhowmick => SeriesSpec::bhowmick(p.lambda, p.order),
            Family::Kant => SeriesSpec::kant(p.lambda, p.alpha, p.order),
            Family::Singh => SeriesSpec::singh(p.lambda, p.mu, p.order),
        }
    }
}

/// Free parameters of a kinetic problem before specialization.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ProblemParams {
    pub lambda: f64,
    pub alpha: f64,
    /// Second gamma offset; the divisor of l for the Singh family.
    pub mu: f64,
    pub order: f64,
    pub d: f64,
    pub relax: Option<f64>,
    pub v: f64,
    pub n0: f64,
}

impl Default for ProblemParams {
    fn default() -> Self {
        ProblemParams {
            lambda: 1.0,
            alpha: 1.0,
            mu: 1.5,
            order: 1.0,
            d: 1.0,
            relax: None,
            v: 0.75,
            n0: 1.0,
        }
    }
}

/// A corollary: a theorem applied to one forcing family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Corollary {
    pub id: u8,
    pub theorem: Theorem,
    pub family: Family,
}

impl Corollary {
    pub fn problem(&self, p: &ProblemParams) -> Result<KineticProblem> {
        self.theorem.problem(self.family.spec(p)?, p)
    }
}

/// Ids 1-3 take the classical Struve forcing through the three theorems,
/// 4-6 the Bhowmick family, 7-9 Kant's and 10-12 Singh's.
pub fn corollary_params(id: u8) -> Result<Corollary> {
    if !(1..=12).contains(&id) {
        return Err(Error::Range(format!("corollary {id} (expected 1..=12)")));
    }
    let family = match (id - 1) / 3 {
        0 => Family::Struve,
        1 => Family::Bhowmick,
        2 => Family::Kant,
        _ => Family::Singh,
    };
    let theorem = match (id - 1) % 3 {
        0 => Theorem::One,
        1 => Theorem::Two,
        _ => Theorem::Three,
    };
    Ok(Corollary {
        id,
        theorem,
        family,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kinetic::Forcing;

    #[test]
    fn mapping() {
        let c = corollary_params(1).unwrap();
        assert_eq!((c.theorem, c.family), (Theorem::One, Family::Struve));
        let c = corollary_params(3).unwrap();
        assert_eq!((c.theorem, c.family), (Theorem::Three, Family::Struve));
        let c = corollary_params(10).unwrap();
        assert_eq!((c.theorem, c.family), (Theorem::One, Family::Singh));
        assert!(matches!(corollary_params(0), Err(Error::Range(_))));
        assert!(matches!(corollary_params(13), Err(Error::Range(_))));
    }

    #[test]
    fn families_fix_their_parameters() {
        let p = ProblemParams {
            lambda: 2.0,
            alpha: 0.5,
            mu: 4.0,
            ..Default::default()
        };
        let s = Family::Struve.spec(&p).unwrap();
        assert_eq!((s.lambda, s.alpha, s.mu, s.sigma), (1.0, 1.0, 1.5, 2.5));
        let s = Family::Kant.spec(&p).unwrap();
        assert_eq!((s.lambda, s.alpha, s.mu), (2.0, 0.5, 1.5));
        let s = Family::Singh.spec(&p).unwrap();
        assert_eq!((s.lambda, s.alpha, s.mu, s.sigma), (2.0, 1.0, 1.5, 1.75));
    }

    #[test]
    fn distinct_rate_needs_relax() {
        let c = corollary_params(3).unwrap();
        assert!(c.problem(&ProblemParams::default()).is_err());
        let p = ProblemParams {
            relax: Some(0.6),
            ..Default::default()
        };
        let prob = c.problem(&p).unwrap();
        assert!(matches!(prob.forcing, Forcing::PoweredTime(_)));
        assert_eq!(prob.relax, 0.6);
    }
}
