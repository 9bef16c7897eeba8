//! Struve functions H_v, L_v and the four-parameter generalization
//!
//! H^{λ,α}_{p,μ}(z) = Σ_k (-1)^k (z/2)^{2k+p+1} / (Γ(αk+μ) Γ(λk+σ)),  σ = p + 3/2
//!
//! All variants are series in w = ∓(z/2)² times the prefactor (z/2)^{p+1}.

use super::series::GammaSeries;
use super::SeriesSpec;
use crate::error::{Error, Result};

/// Which of the two classical Struve series.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StruveKind {
    /// H_v: alternating terms.
    H,
    /// L_v: all terms positive.
    L,
}

fn check_order_and_argument(v: f64, z: f64) -> Result<()> {
    if !(v > -1.0) || !v.is_finite() {
        return Err(Error::domain(format!("Struve order must be > -1, got {v}")));
    }
    if !(z >= 0.0) || !z.is_finite() {
        return Err(Error::domain(format!(
            "Struve argument must be >= 0, got {z}"
        )));
    }
    Ok(())
}

fn classical_series(kind: StruveKind, v: f64, z: f64) -> Result<(GammaSeries, f64)> {
    let half = 0.5 * z;
    let w = match kind {
        StruveKind::H => -half * half,
        StruveKind::L => half * half,
    };
    let series = GammaSeries::new("Struve", &[(1.0, 1.5), (1.0, v + 1.5)], w)?;
    Ok((series, w))
}

fn struve(kind: StruveKind, v: f64, z: f64) -> Result<f64> {
    check_order_and_argument(v, z)?;
    if z == 0.0 {
        return Ok(0.0);
    }
    let (series, w) = classical_series(kind, v, z)?;
    let value = series.sum(w)?.to_f64() * (0.5 * z).powf(v + 1.0);
    if !value.is_finite() {
        return Err(Error::NonFinite(format!(
            "Struve {kind:?}_{v}({z}) overflows"
        )));
    }
    Ok(value)
}

/// Struve function H_v(z) for v > -1, z >= 0.
pub fn struve_h(v: f64, z: f64) -> Result<f64> {
    struve(StruveKind::H, v, z)
}

/// Modified Struve function L_v(z) for v > -1, z >= 0.
pub fn struve_l(v: f64, z: f64) -> Result<f64> {
    struve(StruveKind::L, v, z)
}

/// H_v(x) together with its first two derivatives, each obtained by
/// differentiating the series term by term.
pub fn struve_h_derivatives(v: f64, x: f64) -> Result<(f64, f64, f64)> {
    check_order_and_argument(v, x)?;
    if x == 0.0 {
        return Err(Error::domain("Struve derivatives are evaluated at x > 0"));
    }
    let (series, w) = classical_series(StruveKind::H, v, x)?;
    let pre = (0.5 * x).powf(v + 1.0);
    let power = |n: usize| 2.0 * n as f64 + v + 1.0;
    let y = series.sum(w)?.to_f64() * pre;
    // x y' = Σ p a x^p,  x² y'' = Σ p (p-1) a x^p
    let xdy = series.sum_weighted(w, power)?.to_f64() * pre;
    let x2d2y = series
        .sum_weighted(w, |n| power(n) * (power(n) - 1.0))?
        .to_f64()
        * pre;
    Ok((y, xdy / x, x2d2y / (x * x)))
}

/// The first `count` individual series terms (prefactor included) of H_v(z)
/// or L_v(z).
pub fn struve_terms(kind: StruveKind, v: f64, z: f64, count: usize) -> Result<Vec<f64>> {
    check_order_and_argument(v, z)?;
    let half = 0.5 * z;
    let sign = match kind {
        StruveKind::H => -1.0,
        StruveKind::L => 1.0,
    };
    let mut terms = Vec::with_capacity(count);
    // a_k = (z/2)^{2k+v+1} / (Γ(k+3/2) Γ(k+v+3/2)), built by the ratio recurrence
    let mut term = half.powf(v + 1.0)
        * super::gamma::reciprocal_gamma(1.5)
        * super::gamma::reciprocal_gamma(v + 1.5);
    for k in 0..count {
        terms.push(term);
        let kf = k as f64;
        term *= sign * half * half / ((kf + 1.5) * (kf + v + 1.5));
    }
    Ok(terms)
}

/// Reusable evaluator of the generalized Struve function for a fixed spec.
#[derive(Clone, Debug)]
pub struct GeneralizedStruve {
    spec: SeriesSpec,
    series: GammaSeries,
}

impl GeneralizedStruve {
    pub fn new(spec: SeriesSpec) -> Result<Self> {
        Self::with_bound(spec, 1.0)
    }

    /// Evaluator tuned for arguments 0 <= z <= `z_bound`.
    pub fn with_bound(spec: SeriesSpec, z_bound: f64) -> Result<Self> {
        spec.validate()?;
        let half = 0.5 * z_bound;
        let series = GammaSeries::new(
            "generalized Struve",
            &[(spec.alpha, spec.mu), (spec.lambda, spec.sigma)],
            half * half,
        )?;
        Ok(GeneralizedStruve { spec, series })
    }

    pub fn spec(&self) -> &SeriesSpec {
        &self.spec
    }

    pub fn eval(&self, z: f64) -> Result<f64> {
        if !(z >= 0.0) || !z.is_finite() {
            return Err(Error::domain(format!(
                "generalized Struve argument must be >= 0, got {z}"
            )));
        }
        if z == 0.0 {
            return Ok(0.0);
        }
        let half = 0.5 * z;
        let value = self.series.sum(-half * half)?.to_f64() * half.powf(self.spec.order + 1.0);
        if !value.is_finite() {
            return Err(Error::NonFinite(format!("generalized Struve at z = {z}")));
        }
        Ok(value)
    }
}

/// H^{λ,α}_{p,μ}(z) with the first gamma offset σ taken from `spec`.
pub fn generalized_struve(spec: &SeriesSpec, z: f64) -> Result<f64> {
    GeneralizedStruve::with_bound(*spec, z)?.eval(z)
}
