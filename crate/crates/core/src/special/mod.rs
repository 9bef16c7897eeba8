//! Special functions for real arguments: gamma, Mittag-Leffler, and the Struve
//! family.

mod gamma;
mod mittag_leffler;
pub(crate) mod series;
mod struve;

pub(crate) use gamma::signed_ln_rgamma;
pub use gamma::{gamma, ln_gamma, reciprocal_gamma};
pub use mittag_leffler::{mittag_leffler, MittagLeffler, ML_MAX_ARGUMENT};
pub use struve::{
    generalized_struve, struve_h, struve_h_derivatives, struve_l, struve_terms, GeneralizedStruve,
    StruveKind,
};

use serde::Serialize;

use crate::error::{Error, Result};

/// Parameters of a Struve-type series
///
/// Σ_k (-1)^k (z/2)^{2k+order+1} / (Γ(alpha·k + mu) Γ(lambda·k + sigma)).
///
/// `sigma` is normally `order + 3/2`. It is kept separate because the
/// Singh variant puts `order / mu'` into that gamma while the power keeps
/// `order`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SeriesSpec {
    pub lambda: f64,
    pub alpha: f64,
    pub mu: f64,
    pub order: f64,
    pub sigma: f64,
}

impl SeriesSpec {
    /// Four-parameter generalized Struve spec with `sigma = order + 3/2`.
    pub fn new(lambda: f64, alpha: f64, mu: f64, order: f64) -> Result<Self> {
        let spec = SeriesSpec {
            lambda,
            alpha,
            mu,
            order,
            sigma: order + 1.5,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_sigma(mut self, sigma: f64) -> Result<Self> {
        self.sigma = sigma;
        self.validate()?;
        Ok(self)
    }

    /// The classical H_order: lambda = alpha = 1, mu = 3/2.
    pub fn struve(order: f64) -> Result<Self> {
        Self::new(1.0, 1.0, 1.5, order)
    }

    /// Bhowmick's variant: Γ(λk + l + 3/2) Γ(k + 3/2).
    pub fn bhowmick(lambda: f64, order: f64) -> Result<Self> {
        Self::new(lambda, 1.0, 1.5, order)
    }

    /// Kant's variant: Γ(λk + l + 3/2) Γ(αk + 3/2).
    pub fn kant(lambda: f64, alpha: f64, order: f64) -> Result<Self> {
        Self::new(lambda, alpha, 1.5, order)
    }

    /// Singh's variant: Γ(λk + l/m + 3/2) Γ(k + 3/2), power still 2k + l + 1.
    pub fn singh(lambda: f64, m: f64, order: f64) -> Result<Self> {
        if m == 0.0 || !m.is_finite() {
            return Err(Error::domain(format!(
                "Singh parameter must be finite and non-zero, got {m}"
            )));
        }
        Self::new(lambda, 1.0, 1.5, order)?.with_sigma(order / m + 1.5)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.lambda > 0.0) || !self.lambda.is_finite() {
            return Err(Error::domain(format!(
                "lambda must be > 0, got {}",
                self.lambda
            )));
        }
        if !(self.alpha > 0.0) || !self.alpha.is_finite() {
            return Err(Error::domain(format!(
                "alpha must be > 0, got {}",
                self.alpha
            )));
        }
        if !(self.order > -1.0) || !self.order.is_finite() {
            return Err(Error::domain(format!(
                "order must be > -1, got {}",
                self.order
            )));
        }
        if !self.mu.is_finite() || !self.sigma.is_finite() {
            return Err(Error::domain("mu and sigma must be finite"));
        }
        Ok(())
    }
}
