//! Sumudu transform G(u) = ∫_0^∞ f(ut) e^{-t} dt by Gauss-Laguerre
//! quadrature, its closed form on powers, and a numerical check of the
//! fractional-integral rule S[D^{-v} f](u) = u^v G(u).
//!
//! An integrand may declare its behaviour `t^γ` at the origin. The rule is
//! then built for the weight `t^γ e^{-t}` and applied to `f(ut) / t^γ`, which
//! is smooth where `f` itself is not.

mod laguerre;

use serde::Serialize;

pub use laguerre::{laguerre_rule, LaguerreRule};

use crate::error::{Error, Result};
use crate::fractional::rl_integral_fn;
use crate::special::gamma;

/// Default Gauss-Laguerre rule size.
pub const DEFAULT_NODES: usize = 64;
/// Smallest accepted rule size.
pub const MIN_NODES: usize = 8;
/// Panels of the fractional integral inside [`check_rl_rule`].
pub const RL_PANELS: usize = 2048;

/// A function on `[0, ∞)` to be transformed.
pub trait Integrand: Sync {
    fn eval(&self, t: f64) -> f64;

    /// Exponent γ > -1 with f(t) ~ t^γ as t → 0.
    fn leading_power(&self) -> f64 {
        0.0
    }
}

impl<F: Fn(f64) -> f64 + Sync> Integrand for F {
    fn eval(&self, t: f64) -> f64 {
        self(t)
    }
}

/// f(t) = t^a.
#[derive(Clone, Copy, Debug)]
pub struct Power(pub f64);

impl Integrand for Power {
    fn eval(&self, t: f64) -> f64 {
        if self.0 == 0.0 {
            1.0
        } else {
            t.powf(self.0)
        }
    }

    fn leading_power(&self) -> f64 {
        self.0
    }
}

/// A closure together with its leading power at the origin.
#[derive(Clone, Copy, Debug)]
pub struct WithLeadingPower<F> {
    pub f: F,
    pub power: f64,
}

impl<F: Fn(f64) -> f64 + Sync> Integrand for WithLeadingPower<F> {
    fn eval(&self, t: f64) -> f64 {
        (self.f)(t)
    }

    fn leading_power(&self) -> f64 {
        self.power
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TransformPoint {
    pub u: f64,
    pub value: f64,
    pub node_count: usize,
}

/// G(u) with the default 64-point rule.
pub fn sumudu_numeric<F: Integrand + ?Sized>(f: &F, u: f64) -> Result<TransformPoint> {
    sumudu_numeric_with(f, u, DEFAULT_NODES)
}

pub fn sumudu_numeric_with<F: Integrand + ?Sized>(
    f: &F,
    u: f64,
    node_count: usize,
) -> Result<TransformPoint> {
    let value = transform(|t| Ok(f.eval(t)), f.leading_power(), u, node_count)?;
    Ok(TransformPoint {
        u,
        value,
        node_count,
    })
}

fn transform(
    f: impl Fn(f64) -> Result<f64>,
    leading: f64,
    u: f64,
    node_count: usize,
) -> Result<f64> {
    if !(u > 0.0) || !u.is_finite() {
        return Err(Error::domain(format!(
            "Sumudu variable must be > 0, got {u}"
        )));
    }
    if node_count < MIN_NODES {
        return Err(Error::domain(format!(
            "Sumudu quadrature needs at least {MIN_NODES} nodes, got {node_count}"
        )));
    }
    let rule = laguerre_rule(node_count, leading)?;
    let mut sum = 0.0;
    // Largest nodes first: their weights are tiny, so this adds small to large.
    for (&x, &w) in rule.nodes.iter().zip(&rule.weights).rev() {
        let y = f(u * x)?;
        if !y.is_finite() {
            return Err(Error::NonFinite(format!("integrand at t = {}", u * x)));
        }
        let g = if leading == 0.0 {
            y
        } else {
            y / x.powf(leading)
        };
        sum += w * g;
    }
    Ok(sum)
}

/// S[t^a](u) = u^a Γ(a + 1).
pub fn sumudu_power(a: f64, u: f64) -> Result<f64> {
    if !(a > -1.0) || !a.is_finite() {
        return Err(Error::domain(format!("power must be > -1, got {a}")));
    }
    if !(u > 0.0) || !u.is_finite() {
        return Err(Error::domain(format!(
            "Sumudu variable must be > 0, got {u}"
        )));
    }
    Ok(u.powf(a) * gamma(a + 1.0)?)
}

/// |S[D^{-v} f](u) - u^v S[f](u)| with D^{-v} f from product quadrature.
pub fn check_rl_rule<F: Integrand + ?Sized>(f: &F, v: f64, u: f64) -> Result<f64> {
    if !(v > 0.0) || !v.is_finite() {
        return Err(Error::domain(format!(
            "fractional order must be > 0, got {v}"
        )));
    }
    let lhs = transform(
        |t| {
            if t == 0.0 {
                return Ok(0.0);
            }
            rl_integral_fn(|s| f.eval(s), v, t, RL_PANELS)
        },
        f.leading_power() + v,
        u,
        DEFAULT_NODES,
    )?;
    let rhs = u.powf(v) * sumudu_numeric(f, u)?.value;
    Ok((lhs - rhs).abs())
}
