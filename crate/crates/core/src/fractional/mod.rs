//! Riemann-Liouville fractional integral
//!
//! (D^{-v} f)(t) = 1/Γ(v) ∫_0^t (t - s)^{v-1} f(s) ds
//!
//! in closed form on powers and by product-trapezoidal quadrature on sampled
//! functions: `f` is interpolated linearly between samples and the kernel is
//! integrated exactly on every panel, so the singularity at `s = t` costs
//! nothing.

mod grid;

use std::sync::OnceLock;

use rayon::prelude::*;

pub use grid::Grid;

use crate::error::{Error, Result};
use crate::special::{gamma, ln_gamma, reciprocal_gamma};

/// D^{-v} t^a = Γ(a+1)/Γ(a+1+v) t^{a+v}.
pub fn rl_integral_power(a: f64, v: f64, t: f64) -> Result<f64> {
    if !(a > -1.0) || !a.is_finite() {
        return Err(Error::domain(format!("power must be > -1, got {a}")));
    }
    check_order(v)?;
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::domain(format!("t must be > 0, got {t}")));
    }
    let b = a + 1.0 + v;
    if b < 170.0 {
        return Ok(gamma(a + 1.0)? * reciprocal_gamma(b) * t.powf(a + v));
    }
    Ok((ln_gamma(a + 1.0)? - ln_gamma(b)? + (a + v) * t.ln()).exp())
}

fn check_order(v: f64) -> Result<()> {
    if !(v > 0.0) || !v.is_finite() {
        return Err(Error::domain(format!(
            "fractional order must be > 0, got {v}"
        )));
    }
    Ok(())
}

/// Kernel moments of one panel `[s_j, s_j + h]` seen from `t = s_j + a`:
/// the weights multiplying `f(s_j)` and `f(s_j + h)`, without the `1/Γ(v)`.
fn panel_weights(v: f64, a: f64, h: f64) -> (f64, f64) {
    if v == 1.0 {
        return (0.5 * h, 0.5 * h);
    }
    let x = h / a;
    let av = a.powf(v);
    // i0 = ∫_0^x (1-y)^{v-1} dy,  k = ∫_0^x (1-y)^{v-1} y dy
    let (i0, k) = if x < 0.5 {
        let i0 = -(v * (-x).ln_1p()).exp_m1() / v;
        let mut c = 1.0;
        let mut xp = x * x;
        let mut k = 0.0;
        for m in 0..200 {
            let term = c * xp / (m + 2) as f64;
            k += term;
            if term.abs() <= 1e-17 * k.abs() {
                break;
            }
            c *= (m as f64 + 1.0 - v) / (m as f64 + 1.0);
            xp *= x;
        }
        (i0, k)
    } else {
        let r = 1.0 - x;
        let e0 = 1.0 - r.powf(v);
        let e1 = 1.0 - r.powf(v + 1.0);
        (e0 / v, e0 / v - e1 / (v + 1.0))
    };
    (av * (i0 - k / x), av * k / x)
}

/// Product-trapezoidal D^{-v} on a fixed grid. Weights depend only on the
/// grid and `v`, so one operator serves any number of sample vectors.
#[derive(Debug)]
pub struct RlOperator {
    nodes: Vec<f64>,
    v: f64,
    inv_gamma_v: f64,
    step: Option<f64>,
    toeplitz: OnceLock<Vec<(f64, f64)>>,
}

impl RlOperator {
    pub fn new(grid: &Grid, v: f64) -> Result<Self> {
        check_order(v)?;
        let mut nodes = Vec::with_capacity(grid.len() + 1);
        nodes.push(0.0);
        nodes.extend_from_slice(grid.points());
        Ok(RlOperator {
            nodes,
            v,
            inv_gamma_v: reciprocal_gamma(v),
            step: grid.step(),
            toeplitz: OnceLock::new(),
        })
    }

    pub fn order(&self) -> f64 {
        self.v
    }

    /// Uniform grids from the origin: the weights of a panel `k` steps
    /// behind the target, `k = 1..=n`.
    fn toeplitz(&self, h: f64) -> &[(f64, f64)] {
        self.toeplitz.get_or_init(|| {
            (1..self.nodes.len())
                .map(|k| {
                    let (l, r) = panel_weights(self.v, k as f64 * h, h);
                    (l * self.inv_gamma_v, r * self.inv_gamma_v)
                })
                .collect()
        })
    }

    /// D^{-v} at grid point `index` (0-based, origin excluded). `samples[0]`
    /// is f(0) and `samples[i]` is f at grid point `i - 1`.
    pub fn at(&self, samples: &[f64], index: usize) -> Result<f64> {
        let m = index + 1;
        if m >= self.nodes.len() {
            return Err(Error::Range(format!(
                "grid index {index} (grid has {} points)",
                self.nodes.len() - 1
            )));
        }
        if samples.len() <= m {
            return Err(Error::InsufficientGrid(format!(
                "{} samples do not reach grid index {index}; f(0) and every point up to t are needed",
                samples.len()
            )));
        }
        Ok(self.integral(samples, m))
    }

    /// D^{-v} at every grid point.
    pub fn apply(&self, samples: &[f64]) -> Result<Vec<f64>> {
        if samples.len() != self.nodes.len() {
            return Err(Error::InsufficientGrid(format!(
                "expected {} samples (origin included), got {}",
                self.nodes.len(),
                samples.len()
            )));
        }
        if let Some(h) = self.step {
            self.toeplitz(h);
        }
        Ok((1..self.nodes.len())
            .into_par_iter()
            .map(|m| self.integral(samples, m))
            .collect())
    }

    fn integral(&self, samples: &[f64], m: usize) -> f64 {
        let mut sum = 0.0;
        if let Some(h) = self.step {
            let w = self.toeplitz(h);
            for j in 0..m {
                let (l, r) = w[m - 1 - j];
                sum += l * samples[j] + r * samples[j + 1];
            }
            return sum;
        }
        let t = self.nodes[m];
        for j in 0..m {
            let (l, r) =
                panel_weights(self.v, t - self.nodes[j], self.nodes[j + 1] - self.nodes[j]);
            sum += l * samples[j] + r * samples[j + 1];
        }
        sum * self.inv_gamma_v
    }
}

/// D^{-v} f at grid point `t_index` from samples on the grid (origin first).
pub fn rl_integral_grid(grid: &Grid, samples: &[f64], v: f64, t_index: usize) -> Result<f64> {
    RlOperator::new(grid, v)?.at(samples, t_index)
}

/// D^{-v} f at `t`, sampling `f` on `panels` equal panels of `[0, t]`.
pub fn rl_integral_fn(f: impl Fn(f64) -> f64, v: f64, t: f64, panels: usize) -> Result<f64> {
    check_order(v)?;
    let grid = Grid::uniform_from_origin(t, panels)?;
    let mut samples = Vec::with_capacity(panels + 1);
    samples.push(f(0.0));
    samples.extend(grid.points().iter().map(|&s| f(s)));
    RlOperator::new(&grid, v)?.at(&samples, panels - 1)
}
