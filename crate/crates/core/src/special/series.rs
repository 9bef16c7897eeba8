//! Power series `sum_n c_n w^n` whose coefficients are products of reciprocal
//! gamma functions, `c_n = prod_j 1 / Gamma(slope_j n + offset_j)`.
//!
//! Both the Mittag-Leffler function and every Struve variant are of this form.
//! Terms are produced in double-double: coefficients up to the first index
//! where every gamma argument is positive are evaluated directly (so poles give
//! exact zeros), and later ones by the ratio `c_n / c_{n-1}`, which is an exact
//! rational function when the slope is a small integer. Summation runs in
//! ascending `n` with double-double accumulation.

use crate::dd::{self, Dd, EPS};
use crate::error::{Error, Result};

/// Hard cap on the number of terms.
pub(crate) const TERM_CAP: usize = 500;
/// Minimum index at which the series may be truncated.
pub(crate) const MIN_TERMS: usize = 5;
/// Truncate once a term falls below this fraction of the partial sum.
const STOP_TOL: f64 = 1e-17;
/// Accepted relative error estimate of the accumulated sum.
const PRECISION_TOL: f64 = 1e-11;
/// Below this fraction of the leading term a sum counts as an exact zero
/// crossing, where only absolute accuracy is meaningful.
const ZERO_FLOOR: f64 = 1e-20;
/// Largest integer slope handled by exact ratio recurrences.
const MAX_EXACT_SLOPE: f64 = 16.0;

#[derive(Clone, Copy, Debug)]
struct Factor {
    slope: f64,
    offset: f64,
    exact: bool,
}

impl Factor {
    fn argument(&self, n: usize) -> Dd {
        Dd::from_f64(self.slope).mul_f64(n as f64) + Dd::from_f64(self.offset)
    }
}

#[derive(Clone, Debug)]
pub(crate) struct GammaSeries {
    what: &'static str,
    factors: Vec<Factor>,
    /// Every gamma argument is positive from this index on.
    regular_from: usize,
    /// `c_n` for `n <= regular_from`.
    leading: Vec<Dd>,
    /// `c_n / c_{n-1}` for `n = regular_from + 1, ...`.
    ratios: Vec<Dd>,
    exact: bool,
}

impl GammaSeries {
    /// Builds the coefficient tables. `w_bound` is the largest `|w|` the
    /// series is expected to be summed at; ratios are tabulated far enough
    /// for that bound and computed on the fly beyond it.
    pub(crate) fn new(what: &'static str, factors: &[(f64, f64)], w_bound: f64) -> Result<Self> {
        let factors: Vec<Factor> = factors
            .iter()
            .map(|&(slope, offset)| {
                if !(slope > 0.0) || !offset.is_finite() {
                    return Err(Error::domain(format!(
                        "{what}: gamma factor needs a positive slope and finite offset, got ({slope}, {offset})"
                    )));
                }
                Ok(Factor {
                    slope,
                    offset,
                    exact: slope == slope.round() && slope <= MAX_EXACT_SLOPE,
                })
            })
            .collect::<Result<_>>()?;

        let regular_from = factors
            .iter()
            .map(|f| {
                let mut n = if f.offset > 0.0 {
                    0
                } else {
                    (-f.offset / f.slope).floor() as usize
                };
                while f.argument(n).hi <= 0.0 {
                    n += 1;
                }
                n
            })
            .max()
            .unwrap_or(0);
        if regular_from >= TERM_CAP {
            return Err(Error::domain(format!(
                "{what}: gamma offsets too negative for a {TERM_CAP}-term series"
            )));
        }

        let leading = (0..=regular_from)
            .map(|n| {
                factors
                    .iter()
                    .fold(Dd::ONE, |acc, f| acc * dd::rgamma_dd(f.argument(n)))
            })
            .collect();
        let exact = factors.iter().all(|f| f.exact);

        let mut series = GammaSeries {
            what,
            factors,
            regular_from,
            leading,
            ratios: Vec::new(),
            exact,
        };
        series.tabulate(w_bound.abs());
        Ok(series)
    }

    /// Extends the ratio table until terms at `|w| = bound` are negligible.
    fn tabulate(&mut self, bound: f64) {
        let mut log_prev: Vec<Dd> = self
            .factors
            .iter()
            .map(|f| {
                if f.exact {
                    Dd::ZERO
                } else {
                    dd::ln_gamma_dd(f.argument(self.regular_from))
                }
            })
            .collect();
        let mut mag = self.leading[self.regular_from].abs()
            * Dd::from_f64(bound).powi(self.regular_from as u32);
        let mut peak = mag.hi;
        for n in self.regular_from + 1..=TERM_CAP {
            let mut ratio = Dd::ONE;
            for (f, log_prev) in self.factors.iter().zip(log_prev.iter_mut()) {
                if f.exact {
                    ratio = ratio * exact_ratio(f, n);
                } else {
                    let log_next = dd::ln_gamma_dd(f.argument(n));
                    ratio = ratio * (*log_prev - log_next).exp();
                    *log_prev = log_next;
                }
            }
            self.ratios.push(ratio);
            mag = mag * ratio.mul_f64(bound);
            if !mag.is_finite() {
                break;
            }
            peak = peak.max(mag.hi);
            if n >= self.regular_from + MIN_TERMS && mag.hi <= 1e-40 * peak {
                break;
            }
        }
    }

    fn ratio(&self, n: usize) -> Dd {
        let idx = n - self.regular_from - 1;
        if let Some(&r) = self.ratios.get(idx) {
            return r;
        }
        self.factors.iter().fold(Dd::ONE, |acc, f| {
            if f.exact {
                acc * exact_ratio(f, n)
            } else {
                acc * (dd::ln_gamma_dd(f.argument(n - 1)) - dd::ln_gamma_dd(f.argument(n))).exp()
            }
        })
    }

    pub(crate) fn sum(&self, w: f64) -> Result<Dd> {
        self.sum_weighted(w, |_| 1.0)
    }

    /// `sum_n weight(n) c_n w^n`.
    pub(crate) fn sum_weighted(&self, w: f64, weight: impl Fn(usize) -> f64) -> Result<Dd> {
        if !w.is_finite() {
            return Err(Error::NonFinite(format!("{}: argument {w}", self.what)));
        }
        if w == 0.0 {
            return Ok(self.leading[0].mul_f64(weight(0)));
        }
        let wd = Dd::from_f64(w);
        let mut sum = Dd::ZERO;
        let mut wpow = Dd::ONE;
        let mut term = Dd::ZERO;
        let mut prev = f64::INFINITY;
        let mut max_abs = 0.0_f64;
        let mut scale = 0.0_f64;
        for n in 0..TERM_CAP {
            term = if n <= self.regular_from {
                let t = self.leading[n] * wpow;
                wpow = wpow * wd;
                t
            } else {
                term * wd * self.ratio(n)
            };
            if !term.is_finite() {
                return Err(Error::NonFinite(format!(
                    "{}: term {n} overflows at w = {w}",
                    self.what
                )));
            }
            let weighted = term.mul_f64(weight(n));
            sum += weighted;
            let a = weighted.hi.abs();
            max_abs = max_abs.max(a);
            if scale == 0.0 {
                scale = a;
            }
            let cur = term.hi.abs();
            if n >= MIN_TERMS
                && n > self.regular_from
                && cur <= prev
                && a <= STOP_TOL * sum.hi.abs().max(ZERO_FLOOR * max_abs)
            {
                return self.check_precision(sum, max_abs, scale, n);
            }
            prev = cur;
        }
        Err(Error::Convergence {
            what: self.what,
            terms: TERM_CAP,
        })
    }

    fn check_precision(&self, sum: Dd, max_abs: f64, scale: f64, n: usize) -> Result<Dd> {
        let rho = (n + 1) as f64 * 8.0 * EPS + if self.exact { 0.0 } else { 1e-27 };
        let estimate = max_abs * rho;
        let total = sum.hi.abs();
        if estimate > PRECISION_TOL * total && estimate > ZERO_FLOOR * scale {
            return Err(Error::PrecisionLoss {
                what: self.what,
                estimate,
                sum: total,
            });
        }
        Ok(sum)
    }
}

/// `Gamma(x_{n-1}) / Gamma(x_n)` for an integer slope s: `1 / prod_{i<s} (x_{n-1} + i)`.
fn exact_ratio(f: &Factor, n: usize) -> Dd {
    let x = f.argument(n - 1);
    let mut prod = x;
    for i in 1..f.slope as usize {
        prod = prod * (x + Dd::from_f64(i as f64));
    }
    prod.recip()
}
