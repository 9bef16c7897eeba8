//! Gamma function for real arguments.
//!
//! `gamma` uses the g = 7, n = 9 Lanczos approximation on `x >= 0.5` and the
//! reflection formula below that. `reciprocal_gamma` is entire and returns an
//! exact zero at the poles so that series coefficients with a gamma pole in
//! the denominator simply vanish.

use std::f64::consts::PI;

use crate::dd;
use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Distance from a non-positive integer under which `gamma` reports a pole.
const POLE_WINDOW: f64 = 1e-12;

/// Gamma(x). Fails with [`Error::Pole`] at (or within 1e-12 of) a
/// non-positive integer.
pub fn gamma(x: f64) -> Result<f64> {
    if x.is_nan() {
        return Err(Error::domain("gamma of NaN"));
    }
    if x <= 0.0 && (x - x.round()).abs() <= POLE_WINDOW {
        return Err(Error::Pole(x));
    }
    if let Some(f) = factorial(x) {
        return Ok(f);
    }
    if x >= 0.5 {
        return Ok(lanczos(x));
    }
    // Gamma(x) Gamma(1 - x) = pi / sin(pi x)
    let g = lanczos(1.0 - x);
    let s = sin_pi(x);
    if g.is_infinite() {
        let ln = PI.ln() - s.abs().ln() - dd::ln_gamma(1.0 - x).to_f64();
        return Ok(s.signum() * ln.exp());
    }
    Ok(PI / (s * g))
}

/// 1 / Gamma(x), defined for every real x and exactly 0 at the poles.
pub fn reciprocal_gamma(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x <= 0.0 && x == x.floor() {
        return 0.0;
    }
    if let Some(f) = factorial(x) {
        return 1.0 / f;
    }
    if x >= 0.5 {
        if x > 171.0 {
            return (-dd::ln_gamma(x).to_f64()).exp();
        }
        return 1.0 / lanczos(x);
    }
    sin_pi(x) * lanczos(1.0 - x) / PI
}

/// ln Gamma(x) for x > 0.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if x.is_nan() || x <= 0.0 {
        return Err(Error::domain(format!("ln_gamma requires x > 0, got {x}")));
    }
    Ok(dd::ln_gamma(x).to_f64())
}

/// (x - 1)! for integer 1 <= x <= 23, where every value is exact in f64.
fn factorial(x: f64) -> Option<f64> {
    if !(1.0..=23.0).contains(&x) || x != x.floor() {
        return None;
    }
    Some((2..x as u32).fold(1.0, |acc, i| acc * i as f64))
}

/// Sign and natural log of |1/Γ(x)|; `None` at the poles.
pub(crate) fn signed_ln_rgamma(x: f64) -> Option<(f64, f64)> {
    if x <= 0.0 && x == x.floor() {
        return None;
    }
    if x > 0.0 {
        return Some((1.0, -dd::ln_gamma(x).to_f64()));
    }
    // 1/Γ(x) = sin(πx) Γ(1 - x) / π
    let s = sin_pi(x);
    Some((
        s.signum(),
        s.abs().ln() + dd::ln_gamma(1.0 - x).to_f64() - PI.ln(),
    ))
}

fn lanczos(x: f64) -> f64 {
    if x > 171.7 {
        return f64::INFINITY;
    }
    // Gamma(x) = sqrt(2 pi) t^(x - 1/2) e^-t A(x - 1),  t = x - 1/2 + g
    let z = x - 1.0;
    let mut a = LANCZOS[0];
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (z + i as f64);
    }
    // t is rarely exact; carry the rounding error as a first-order correction.
    let shift = LANCZOS_G + 0.5;
    let t = z + shift;
    let bb = t - z;
    let t_err = (z - (t - bb)) + (shift - bb);
    let e = x - 0.5;
    let correction = 1.0 + t_err * (e / t - 1.0);
    let half = t.powf(0.5 * e);
    (2.0 * PI).sqrt() * a * correction * (half * (-t).exp()) * half
}

/// sin(pi x) with the argument reduced exactly.
pub(crate) fn sin_pi(x: f64) -> f64 {
    let r = x % 2.0;
    let r = if r > 1.0 {
        r - 2.0
    } else if r < -1.0 {
        r + 2.0
    } else {
        r
    };
    // r in [-1, 1]; fold onto [-1/2, 1/2]
    if r > 0.5 {
        (PI * (1.0 - r)).sin()
    } else if r < -0.5 {
        -(PI * (1.0 + r)).sin()
    } else {
        (PI * r).sin()
    }
}
