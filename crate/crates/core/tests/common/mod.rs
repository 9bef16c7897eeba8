//! Reference implementations used to derive the frozen values in the
//! integration tests. They share no code with the library: double-double
//! arithmetic with its own exp/ln, Stirling's series for ln Γ, and brute-force
//! summation far past the point where terms stop mattering.

#![allow(dead_code)]

use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Xf {
    pub hi: f64,
    pub lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn fast_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Xf {
    pub const ZERO: Xf = Xf { hi: 0.0, lo: 0.0 };
    pub const ONE: Xf = Xf { hi: 1.0, lo: 0.0 };
    pub const LN2: Xf = Xf {
        hi: std::f64::consts::LN_2,
        lo: 2.3190468138462996e-17,
    };
    pub const PI: Xf = Xf {
        hi: std::f64::consts::PI,
        lo: 1.2246467991473532e-16,
    };

    pub fn new(x: f64) -> Xf {
        Xf { hi: x, lo: 0.0 }
    }

    pub fn f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn abs(self) -> Xf {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    pub fn scale(self, k: i32) -> Xf {
        let f = 2f64.powi(k);
        Xf {
            hi: self.hi * f,
            lo: self.lo * f,
        }
    }

    pub fn powi(self, n: u32) -> Xf {
        (0..n).fold(Xf::ONE, |acc, _| acc * self)
    }

    pub fn exp(self) -> Xf {
        if self.hi == 0.0 {
            return Xf::ONE;
        }
        let k = (self.hi / Xf::LN2.hi).round();
        // r = x - k ln 2, then exp(r) = exp(r / 1024)^1024
        let r = (self - Xf::LN2 * Xf::new(k)).scale(-10);
        let mut term = Xf::ONE;
        let mut sum = Xf::ONE;
        for i in 1..30 {
            term = term * r / Xf::new(i as f64);
            sum = sum + term;
            if term.hi.abs() < 1e-36 {
                break;
            }
        }
        for _ in 0..10 {
            sum = sum * sum;
        }
        sum.scale(k as i32)
    }

    /// Natural log of a positive value, by Newton on exp.
    pub fn ln(self) -> Xf {
        assert!(self.hi > 0.0, "ln of non-positive {}", self.hi);
        let mut y = Xf::new(self.hi.ln());
        for _ in 0..3 {
            y = y + self * (-y).exp() - Xf::ONE;
        }
        y
    }

    pub fn powf(self, y: Xf) -> Xf {
        (y * self.ln()).exp()
    }

    pub fn sqrt(self) -> Xf {
        let s = self.hi.sqrt();
        let (p, e) = two_prod(s, s);
        let r = (self.hi - p - e + self.lo) / (2.0 * s);
        let (hi, lo) = fast_two_sum(s, r);
        Xf { hi, lo }
    }
}

impl Add for Xf {
    type Output = Xf;
    fn add(self, b: Xf) -> Xf {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = fast_two_sum(s, e + t);
        let (hi, lo) = fast_two_sum(s, e + f);
        Xf { hi, lo }
    }
}

impl Neg for Xf {
    type Output = Xf;
    fn neg(self) -> Xf {
        Xf {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Sub for Xf {
    type Output = Xf;
    fn sub(self, b: Xf) -> Xf {
        self + -b
    }
}

impl Mul for Xf {
    type Output = Xf;
    fn mul(self, b: Xf) -> Xf {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = fast_two_sum(p, e);
        Xf { hi, lo }
    }
}

impl Div for Xf {
    type Output = Xf;
    fn div(self, b: Xf) -> Xf {
        let q1 = self.hi / b.hi;
        let r = self - b * Xf::new(q1);
        let q2 = r.hi / b.hi;
        let r = r - b * Xf::new(q2);
        let q3 = r.hi / b.hi;
        let (hi, lo) = fast_two_sum(q1, q2);
        Xf { hi, lo } + Xf::new(q3)
    }
}

/// B_2 .. B_20 as exact fractions.
const BERNOULLI: [(f64, f64); 10] = [
    (1.0, 6.0),
    (-1.0, 30.0),
    (1.0, 42.0),
    (-1.0, 30.0),
    (5.0, 66.0),
    (-691.0, 2730.0),
    (7.0, 6.0),
    (-3617.0, 510.0),
    (43867.0, 798.0),
    (-174611.0, 330.0),
];

/// ln Γ(x) for x > 0: shift to x + n >= 40, then Stirling's series.
pub fn ln_gamma(x: Xf) -> Xf {
    assert!(x.hi > 0.0);
    let mut y = x;
    let mut prod = Xf::ONE;
    while y.hi < 40.0 {
        prod = prod * y;
        y = y + Xf::ONE;
    }
    let half_ln_2pi = (Xf::PI.scale(1)).ln().scale(-1);
    let mut s = (y - Xf::new(0.5)) * y.ln() - y + half_ln_2pi;
    let y2 = y * y;
    let mut ypow = y;
    for (k, &(num, den)) in BERNOULLI.iter().enumerate() {
        let two_k = 2.0 * (k as f64 + 1.0);
        s = s + Xf::new(num) / (Xf::new(den) * Xf::new(two_k * (two_k - 1.0)) * ypow);
        ypow = ypow * y2;
    }
    s - prod.ln()
}

pub fn gamma(x: f64) -> Xf {
    ln_gamma(Xf::new(x)).exp()
}

/// 1 / Γ(x) for x > 0.
pub fn rgamma(x: Xf) -> Xf {
    (-ln_gamma(x)).exp()
}

/// Sums terms until they are negligible for good.
fn sum_series(mut term: impl FnMut(usize) -> Xf, max_terms: usize) -> Xf {
    let mut sum = Xf::ZERO;
    let mut small = 0;
    for k in 0..max_terms {
        let t = term(k);
        sum = sum + t;
        if t.hi.abs() <= 1e-34 * sum.hi.abs() || t.hi == 0.0 {
            small += 1;
            if small >= 5 {
                return sum;
            }
        } else {
            small = 0;
        }
    }
    panic!("oracle series did not settle in {max_terms} terms");
}

/// E_{α,β}(z) = Σ z^k / Γ(αk + β).
pub fn mittag_leffler(alpha: f64, beta: f64, z: f64) -> Xf {
    let z = Xf::new(z);
    sum_series(
        |k| {
            let arg = Xf::new(alpha) * Xf::new(k as f64) + Xf::new(beta);
            z.powi(k as u32) * rgamma(arg)
        },
        10_000,
    )
}

/// (z/2)^{order+1} Σ (∓1)^k (z/2)^{2k} / (Γ(αk + μ) Γ(λk + σ)), alternating
/// when `alternating`.
pub fn struve_series(
    lambda: f64,
    alpha: f64,
    mu: f64,
    order: f64,
    sigma: f64,
    z: f64,
    alternating: bool,
) -> Xf {
    let half = Xf::new(z) / Xf::new(2.0);
    let w = half * half;
    let sum = sum_series(
        |k| {
            let kf = Xf::new(k as f64);
            let g = rgamma(Xf::new(alpha) * kf + Xf::new(mu))
                * rgamma(Xf::new(lambda) * kf + Xf::new(sigma));
            let t = w.powi(k as u32) * g;
            if alternating && k % 2 == 1 {
                -t
            } else {
                t
            }
        },
        200,
    );
    sum * half.powf(Xf::new(order + 1.0))
}

pub fn struve_h(v: f64, z: f64) -> Xf {
    struve_series(1.0, 1.0, 1.5, v, v + 1.5, z, true)
}

pub fn struve_l(v: f64, z: f64) -> Xf {
    struve_series(1.0, 1.0, 1.5, v, v + 1.5, z, false)
}

/// N₀ Σ (-(ct)^v)^k / Γ(vk + 1).
pub fn haubold(n0: f64, c: f64, v: f64, t: f64) -> Xf {
    let z = -(Xf::new(c) * Xf::new(t)).powf(Xf::new(v));
    Xf::new(n0) * mittag_leffler(v, 1.0, z.f64())
}

/// N(t) for N - N₀ H(t) + d^v D^{-v} N = 0 with H the generalized Struve
/// function: truncate H to `forcing_terms` powers a_k t^{p_k}, then sum the
/// Neumann series N = N₀ Σ_j (-d^v D^{-v})^j H term by term with
/// D^{-jv} t^p = Γ(p+1)/Γ(p+jv+1) t^{p+jv}.
#[allow(clippy::too_many_arguments)]
pub fn neumann_plain_time(
    lambda: f64,
    alpha: f64,
    mu: f64,
    order: f64,
    sigma: f64,
    d: f64,
    v: f64,
    n0: f64,
    t: f64,
    forcing_terms: usize,
) -> Xf {
    let t = Xf::new(t);
    let rate = -Xf::new(d).powf(Xf::new(v));
    let mut total = Xf::ZERO;
    for k in 0..forcing_terms {
        let kf = Xf::new(k as f64);
        let p = Xf::new(2.0 * k as f64 + order + 1.0);
        let mut a = (Xf::new(0.5)).powf(p)
            * rgamma(Xf::new(alpha) * kf + Xf::new(mu))
            * rgamma(Xf::new(lambda) * kf + Xf::new(sigma));
        if k % 2 == 1 {
            a = -a;
        }
        let g = ln_gamma(p + Xf::ONE);
        let inner = sum_series(
            |j| {
                let q = p + Xf::new(v * j as f64);
                rate.powi(j as u32) * (g - ln_gamma(q + Xf::ONE)).exp() * t.powf(q)
            },
            10_000,
        );
        total = total + a * inner;
    }
    Xf::new(n0) * total
}

/// ∫_0^1 over [a, b] by adaptive Simpson with Richardson correction.
pub fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    #[allow(clippy::too_many_arguments)]
    fn step(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
            + step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }
    let fa = f(a);
    let fb = f(b);
    let fm = f(0.5 * (a + b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    step(f, a, b, fa, fm, fb, whole, tol, 50)
}

/// D^{-v} e^s at t, as (1/Γ(v)) ∫_0^t (t-s)^{v-1} e^s ds with t - s = t w^{1/v}
/// removing the endpoint singularity.
pub fn rl_of_exp(v: f64, t: f64) -> f64 {
    let m = 1.0 / v;
    // t - s = t w^m: ds = -t m w^{m-1} dw, (t-s)^{v-1} = t^{v-1} w^{1-m}
    let integrand = |w: f64| t.powf(v) * m * (t - t * w.powf(m)).exp();
    adaptive_simpson(&integrand, 0.0, 1.0, 1e-16) / gamma(v).f64()
}

/// u^a Γ(a + 1).
pub fn sumudu_power(a: f64, u: f64) -> Xf {
    Xf::new(u).powf(Xf::new(a)) * gamma(a + 1.0)
}
