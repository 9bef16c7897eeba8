//! Double-double arithmetic.
//!
//! A value is the unevaluated sum `hi + lo` with `|lo| <= ulp(hi) / 2`, giving
//! roughly 106 bits of significand. Only the operations the series engine
//! needs are provided: ring operations, division, `exp`, `ln`, and the
//! log-gamma / reciprocal-gamma pair used to build series coefficients.

use std::cmp::Ordering;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

/// Unit roundoff of the format, `2^-104`.
pub(crate) const EPS: f64 = 4.930380657631324e-32;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[cfg(test)]
pub(crate) const PI: Dd = Dd::new(std::f64::consts::PI, 1.2246467991473532e-16);
pub(crate) const LN_2: Dd = Dd::new(std::f64::consts::LN_2, 2.3190468138462996e-17);
/// `ln(2 pi) / 2`
pub(crate) const HALF_LN_2PI: Dd = Dd::new(0.9189385332046728, -3.8782941580672414e-17);

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub const ZERO: Dd = Dd::new(0.0, 0.0);
    pub const ONE: Dd = Dd::new(1.0, 0.0);

    pub const fn new(hi: f64, lo: f64) -> Self {
        Dd { hi, lo }
    }

    #[inline]
    pub fn from_f64(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    /// Exact sum of two doubles.
    #[inline]
    #[cfg(test)]
    pub fn from_sum(a: f64, b: f64) -> Self {
        let (hi, lo) = two_sum(a, b);
        Dd { hi, lo }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }

    #[inline]
    pub fn mul_f64(self, b: f64) -> Self {
        let (p, e) = two_prod(self.hi, b);
        let e = self.lo.mul_add(b, e);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    /// Multiplication by a power of two; exact barring over/underflow.
    #[inline]
    pub fn ldexp(self, k: i32) -> Self {
        Dd {
            hi: ldexp(self.hi, k),
            lo: ldexp(self.lo, k),
        }
    }

    pub fn recip(self) -> Self {
        Dd::ONE / self
    }

    pub fn powi(self, n: u32) -> Self {
        let mut base = self;
        let mut acc = Dd::ONE;
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            n >>= 1;
        }
        acc
    }

    #[cfg(test)]
    pub fn sqrt(self) -> Self {
        if self.hi <= 0.0 {
            return Dd::from_f64(self.hi.sqrt());
        }
        let y = self.hi.sqrt();
        let (p, e) = two_prod(y, y);
        let r = ((self.hi - p) - e + self.lo) / (2.0 * y);
        Dd::from_sum(y, r)
    }

    pub fn exp(self) -> Self {
        if self.hi > 709.78 {
            return Dd::from_f64(f64::INFINITY);
        }
        if self.hi < -745.2 {
            return Dd::ZERO;
        }
        if self.hi == 0.0 {
            return Dd::ONE;
        }
        let k = (self.hi / LN_2.hi).round();
        let r = self - LN_2.mul_f64(k);
        // exp(r) = (1 + p)^(2^10) with p = expm1(r / 2^10)
        let s = r.ldexp(-10);
        let mut p = s;
        let mut pow = s;
        for c in INV_FACT {
            pow = pow * s;
            let term = pow * c;
            p += term;
            if term.hi.abs() < 1e-36 {
                break;
            }
        }
        for _ in 0..10 {
            // (1 + p)^2 - 1 = p (2 + p)
            p = p * (p + Dd::from_f64(2.0));
        }
        let e = p + Dd::ONE;
        // Split the scale so subnormal results do not double-round badly.
        let k = k as i32;
        if k < -1000 {
            e.ldexp(-1000).ldexp(k + 1000)
        } else {
            e.ldexp(k)
        }
    }

    pub fn ln(self) -> Self {
        if self.hi <= 0.0 {
            return Dd::from_f64(f64::NAN);
        }
        // ln(m 2^e) = ln(m) + e ln 2 keeps exp(-y) away from subnormals.
        let e = self.hi.log2().floor();
        let m = self.ldexp(-(e as i32));
        let y = Dd::from_f64(m.hi.ln());
        // One Newton step on exp(y) = m doubles the correct bits.
        y + m * (-y).exp() - Dd::ONE + LN_2.mul_f64(e)
    }
}

/// 1/i! for i = 2..=13.
const INV_FACT: [Dd; 12] = [
    Dd::new(0.5, 0.0),
    Dd::new(0.16666666666666666, 9.25185853854297e-18),
    Dd::new(0.041666666666666664, 2.3129646346357427e-18),
    Dd::new(0.008333333333333333, 1.1564823173178714e-19),
    Dd::new(0.001388888888888889, -5.300543954373577e-20),
    Dd::new(0.0001984126984126984, 1.7209558293420705e-22),
    Dd::new(2.48015873015873e-05, 2.1511947866775882e-23),
    Dd::new(2.7557319223985893e-06, -1.858393274046472e-22),
    Dd::new(2.755731922398589e-07, 2.3767714622250297e-23),
    Dd::new(2.505210838544172e-08, -1.448814070935912e-24),
    Dd::new(2.08767569878681e-09, -1.20734505911326e-25),
    Dd::new(1.6059043836821613e-10, 1.2585294588752098e-26),
];

/// `x * 2^k` without going through `powi`, which may not be exact.
#[inline]
fn ldexp(x: f64, k: i32) -> f64 {
    if k > 1023 {
        x * f64::from_bits(0x7fe0_0000_0000_0000) * 2f64.powi(k - 1023)
    } else if k < -1022 {
        x * f64::from_bits(0x0010_0000_0000_0000) * 2f64.powi(k + 1022)
    } else {
        x * f64::from_bits(((1023 + k) as u64) << 52)
    }
}

impl Neg for Dd {
    type Output = Dd;
    #[inline]
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Add for Dd {
    type Output = Dd;
    #[inline]
    fn add(self, b: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Dd { hi, lo }
    }
}

impl AddAssign for Dd {
    #[inline]
    fn add_assign(&mut self, b: Dd) {
        *self = *self + b;
    }
}

impl Sub for Dd {
    type Output = Dd;
    #[inline]
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl Mul for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, b: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = self.hi.mul_add(b.lo, self.lo.mul_add(b.hi, e));
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        let r = self - b.mul_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b.mul_f64(q2);
        let q3 = r.hi / b.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo } + Dd::from_f64(q3)
    }
}

impl PartialOrd for Dd {
    fn partial_cmp(&self, other: &Dd) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi) {
            Some(Ordering::Equal) => self.lo.partial_cmp(&other.lo),
            ord => ord,
        }
    }
}

/// `B_{2k} / (2k (2k - 1))`, k = 1..=16.
const STIRLING: [Dd; 16] = [
    Dd::new(0.08333333333333333, 4.625929269271485e-18),
    Dd::new(-0.002777777777777778, 1.0601087908747154e-19),
    Dd::new(0.0007936507936507937, 6.883823317368282e-22),
    Dd::new(-0.0005952380952380953, 5.36938218754726e-20),
    Dd::new(0.0008417508417508417, 3.6870174889237694e-20),
    Dd::new(-0.0019175269175269176, 1.0675702776872475e-19),
    Dd::new(0.00641025641025641, 2.2240044563805217e-19),
    Dd::new(-0.029550653594771242, 4.861760957508855e-19),
    Dd::new(0.17964437236883057, -6.401600482710946e-19),
    Dd::new(-1.3924322169059011, 1.5837056989230303e-17),
    Dd::new(13.402864044168393, -6.154114101993966e-16),
    Dd::new(-156.84828462600203, 9.391823141715389e-15),
    Dd::new(2193.1033333333335, -1.3339255626002948e-13),
    Dd::new(-36108.77125372499, 5.897583353514365e-13),
    Dd::new(691472.268851313, 2.5585296305158e-11),
    Dd::new(-15238221.539407415, -8.76774522490625e-10),
];

const STIRLING_MIN: f64 = 25.0;

/// `ln Gamma(x)` for `x > 0`.
pub(crate) fn ln_gamma(x: f64) -> Dd {
    ln_gamma_dd(Dd::from_f64(x))
}

pub(crate) fn ln_gamma_dd(x: Dd) -> Dd {
    debug_assert!(x.hi > 0.0);
    let mut shift = Dd::ONE;
    let mut y = x;
    while y.hi < STIRLING_MIN {
        shift = shift * y;
        y += Dd::ONE;
    }
    let mut acc = (y - Dd::from_f64(0.5)) * y.ln() - y + HALF_LN_2PI;
    let inv = y.recip();
    let inv2 = inv * inv;
    let mut pow = inv;
    for &coeff in STIRLING.iter() {
        let term = coeff * pow;
        acc += term;
        if term.hi.abs() < 1e-34 * acc.hi.abs() {
            break;
        }
        pow = pow * inv2;
    }
    if shift != Dd::ONE {
        acc = acc - shift.ln();
    }
    acc
}

/// `1 / Gamma(x)` for any real `x`; exactly zero at the poles.
#[cfg(test)]
pub(crate) fn rgamma(x: f64) -> Dd {
    rgamma_dd(Dd::from_f64(x))
}

pub(crate) fn rgamma_dd(x: Dd) -> Dd {
    if x.hi > 0.0 {
        return (-ln_gamma_dd(x)).exp();
    }
    if x.lo == 0.0 && x.hi == x.hi.floor() {
        return Dd::ZERO;
    }
    // 1/Gamma(x) = x (x+1) ... (x+m-1) / Gamma(x+m)
    let mut prod = Dd::ONE;
    let mut arg = x;
    while arg.hi <= 0.0 {
        prod = prod * arg;
        arg += Dd::ONE;
    }
    prod * (-ln_gamma_dd(arg)).exp()
}
