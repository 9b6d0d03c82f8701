//! Double-double arithmetic (an unevaluated sum `hi + lo` of two f64 values,
//! about 32 significant digits) and the handful of elementary functions the
//! Wright series needs: `exp`, `ln`, `ln Γ` and `sin(πx)`.

use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

pub const PI: Dd = Dd::new(std::f64::consts::PI, 1.2246467991473532e-16);
pub const LN2: Dd = Dd::new(std::f64::consts::LN_2, 2.3190468138462996e-17);
const HALF_LN_2PI: Dd = Dd::new(0.9189385332046728, -3.8782941580672414e-17);

/// Stirling coefficients B_{2j} / (2j (2j - 1)) as exact numerator/denominator pairs.
const STIRLING: [(f64, f64); 12] = [
    (1.0, 12.0),
    (-1.0, 360.0),
    (1.0, 1260.0),
    (-1.0, 1680.0),
    (1.0, 1188.0),
    (-691.0, 360360.0),
    (1.0, 156.0),
    (-3617.0, 122400.0),
    (43867.0, 244188.0),
    (-174611.0, 125400.0),
    (77683.0, 5796.0),
    (-236364091.0, 1506960.0),
];

/// Below this the argument of `ln Γ` is shifted upward before the
/// asymptotic series is used; 12 terms then reach ~1e-37.
const STIRLING_SHIFT: f64 = 40.0;

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
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

    /// Exact product of two doubles.
    pub fn from_prod(a: f64, b: f64) -> Self {
        let (hi, lo) = two_prod(a, b);
        Dd { hi, lo }
    }

    pub fn is_zero(self) -> bool {
        self.hi == 0.0 && self.lo == 0.0
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    /// Multiplication by an exact power of two.
    fn ldexp(self, n: i32) -> Self {
        // Split so that 2^n never overflows on its own.
        let half = n / 2;
        let s1 = 2f64.powi(half);
        let s2 = 2f64.powi(n - half);
        Dd::new(self.hi * s1 * s2, self.lo * s1 * s2)
    }

    pub fn exp(self) -> Self {
        if self.hi > 709.7 {
            return Dd::new(f64::INFINITY, 0.0);
        }
        if self.hi < -745.0 {
            return Dd::ZERO;
        }
        let k = (self.hi / LN2.hi).round();
        // |r| <= ln2/2, then scaled by 2^-10 so the Taylor tail is negligible.
        let r = (self - LN2 * k).ldexp(-10);
        let mut term = r;
        let mut expm1 = r;
        for i in 2..=12 {
            term = term * r / i as f64;
            expm1 = expm1 + term;
        }
        // (1 + e)^2 - 1 = 2e + e^2, repeated to undo the scaling.
        for _ in 0..10 {
            expm1 = expm1 * 2.0 + expm1 * expm1;
        }
        (expm1 + 1.0).ldexp(k as i32)
    }

    /// Natural logarithm, `self > 0`.
    pub fn ln(self) -> Self {
        debug_assert!(self.hi > 0.0);
        let mut y = Dd::from(self.hi.ln());
        for _ in 0..2 {
            y = y + self * (-y).exp() - 1.0;
        }
        y
    }

    /// `sin(π x)`, exactly zero at integers.
    pub fn sin_pi(self) -> Self {
        let n = self.hi.round();
        let r = self - n;
        if r.is_zero() {
            return Dd::ZERO;
        }
        let theta = PI * r;
        let theta2 = theta * theta;
        let mut term = theta;
        let mut sum = theta;
        let mut i = 1.0;
        loop {
            term = -(term * theta2) / ((i + 1.0) * (i + 2.0));
            sum = sum + term;
            i += 2.0;
            if term.hi.abs() < 1e-34 * sum.hi.abs() {
                break;
            }
        }
        if n.rem_euclid(2.0) == 1.0 {
            -sum
        } else {
            sum
        }
    }

    /// `ln Γ(x)` for `x > 0`.
    pub fn ln_gamma(self) -> Self {
        debug_assert!(self.hi > 0.0);
        let mut y = self;
        let mut shift = Dd::ONE;
        while y.hi < STIRLING_SHIFT {
            shift = shift * y;
            y = y + 1.0;
        }
        let inv = Dd::ONE / y;
        let inv2 = inv * inv;
        let mut power = inv;
        let mut series = Dd::ZERO;
        for &(num, den) in STIRLING.iter() {
            series = series + power * (Dd::from(num) / den);
            power = power * inv2;
        }
        let stirling = (y - 0.5) * y.ln() - y + HALF_LN_2PI + series;
        if shift.hi == 1.0 && shift.lo == 0.0 {
            stirling
        } else {
            stirling - shift.ln()
        }
    }
}

impl From<f64> for Dd {
    fn from(v: f64) -> Self {
        Dd::new(v, 0.0)
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd::new(-self.hi, -self.lo)
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, rhs: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, rhs.hi);
        let (t, f) = two_sum(self.lo, rhs.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Dd::new(hi, lo)
    }
}

impl Add<f64> for Dd {
    type Output = Dd;
    fn add(self, rhs: f64) -> Dd {
        let (s, e) = two_sum(self.hi, rhs);
        let (hi, lo) = quick_two_sum(s, e + self.lo);
        Dd::new(hi, lo)
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, rhs: Dd) -> Dd {
        self + (-rhs)
    }
}

impl Sub<f64> for Dd {
    type Output = Dd;
    fn sub(self, rhs: f64) -> Dd {
        self + (-rhs)
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, rhs: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, rhs.hi);
        let e = e + (self.hi * rhs.lo + self.lo * rhs.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd::new(hi, lo)
    }
}

impl Mul<f64> for Dd {
    type Output = Dd;
    fn mul(self, rhs: f64) -> Dd {
        let (p, e) = two_prod(self.hi, rhs);
        let (hi, lo) = quick_two_sum(p, e + self.lo * rhs);
        Dd::new(hi, lo)
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, rhs: Dd) -> Dd {
        let q1 = self.hi / rhs.hi;
        let r = self - rhs * q1;
        let q2 = r.hi / rhs.hi;
        let r = r - rhs * q2;
        let q3 = r.hi / rhs.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd::new(hi, lo) + q3
    }
}

impl Div<f64> for Dd {
    type Output = Dd;
    fn div(self, rhs: f64) -> Dd {
        self / Dd::from(rhs)
    }
}
