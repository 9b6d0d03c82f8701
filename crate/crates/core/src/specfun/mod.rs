//! Special functions: Gamma and its reciprocal, the error function, the
//! Wright function `W(z, a, b)` for `-1 < a < 0`, the Mainardi function and
//! the Caputo derivative of a power.
//!
//! The Wright series alternates for negative `z` and cancels heavily once
//! `|z|` grows (at `z = -8`, `a = -0.45` the largest term is ~1e10 times the
//! sum), so terms are formed and accumulated in double-double arithmetic and
//! only the final sum is rounded to `f64`.

pub(crate) mod dd;

use crate::error::{Error, Result};
use dd::Dd;

/// Γ(x) for x > 0.
pub fn gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("gamma requires x > 0, got {x}")));
    }
    Ok(Dd::from(x).ln_gamma().exp().to_f64())
}

/// 1/Γ(x) for any real x; exactly zero at the poles 0, -1, -2, ...
pub fn reciprocal_gamma(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    rgamma_scaled(Dd::from(x), Dd::ZERO).to_f64()
}

/// The error function.
pub fn erf(x: f64) -> f64 {
    libm::erf(x)
}

/// `exp(log_scale) / Γ(x)` in double-double.
///
/// Large-negative arguments go through the reflection formula so that the
/// exponent stays moderate and the poles come out as exact zeros.
fn rgamma_scaled(x: Dd, log_scale: Dd) -> Dd {
    if x.hi >= 0.5 {
        (log_scale - x.ln_gamma()).exp()
    } else {
        let s = x.sin_pi();
        if s.is_zero() {
            return Dd::ZERO;
        }
        let one_minus = -x + 1.0;
        (log_scale + one_minus.ln_gamma()).exp() * s / dd::PI
    }
}

/// Arguments of the Wright function restricted to `-1 < a < 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WrightArgs {
    z: f64,
    a: f64,
    b: f64,
}

impl WrightArgs {
    pub fn new(z: f64, a: f64, b: f64) -> Result<Self> {
        if !(a > -1.0 && a < 0.0) {
            return Err(Error::Domain(format!(
                "Wright parameter a must lie in (-1, 0), got {a}"
            )));
        }
        if !z.is_finite() || !b.is_finite() {
            return Err(Error::Domain(format!(
                "non-finite Wright argument z={z}, b={b}"
            )));
        }
        Ok(WrightArgs { z, a, b })
    }

    pub fn z(&self) -> f64 {
        self.z
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    fn with_z(self, z: f64) -> Self {
        WrightArgs { z, ..self }
    }
}

/// Truncation controls for the Wright series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesPolicy {
    relative_term_cutoff: f64,
    max_terms: usize,
    domain_bound: f64,
}

impl Default for SeriesPolicy {
    fn default() -> Self {
        SeriesPolicy {
            relative_term_cutoff: 1e-16,
            max_terms: 500,
            domain_bound: 8.0,
        }
    }
}

impl SeriesPolicy {
    pub fn new(relative_term_cutoff: f64, max_terms: usize, domain_bound: f64) -> Result<Self> {
        if !(relative_term_cutoff > 0.0) || max_terms < 50 || !(domain_bound > 0.0) {
            return Err(Error::Domain(format!(
                "invalid series policy: cutoff={relative_term_cutoff}, max_terms={max_terms}, bound={domain_bound}"
            )));
        }
        Ok(SeriesPolicy {
            relative_term_cutoff,
            max_terms,
            domain_bound,
        })
    }

    pub fn relative_term_cutoff(&self) -> f64 {
        self.relative_term_cutoff
    }

    pub fn max_terms(&self) -> usize {
        self.max_terms
    }

    pub fn domain_bound(&self) -> f64 {
        self.domain_bound
    }
}

/// Number of consecutive negligible terms that ends the summation.
const QUIET_TERMS: usize = 3;

/// Partial sum `Σ_{k >= first} z^k / (k! Γ(a k + b))`.
fn wright_series(args: WrightArgs, policy: &SeriesPolicy, first: usize) -> Result<Dd> {
    let WrightArgs { z, a, b } = args;
    if z.abs() > policy.domain_bound {
        return Err(Error::Domain(format!(
            "|z| = {} exceeds the series domain bound {}",
            z.abs(),
            policy.domain_bound
        )));
    }
    if z == 0.0 {
        return Ok(if first == 0 {
            rgamma_scaled(Dd::from(b), Dd::ZERO)
        } else {
            Dd::ZERO
        });
    }

    let ln_abs_z = Dd::from(z.abs()).ln();
    let mut ln_factorial = Dd::ZERO;
    let mut sum = Dd::ZERO;
    let mut peak = 0.0f64;
    let mut past_peak = false;
    let mut quiet = 0;

    for k in 0..policy.max_terms {
        if k > 1 {
            ln_factorial = ln_factorial + Dd::from(k as f64).ln();
        }
        if k < first {
            continue;
        }
        // a*k + b is exact in double-double, which keeps the poles exact.
        let arg = Dd::from_prod(a, k as f64) + b;
        let mut term = rgamma_scaled(arg, ln_abs_z * k as f64 - ln_factorial);
        if z < 0.0 && k % 2 == 1 {
            term = -term;
        }
        sum = sum + term;

        let size = term.hi.abs();
        if size < peak {
            past_peak = true;
        }
        peak = peak.max(size);
        if past_peak && size <= policy.relative_term_cutoff * sum.hi.abs() {
            quiet += 1;
            if quiet == QUIET_TERMS {
                return Ok(sum);
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::NonConvergence {
        z,
        terms: policy.max_terms,
    })
}

/// The Wright function `W(z, a, b) = Σ z^k / (k! Γ(a k + b))`.
pub fn wright(args: WrightArgs, policy: &SeriesPolicy) -> Result<f64> {
    wright_series(args, policy, 0).map(Dd::to_f64)
}

/// `W(z, a, b) - 1/Γ(b)`, the series without its constant term.
///
/// `1 - W(-x, a, 1)` is computed as the negated tail, which keeps full
/// relative accuracy as `x -> 0`.
pub fn wright_tail(args: WrightArgs, policy: &SeriesPolicy) -> Result<f64> {
    wright_series(args, policy, 1).map(Dd::to_f64)
}

/// The Mainardi function `M_ν(x) = W(-x, -ν, 1 - ν)`.
pub fn mainardi(x: f64, nu: f64, policy: &SeriesPolicy) -> Result<f64> {
    if !(x >= 0.0) {
        return Err(Error::Domain(format!("mainardi requires x >= 0, got {x}")));
    }
    if !(nu > 0.0 && nu < 1.0) {
        return Err(Error::Domain(format!(
            "mainardi requires 0 < nu < 1, got {nu}"
        )));
    }
    wright(WrightArgs::new(-x, -nu, 1.0 - nu)?, policy)
}

/// Mismatch between a central difference of `W` in `z` and the closed-form
/// derivative `W(z, a, a + b)`.
pub fn wright_derivative_check(args: WrightArgs, h: f64, policy: &SeriesPolicy) -> Result<f64> {
    if !(h > 0.0) {
        return Err(Error::Domain(format!("step must be positive, got {h}")));
    }
    let forward = wright(args.with_z(args.z + h), policy)?;
    let backward = wright(args.with_z(args.z - h), policy)?;
    let exact = wright(WrightArgs::new(args.z, args.a, args.a + args.b)?, policy)?;
    Ok(((forward - backward) / (2.0 * h) - exact).abs())
}

/// Caputo derivative of order `alpha` of `t^p`:
/// `Γ(p + 1) / Γ(p - α + 1) · t^(p - α)`.
pub fn caputo_power(p: f64, alpha: f64, t: f64) -> Result<f64> {
    if !(p > 0.0) {
        return Err(Error::Domain(format!(
            "caputo_power requires p > 0, got {p}"
        )));
    }
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::Domain(format!(
            "caputo_power requires 0 < alpha <= 1, got {alpha}"
        )));
    }
    if !(t > 0.0) {
        return Err(Error::Domain(format!(
            "caputo_power requires t > 0, got {t}"
        )));
    }
    Ok(gamma(p + 1.0)? * reciprocal_gamma(p - alpha + 1.0) * t.powf(p - alpha))
}
