//! Bracketing bisection for strictly monotone scalar equations `f(x) = r`
//! on `(0, ∞)`.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Increasing,
    Decreasing,
}

/// Geometric expansion steps allowed in each direction from the seed.
const MAX_DOUBLINGS: usize = 60;
/// Residual target relative to `max(1, |target|)`.
const RESIDUAL_TOL: f64 = 1e-10;

/// A monotone equation `func(x) = target` to be solved for `x > 0`.
pub struct RootProblem<F> {
    pub func: F,
    pub direction: Direction,
    pub target: f64,
    /// Starting point of the bracket search.
    pub bracket_seed: f64,
    /// Relative tolerance on the bracket width.
    pub tolerance: f64,
    /// Open attainable range of `func`; when set, targets outside it are
    /// rejected up front with [`Error::Range`].
    pub range: Option<(f64, f64)>,
    /// Largest `x` at which `func` may be evaluated.
    pub upper_limit: Option<f64>,
}

impl<F> RootProblem<F>
where
    F: Fn(f64) -> Result<f64>,
{
    pub fn new(func: F, direction: Direction, target: f64) -> Self {
        RootProblem {
            func,
            direction,
            target,
            bracket_seed: 1.0,
            tolerance: 1e-12,
            range: None,
            upper_limit: None,
        }
    }

    pub fn with_range(mut self, lower: f64, upper: f64) -> Self {
        self.range = Some((lower, upper));
        self
    }

    pub fn with_upper_limit(mut self, limit: f64) -> Self {
        self.upper_limit = Some(limit);
        self
    }

    pub fn with_seed(mut self, seed: f64) -> Self {
        self.bracket_seed = seed;
        self
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }

    /// `true` when the root lies to the right of `x`.
    fn root_is_above(&self, value: f64) -> bool {
        match self.direction {
            Direction::Increasing => value < self.target,
            Direction::Decreasing => value > self.target,
        }
    }
}

/// Solve a [`RootProblem`] by geometric bracketing followed by pure bisection.
///
/// Identical inputs give bit-identical roots.
pub fn solve_monotone<F>(problem: &RootProblem<F>) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let target = problem.target;
    if !target.is_finite() {
        return Err(Error::Domain(format!("non-finite target {target}")));
    }
    if !(problem.tolerance > 0.0) {
        return Err(Error::Domain(format!(
            "tolerance must be positive, got {}",
            problem.tolerance
        )));
    }
    if let Some((lower, upper)) = problem.range {
        if !(target > lower && target < upper) {
            return Err(Error::Range {
                target,
                lower,
                upper,
            });
        }
    }
    let cap = problem.upper_limit.unwrap_or(f64::INFINITY);
    let seed = problem.bracket_seed.min(cap);
    if !(seed > 0.0) {
        return Err(Error::Domain(format!(
            "bracket seed must be positive, got {seed}"
        )));
    }

    let (mut lo, mut hi) = (seed, seed);
    let seed_value = (problem.func)(seed)?;
    if seed_value == target {
        return Ok(seed);
    }
    let mut found = false;
    if problem.root_is_above(seed_value) {
        for _ in 0..MAX_DOUBLINGS {
            if hi >= cap {
                break;
            }
            lo = hi;
            hi = (hi * 2.0).min(cap);
            if !problem.root_is_above((problem.func)(hi)?) {
                found = true;
                break;
            }
        }
    } else {
        for _ in 0..MAX_DOUBLINGS {
            hi = lo;
            lo *= 0.5;
            if problem.root_is_above((problem.func)(lo)?) {
                found = true;
                break;
            }
        }
    }
    if !found {
        return Err(Error::Bracket { target, lo, hi });
    }

    let scale = target.abs().max(1.0);
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            return Ok(mid);
        }
        let value = (problem.func)(mid)?;
        let narrow = hi - lo <= problem.tolerance * mid;
        if narrow && (value - target).abs() <= RESIDUAL_TOL * scale {
            return Ok(mid);
        }
        if value == target {
            return Ok(mid);
        }
        if problem.root_is_above(value) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}
