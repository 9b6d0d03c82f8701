//! Temperature field of a similarity solution and numerical checks of the
//! conditions it must satisfy.
//!
//! `T(x, t) = T0 - (T0 - Tm) p(η) / p(ξ)` with `η = x / (√μ λ t^(α/2))`, where
//! the profile `p` is `f_α` (Wright kernel) or `erf(η/2)` (classical kernel).

use std::f64::consts::PI;

use crate::classical::ClassicalSolution;
use crate::error::{Error, Result};
use crate::inverse::{Coefficients, ProblemData, SolveReport};
use crate::profiles::f_alpha;
use crate::specfun::{caputo_power, erf, gamma, mainardi, SeriesPolicy};

/// Front position `s(t) = σ t^(α/2)`.
pub fn moving_boundary(t: f64, sigma: f64, alpha: f64) -> f64 {
    sigma * t.powf(alpha / 2.0)
}

/// Which closed form represents the profile.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kernel {
    /// `1 - W(-η, -α/2, 1)`; valid for `0 < α <= 1`.
    Wright,
    /// `erf(η / 2)`; the classical problem only.
    Erf,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityField {
    kernel: Kernel,
    data: ProblemData,
    coefficients: Coefficients,
    lambda: f64,
    policy: SeriesPolicy,
    /// `p(ξ)`, the profile at the front.
    front_profile: f64,
}

impl SimilarityField {
    pub fn new(
        kernel: Kernel,
        data: &ProblemData,
        coefficients: Coefficients,
        policy: &SeriesPolicy,
    ) -> Result<Self> {
        data.validate()?;
        if kernel == Kernel::Erf && (data.alpha != 1.0 || data.mu != 1.0 || data.nu != 1.0) {
            return Err(Error::InvalidData(
                "the erf kernel needs alpha = mu = nu = 1".into(),
            ));
        }
        let mut field = SimilarityField {
            kernel,
            data: *data,
            coefficients,
            lambda: coefficients.lambda(),
            policy: *policy,
            front_profile: 0.0,
        };
        field.front_profile = field.profile(field.xi())?;
        Ok(field)
    }

    pub fn from_report(
        report: &SolveReport,
        data: &ProblemData,
        policy: &SeriesPolicy,
    ) -> Result<Self> {
        SimilarityField::new(Kernel::Wright, data, report.coefficients, policy)
    }

    pub fn from_classical(solution: &ClassicalSolution) -> Result<Self> {
        SimilarityField::new(
            Kernel::Erf,
            &solution.data,
            solution.coefficients,
            &SeriesPolicy::default(),
        )
    }

    pub fn kernel(&self) -> Kernel {
        self.kernel
    }

    pub fn data(&self) -> &ProblemData {
        &self.data
    }

    /// `ξ = σ / (√μ λ)`.
    pub fn xi(&self) -> f64 {
        self.data.sigma / (self.data.mu.sqrt() * self.lambda)
    }

    pub fn front(&self, t: f64) -> f64 {
        moving_boundary(t, self.data.sigma, self.data.alpha)
    }

    /// Length scale `√μ λ t^(α/2)` of the similarity variable.
    fn scale(&self, t: f64) -> f64 {
        self.data.mu.sqrt() * self.lambda * t.powf(self.data.alpha / 2.0)
    }

    fn profile(&self, eta: f64) -> Result<f64> {
        if eta == 0.0 {
            return Ok(0.0);
        }
        match self.kernel {
            Kernel::Wright => f_alpha(eta, self.data.alpha, &self.policy),
            Kernel::Erf => Ok(erf(eta / 2.0)),
        }
    }

    /// `dp/dη`.
    fn profile_slope(&self, eta: f64) -> Result<f64> {
        match self.kernel {
            Kernel::Wright => mainardi(eta, self.data.alpha / 2.0, &self.policy),
            Kernel::Erf => Ok((-eta * eta / 4.0).exp() / PI.sqrt()),
        }
    }

    /// `p(η)` at `(x, t)`; also defined past the front.
    fn scaled_profile(&self, x: f64, t: f64) -> Result<f64> {
        self.profile(x / self.scale(t))
    }

    /// Temperature at `(x, t)`, `x >= 0`, `t > 0`.
    pub fn temperature(&self, x: f64, t: f64) -> Result<f64> {
        check_point(x, t)?;
        let dt = self.data.delta_t();
        Ok(self.data.t_0 - dt * self.scaled_profile(x, t)? / self.front_profile)
    }

    /// `∂T/∂x` from the closed-form profile derivative.
    pub fn gradient(&self, x: f64, t: f64) -> Result<f64> {
        check_point(x, t)?;
        let scale = self.scale(t);
        Ok(-self.data.delta_t() * self.profile_slope(x / scale)? / (self.front_profile * scale))
    }

    /// Residuals of the boundary and Stefan conditions at each sampled time.
    pub fn verify_conditions(&self, t_samples: &[f64]) -> Result<ConditionReport> {
        let d = &self.data;
        let c = &self.coefficients;
        let mut rows = Vec::with_capacity(t_samples.len());
        for &t in t_samples {
            let s = self.front(t);
            let front_temperature_error = (self.temperature(s, t)? - d.t_m).abs();
            let flux = relative_gap(
                c.k * self.gradient(0.0, t)?,
                -d.q_0 * t.powf(-d.alpha / 2.0),
            );
            let heat_into_front = -c.k * self.gradient(s, t)?;
            let latent = d.nu * c.rho * c.l * d.sigma * caputo_power(d.alpha / 2.0, d.alpha, t)?;
            rows.push(ConditionRow {
                t,
                front_temperature_error,
                flux_residual: flux,
                stefan_residual: relative_gap(heat_into_front, latent),
            });
        }
        Ok(ConditionReport { rows })
    }

    /// Relative mismatch between an L1-quadrature Caputo derivative in time
    /// and `μ λ² T_xx` from a five-point central difference at `(x, t)`.
    ///
    /// The memory integral starts at `τ = 0`, so the formula is evaluated
    /// past the front for early `τ`; its value at `τ = 0` is the limit
    /// `p(∞) = 1`. At `α = 1` the scheme reduces to a backward difference.
    pub fn pde_residual(&self, x: f64, t: f64, n_steps: usize) -> Result<f64> {
        check_point(x, t)?;
        if x == 0.0 {
            return Err(Error::Domain("pde_residual needs x > 0".into()));
        }
        if n_steps < 64 {
            return Err(Error::Domain(format!(
                "n_steps must be at least 64, got {n_steps}"
            )));
        }
        let alpha = self.data.alpha;
        let step = t / n_steps as f64;
        // Work with p(η) directly: T is an affine image of it.
        let caputo = if alpha == 1.0 {
            (self.scaled_profile(x, t)? - self.scaled_profile(x, t - step)?) / step
        } else {
            let mut values = Vec::with_capacity(n_steps + 1);
            values.push(1.0);
            for j in 1..=n_steps {
                values.push(self.scaled_profile(x, j as f64 * step)?);
            }
            let weight =
                |m: usize| ((m + 1) as f64).powf(1.0 - alpha) - (m as f64).powf(1.0 - alpha);
            let sum: f64 = (1..=n_steps)
                .map(|j| weight(n_steps - j) * (values[j] - values[j - 1]))
                .sum();
            sum * step.powf(-alpha) / gamma(2.0 - alpha)?
        };

        let h = (0.01 * self.scale(t)).min(x / 4.0);
        let p = |dx: f64| self.scaled_profile(x + dx, t);
        let second = (-p(2.0 * h)? + 16.0 * p(h)? - 30.0 * p(0.0)? + 16.0 * p(-h)? - p(-2.0 * h)?)
            / (12.0 * h * h);
        let diffusion = self.data.mu * self.lambda * self.lambda * second;
        Ok(relative_gap(caputo, diffusion))
    }
}

fn check_point(x: f64, t: f64) -> Result<()> {
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!(
            "x must be finite and non-negative, got {x}"
        )));
    }
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::Domain(format!("t must be positive, got {t}")));
    }
    Ok(())
}

fn relative_gap(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConditionRow {
    pub t: f64,
    /// `|T(s(t), t) - Tm|`.
    pub front_temperature_error: f64,
    /// Relative residual of `k T_x(0, t) = -q0 t^(-α/2)`.
    pub flux_residual: f64,
    /// Relative residual of `-k T_x(s, t) = ν ρ l D^α s(t)`.
    pub stefan_residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConditionReport {
    pub rows: Vec<ConditionRow>,
}

impl ConditionReport {
    /// Largest difference between Stefan residuals at different times.
    pub fn stefan_spread(&self) -> f64 {
        let (lo, hi) = self
            .rows
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), r| {
                (lo.min(r.stefan_residual), hi.max(r.stefan_residual))
            });
        if self.rows.is_empty() {
            0.0
        } else {
            hi - lo
        }
    }

    pub fn max_front_error(&self) -> f64 {
        self.rows
            .iter()
            .map(|r| r.front_temperature_error)
            .fold(0.0, f64::max)
    }

    pub fn max_flux_residual(&self) -> f64 {
        self.rows
            .iter()
            .map(|r| r.flux_residual)
            .fold(0.0, f64::max)
    }

    pub fn max_stefan_residual(&self) -> f64 {
        self.rows
            .iter()
            .map(|r| r.stefan_residual)
            .fold(0.0, f64::max)
    }
}

/// A field together with the grid it is sampled on.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldSpec {
    pub field: SimilarityField,
    x_grid: Vec<f64>,
    t_grid: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldPoint {
    pub x: f64,
    pub t: f64,
    pub temperature: f64,
    /// `x <= s(t)`, i.e. the point lies in the liquid region. Points past
    /// the front are solid and sit at `Tm`.
    pub inside: bool,
}

fn check_grid(name: &str, grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::InvalidData(format!("{name} grid is empty")));
    }
    if grid.iter().any(|v| !(*v > 0.0) || !v.is_finite()) {
        return Err(Error::InvalidData(format!(
            "{name} grid must be strictly positive"
        )));
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidData(format!(
            "{name} grid must be strictly ascending"
        )));
    }
    Ok(())
}

impl FieldSpec {
    pub fn new(field: SimilarityField, x_grid: Vec<f64>, t_grid: Vec<f64>) -> Result<Self> {
        check_grid("x", &x_grid)?;
        check_grid("t", &t_grid)?;
        Ok(FieldSpec {
            field,
            x_grid,
            t_grid,
        })
    }

    /// Temperatures row-major over `t`, then `x`.
    pub fn evaluate(&self) -> Result<Vec<FieldPoint>> {
        let mut out = Vec::with_capacity(self.x_grid.len() * self.t_grid.len());
        let t_m = self.field.data.t_m;
        for &t in &self.t_grid {
            let front = self.field.front(t);
            for &x in &self.x_grid {
                let inside = x <= front;
                let temperature = if inside {
                    self.field.temperature(x, t)?
                } else {
                    t_m
                };
                out.push(FieldPoint {
                    x,
                    t,
                    temperature,
                    inside,
                });
            }
        }
        Ok(out)
    }
}
