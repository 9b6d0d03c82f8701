//! Recovery of two unknown thermal coefficients among `k`, `ρ`, `c`, `l`.
//!
//! The similarity solution reduces the problem to two scalar relations in
//! the similarity variable `ξ = σ / (√μ λ)`, `λ² = k / (ρ c)`:
//!
//! ```text
//! (1)  ξ f(ξ) / M(ξ) = c (T0 - Tm) Γ(1 - α/2) / (μ ν l Γ(1 + α/2))
//! (2)  f(ξ)          = √(k ρ c) (T0 - Tm) / (√μ q0 Γ(1 - α/2))
//! ```
//!
//! with `f = f_α` and `M = M_{α/2}`. For every choice of the unknown pair
//! the two relations decouple into one monotone equation for `ξ` and closed
//! forms for the coefficients.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::profiles::{f_alpha, profile_eval, profile_range, ProfileKind};
use crate::scalar_root::{solve_monotone, Direction, RootProblem};
use crate::specfun::{gamma, mainardi, SeriesPolicy};

/// Largest relative residual of the characterizing system accepted on a solve.
pub const RESIDUAL_TOLERANCE: f64 = 1e-8;

/// One of the four thermal coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Coefficient {
    /// Thermal conductivity.
    K,
    /// Mass density.
    Rho,
    /// Specific heat.
    C,
    /// Latent heat per unit mass.
    L,
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Coefficient::K => "k",
            Coefficient::Rho => "rho",
            Coefficient::C => "c",
            Coefficient::L => "l",
        })
    }
}

/// Which pair of coefficients is unknown.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseId {
    /// Unknown `l` and `c`.
    LatentSpecific = 1,
    /// Unknown `c` and `k`.
    SpecificConductivity = 2,
    /// Unknown `l` and `k`.
    LatentConductivity = 3,
    /// Unknown `c` and `ρ`.
    SpecificDensity = 4,
    /// Unknown `l` and `ρ`.
    LatentDensity = 5,
    /// Unknown `ρ` and `k`.
    DensityConductivity = 6,
}

impl CaseId {
    pub const ALL: [CaseId; 6] = [
        CaseId::LatentSpecific,
        CaseId::SpecificConductivity,
        CaseId::LatentConductivity,
        CaseId::SpecificDensity,
        CaseId::LatentDensity,
        CaseId::DensityConductivity,
    ];

    pub fn from_index(id: u8) -> Result<Self> {
        match id {
            1..=6 => Ok(CaseId::ALL[id as usize - 1]),
            _ => Err(Error::InvalidData(format!(
                "case must be in 1..=6, got {id}"
            ))),
        }
    }

    pub fn index(self) -> u8 {
        self as u8
    }

    /// The two coefficients this case recovers.
    pub fn unknowns(self) -> [Coefficient; 2] {
        use Coefficient::*;
        match self {
            CaseId::LatentSpecific => [L, C],
            CaseId::SpecificConductivity => [C, K],
            CaseId::LatentConductivity => [L, K],
            CaseId::SpecificDensity => [C, Rho],
            CaseId::LatentDensity => [L, Rho],
            CaseId::DensityConductivity => [Rho, K],
        }
    }

    /// The two coefficients this case takes as data.
    pub fn knowns(self) -> [Coefficient; 2] {
        let unknown = self.unknowns();
        let mut out = [Coefficient::K; 2];
        let mut i = 0;
        for c in [
            Coefficient::K,
            Coefficient::Rho,
            Coefficient::C,
            Coefficient::L,
        ] {
            if !unknown.contains(&c) {
                out[i] = c;
                i += 1;
            }
        }
        out
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index())
    }
}

/// Coefficients supplied as data; any subset may be present.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KnownCoefficients {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l: Option<f64>,
}

impl KnownCoefficients {
    pub fn get(&self, which: Coefficient) -> Option<f64> {
        match which {
            Coefficient::K => self.k,
            Coefficient::Rho => self.rho,
            Coefficient::C => self.c,
            Coefficient::L => self.l,
        }
    }

    fn present(&self) -> impl Iterator<Item = (Coefficient, f64)> + '_ {
        [
            Coefficient::K,
            Coefficient::Rho,
            Coefficient::C,
            Coefficient::L,
        ]
        .into_iter()
        .filter_map(|c| self.get(c).map(|v| (c, v)))
    }
}

/// A complete set of thermal coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Coefficients {
    pub k: f64,
    pub rho: f64,
    pub c: f64,
    pub l: f64,
}

impl Coefficients {
    pub fn get(&self, which: Coefficient) -> f64 {
        match which {
            Coefficient::K => self.k,
            Coefficient::Rho => self.rho,
            Coefficient::C => self.c,
            Coefficient::L => self.l,
        }
    }

    /// Thermal diffusivity root `λ = √(k / (ρ c))`.
    pub fn lambda(&self) -> f64 {
        (self.k / (self.rho * self.c)).sqrt()
    }

    /// The subset of these values that is known in `case`.
    pub fn known_for(&self, case: CaseId) -> KnownCoefficients {
        let mut known = KnownCoefficients::default();
        for c in case.knowns() {
            let v = Some(self.get(c));
            match c {
                Coefficient::K => known.k = v,
                Coefficient::Rho => known.rho = v,
                Coefficient::C => known.c = v,
                Coefficient::L => known.l = v,
            }
        }
        known
    }
}

/// Known scalars of the inverse problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProblemData {
    /// Order of the Caputo derivative, in (0, 1].
    pub alpha: f64,
    /// Dimensional constant of the diffusion equation, in (0, 1].
    pub mu: f64,
    /// Dimensional constant of the Stefan condition, in (0, 1].
    pub nu: f64,
    /// Melting temperature.
    pub t_m: f64,
    /// Imposed temperature at the fixed face, above `t_m`.
    pub t_0: f64,
    /// Flux coefficient at the fixed face: `k T_x(0, t) = -q0 t^(-α/2)`.
    pub q_0: f64,
    /// Front coefficient: `s(t) = σ t^(α/2)`.
    pub sigma: f64,
    pub known: KnownCoefficients,
}

impl ProblemData {
    pub fn validate(&self) -> Result<()> {
        let in_unit = |v: f64| v > 0.0 && v <= 1.0;
        if !in_unit(self.alpha) {
            return Err(Error::InvalidData(format!(
                "alpha must lie in (0, 1], got {}",
                self.alpha
            )));
        }
        if !in_unit(self.mu) || !in_unit(self.nu) {
            return Err(Error::InvalidData(format!(
                "mu and nu must lie in (0, 1], got mu={}, nu={}",
                self.mu, self.nu
            )));
        }
        if !self.t_m.is_finite() || !self.t_0.is_finite() || !(self.t_0 > self.t_m) {
            return Err(Error::InvalidData(format!(
                "require T_0 > T_m, got T_0={}, T_m={}",
                self.t_0, self.t_m
            )));
        }
        if !(self.q_0 > 0.0 && self.q_0.is_finite()) {
            return Err(Error::InvalidData(format!(
                "q_0 must be positive, got {}",
                self.q_0
            )));
        }
        if !(self.sigma > 0.0 && self.sigma.is_finite()) {
            return Err(Error::InvalidData(format!(
                "sigma must be positive, got {}",
                self.sigma
            )));
        }
        for (c, v) in self.known.present() {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidData(format!(
                    "coefficient {c} must be positive, got {v}"
                )));
            }
        }
        Ok(())
    }

    pub fn delta_t(&self) -> f64 {
        self.t_0 - self.t_m
    }

    /// The same data with `α = μ = ν = 1`.
    pub fn at_classical_limit(&self) -> ProblemData {
        ProblemData {
            alpha: 1.0,
            mu: 1.0,
            nu: 1.0,
            ..*self
        }
    }

    fn require(&self, case: CaseId, which: Coefficient) -> Result<f64> {
        self.known.get(which).ok_or(Error::MissingCoefficient {
            case,
            coefficient: which,
        })
    }

    /// The two known coefficients of `case`, rejecting any unknown one that
    /// was supplied as well.
    fn knowns_for(&self, case: CaseId) -> Result<()> {
        for c in case.knowns() {
            self.require(case, c)?;
        }
        for c in case.unknowns() {
            if self.known.get(c).is_some() {
                return Err(Error::InvalidData(format!(
                    "coefficient {c} is recovered in case {case} and must not be supplied"
                )));
            }
        }
        Ok(())
    }
}

/// The data inequality a case depends on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Condition {
    /// `k (T0 - Tm) / (σ q0) < 1` (cases 1, 4, 5).
    FluxRatio,
    /// `ν σ ρ l Γ(1 + α/2) / (q0 Γ(1 - α/2)) < 1` (case 2).
    LatentRatio,
}

impl Condition {
    pub fn formula(self) -> &'static str {
        match self {
            Condition::FluxRatio => "k(T0-Tm)/(sigma q0)",
            Condition::LatentRatio => "nu sigma rho l Gamma(1+alpha/2)/(q0 Gamma(1-alpha/2))",
        }
    }
}

/// A violated admissibility inequality and the offending value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Violation {
    pub condition: Condition,
    pub value: f64,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {} >= 1", self.condition.formula(), self.value)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Verdict {
    Admissible,
    Violated(Violation),
}

impl Verdict {
    pub fn is_admissible(&self) -> bool {
        matches!(self, Verdict::Admissible)
    }
}

/// Gamma values that recur in every formula.
#[derive(Debug, Clone, Copy)]
struct GammaPair {
    /// `Γ(1 - α/2)`
    minus: f64,
    /// `Γ(1 + α/2)`
    plus: f64,
}

impl GammaPair {
    fn new(alpha: f64) -> Result<Self> {
        Ok(GammaPair {
            minus: gamma(1.0 - alpha / 2.0)?,
            plus: gamma(1.0 + alpha / 2.0)?,
        })
    }
}

/// Necessary and sufficient data condition for `case`; strict inequality,
/// so data on the boundary is inadmissible.
pub fn admissibility(case: CaseId, data: &ProblemData) -> Result<Verdict> {
    data.validate()?;
    data.knowns_for(case)?;
    let value = match case {
        CaseId::LatentSpecific | CaseId::SpecificDensity | CaseId::LatentDensity => {
            let k = data.require(case, Coefficient::K)?;
            (
                Condition::FluxRatio,
                k * data.delta_t() / (data.sigma * data.q_0),
            )
        }
        CaseId::SpecificConductivity => {
            let rho = data.require(case, Coefficient::Rho)?;
            let l = data.require(case, Coefficient::L)?;
            let g = GammaPair::new(data.alpha)?;
            (
                Condition::LatentRatio,
                data.nu * data.sigma * rho * l * g.plus / (data.q_0 * g.minus),
            )
        }
        CaseId::LatentConductivity | CaseId::DensityConductivity => return Ok(Verdict::Admissible),
    };
    let (condition, value) = value;
    Ok(if value < 1.0 {
        Verdict::Admissible
    } else {
        Verdict::Violated(Violation { condition, value })
    })
}

/// Outcome of an inverse solve.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub case: CaseId,
    pub alpha: f64,
    /// Similarity variable `ξ = σ / (√μ λ)`.
    pub xi: f64,
    /// `λ = √(k / (ρ c))` of the completed coefficient set.
    pub lambda: f64,
    pub coefficients: Coefficients,
    pub recovered: [Coefficient; 2],
    pub residual_eq1: f64,
    pub residual_eq2: f64,
    pub verdict: Verdict,
}

/// The monotone equation that determines `ξ` in `case`: profile and target.
fn xi_equation(case: CaseId, data: &ProblemData, g: GammaPair) -> Result<(ProfileKind, f64)> {
    let dt = data.delta_t();
    let known = |c| data.require(case, c);
    Ok(match case {
        CaseId::LatentSpecific | CaseId::SpecificDensity | CaseId::LatentDensity => {
            let k = known(Coefficient::K)?;
            (
                ProfileKind::Quotient,
                k * dt / (data.sigma * data.q_0 * g.minus),
            )
        }
        CaseId::SpecificConductivity => {
            let rho = known(Coefficient::Rho)?;
            let l = known(Coefficient::L)?;
            (
                ProfileKind::Mainardi,
                data.nu * data.sigma * rho * l * g.plus / (data.q_0 * g.minus * g.minus),
            )
        }
        CaseId::LatentConductivity => {
            let rho = known(Coefficient::Rho)?;
            let c = known(Coefficient::C)?;
            (
                ProfileKind::Product,
                data.sigma * rho * c * dt / (data.mu * data.q_0 * g.minus),
            )
        }
        CaseId::DensityConductivity => {
            let c = known(Coefficient::C)?;
            let l = known(Coefficient::L)?;
            (
                ProfileKind::StefanRatio,
                c * dt * g.minus / (data.mu * data.nu * l * g.plus),
            )
        }
    })
}

/// Solve `profile(x) = target` for `x` in `(0, domain_bound]`.
pub(crate) fn solve_profile_equation(
    kind: ProfileKind,
    target: f64,
    alpha: f64,
    policy: &SeriesPolicy,
) -> Result<f64> {
    let (lower, upper) = profile_range(kind, alpha)?;
    if !(target > lower && target < upper) {
        return Err(Error::Range {
            target,
            lower,
            upper,
        });
    }
    let bound = policy.domain_bound();
    let at_bound = profile_eval(kind, bound, alpha, policy)?;
    let beyond = if kind.is_increasing() {
        target > at_bound
    } else {
        target < at_bound
    };
    if beyond {
        return Err(Error::DomainBoundExceeded { bound, target });
    }
    let direction = if kind.is_increasing() {
        Direction::Increasing
    } else {
        Direction::Decreasing
    };
    let problem = RootProblem::new(|x| profile_eval(kind, x, alpha, policy), direction, target)
        .with_range(lower, upper)
        .with_upper_limit(bound);
    solve_monotone(&problem)
}

/// Recover the two unknown coefficients of `case` from `data`.
pub fn solve_case(case: CaseId, data: &ProblemData, policy: &SeriesPolicy) -> Result<SolveReport> {
    let verdict = admissibility(case, data)?;
    if let Verdict::Violated(violation) = verdict {
        return Err(Error::Inadmissible { case, violation });
    }
    if data.alpha >= 1.0 {
        return Err(Error::InvalidData(
            "alpha = 1 is the classical problem; use classical::solve_classical".into(),
        ));
    }
    let alpha = data.alpha;
    let g = GammaPair::new(alpha)?;
    let (kind, target) = xi_equation(case, data, g)?;
    let xi = solve_profile_equation(kind, target, alpha, policy)?;

    let f = f_alpha(xi, alpha, policy)?;
    let m = mainardi(xi, alpha / 2.0, policy)?;
    let (mu, nu, q0, sigma, dt) = (data.mu, data.nu, data.q_0, data.sigma, data.delta_t());
    let known = |c| data.require(case, c);

    // (√(kρc))² from relation (2).
    let heat_product = (q0 * mu.sqrt() * g.minus * f / dt).powi(2);
    // l·(kρ) fixed by eliminating c between (1) and (2).
    let latent_product = q0 * q0 * g.minus.powi(3) * f * m / (nu * dt * g.plus * xi);
    // c/l fixed by relation (1).
    let specific_over_latent = mu * nu * g.plus * xi * f / (dt * g.minus * m);

    let coefficients = match case {
        CaseId::LatentSpecific => {
            let (k, rho) = (known(Coefficient::K)?, known(Coefficient::Rho)?);
            Coefficients {
                k,
                rho,
                c: heat_product / (rho * k),
                l: latent_product / (rho * k),
            }
        }
        CaseId::SpecificConductivity => {
            let (rho, l) = (known(Coefficient::Rho)?, known(Coefficient::L)?);
            Coefficients {
                k: latent_product / (rho * l),
                rho,
                c: specific_over_latent * l,
                l,
            }
        }
        CaseId::LatentConductivity => {
            let (rho, c) = (known(Coefficient::Rho)?, known(Coefficient::C)?);
            Coefficients {
                k: heat_product / (rho * c),
                rho,
                c,
                l: c / specific_over_latent,
            }
        }
        CaseId::SpecificDensity => {
            let (k, l) = (known(Coefficient::K)?, known(Coefficient::L)?);
            Coefficients {
                k,
                rho: latent_product / (k * l),
                c: specific_over_latent * l,
                l,
            }
        }
        CaseId::LatentDensity => {
            let (k, c) = (known(Coefficient::K)?, known(Coefficient::C)?);
            Coefficients {
                k,
                rho: heat_product / (k * c),
                c,
                l: c / specific_over_latent,
            }
        }
        CaseId::DensityConductivity => {
            let (c, l) = (known(Coefficient::C)?, known(Coefficient::L)?);
            Coefficients {
                k: sigma * q0 * g.minus * f / (dt * xi),
                rho: q0 * mu * g.minus * xi * f / (sigma * c * dt),
                c,
                l,
            }
        }
    };

    for which in case.unknowns() {
        let v = coefficients.get(which);
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::Domain(format!(
                "recovered {which} = {v} is not a positive number"
            )));
        }
    }
    let (residual_eq1, residual_eq2) = system_residuals(xi, &coefficients, data, policy)?;
    if !(residual_eq1 <= RESIDUAL_TOLERANCE && residual_eq2 <= RESIDUAL_TOLERANCE) {
        return Err(Error::ResidualCheck {
            residual_eq1,
            residual_eq2,
        });
    }
    Ok(SolveReport {
        case,
        alpha,
        xi,
        lambda: coefficients.lambda(),
        coefficients,
        recovered: case.unknowns(),
        residual_eq1,
        residual_eq2,
        verdict,
    })
}

fn relative_gap(lhs: f64, rhs: f64) -> f64 {
    let scale = lhs.abs().max(rhs.abs());
    if scale == 0.0 {
        0.0
    } else {
        (lhs - rhs).abs() / scale
    }
}

/// Relative residuals of relations (1) and (2) at `xi` for a complete
/// coefficient set.
pub fn system_residuals(
    xi: f64,
    coeffs: &Coefficients,
    data: &ProblemData,
    policy: &SeriesPolicy,
) -> Result<(f64, f64)> {
    let alpha = data.alpha;
    let g = GammaPair::new(alpha)?;
    let dt = data.delta_t();
    let m = mainardi(xi, alpha / 2.0, policy)?;
    let f = if xi > 0.0 {
        f_alpha(xi, alpha, policy)?
    } else {
        0.0
    };
    let lhs1 = xi * f / m;
    let rhs1 = coeffs.c * dt * g.minus / (data.mu * data.nu * coeffs.l * g.plus);
    let lhs2 = f;
    let rhs2 =
        (coeffs.k * coeffs.rho * coeffs.c).sqrt() * dt / (data.mu.sqrt() * data.q_0 * g.minus);
    Ok((relative_gap(lhs1, rhs1), relative_gap(lhs2, rhs2)))
}

/// `σ` and `q0` that make `truth` an exact solution for the given order and
/// temperatures; `ξ` comes from relation (1), then (2) fixes `q0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConsistentData {
    pub xi: f64,
    pub sigma: f64,
    pub q_0: f64,
}

pub fn consistent_data(
    truth: &Coefficients,
    alpha: f64,
    mu: f64,
    nu: f64,
    t_m: f64,
    t_0: f64,
    policy: &SeriesPolicy,
) -> Result<ConsistentData> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidData(format!(
            "alpha must lie in (0, 1), got {alpha}"
        )));
    }
    let g = GammaPair::new(alpha)?;
    let dt = t_0 - t_m;
    let target = truth.c * dt * g.minus / (mu * nu * truth.l * g.plus);
    let xi = solve_profile_equation(ProfileKind::StefanRatio, target, alpha, policy)?;
    let f = f_alpha(xi, alpha, policy)?;
    let sigma = xi * mu.sqrt() * truth.lambda();
    let q_0 = (truth.k * truth.rho * truth.c).sqrt() * dt / (mu.sqrt() * g.minus * f);
    Ok(ConsistentData { xi, sigma, q_0 })
}
