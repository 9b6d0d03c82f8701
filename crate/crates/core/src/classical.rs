//! The classical problem (`α = 1`, no memory) in closed erf form, and the
//! probe that tracks the fractional solution as `α → 1⁻`.
//!
//! With `σ* = σ/2` the classical similarity variable is `ξ* = σ*/λ`, and the
//! fractional `ξ(α)` tends to `2ξ*`. This module never calls the fractional
//! path, so it can serve as the convergence target.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::inverse::{
    admissibility, solve_case, CaseId, Coefficient, Coefficients, Condition, ProblemData,
    SolveReport, Verdict, Violation,
};
use crate::scalar_root::{solve_monotone, Direction, RootProblem};
use crate::specfun::{erf, SeriesPolicy};

/// `exp(x²)` overflows past this.
const EXP_SQUARE_LIMIT: f64 = 26.0;

#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalSolution {
    pub case: CaseId,
    /// `σ* = σ / 2`.
    pub sigma_star: f64,
    /// Root of the case's erf-form equation.
    pub xi_star: f64,
    pub lambda: f64,
    pub coefficients: Coefficients,
    pub data: ProblemData,
}

/// Classical admissibility. Cases 1, 4, 5: `k (T0 - Tm) / (2 σ* q0) < 1`;
/// case 2: `q0 / (ρ l σ*) > 1`; cases 3, 6: none.
pub fn classical_admissibility(case: CaseId, data: &ProblemData) -> Result<Verdict> {
    check_classical(data)?;
    match case {
        CaseId::SpecificConductivity => {
            // q0 / (ρ l σ*) > 1, stated as ρ l σ* / q0 < 1.
            let known = data.known;
            let rho = known.rho.ok_or(Error::MissingCoefficient {
                case,
                coefficient: Coefficient::Rho,
            })?;
            let l = known.l.ok_or(Error::MissingCoefficient {
                case,
                coefficient: Coefficient::L,
            })?;
            let ratio = rho * l * (data.sigma / 2.0) / data.q_0;
            Ok(if ratio < 1.0 {
                Verdict::Admissible
            } else {
                Verdict::Violated(Violation {
                    condition: Condition::LatentRatio,
                    value: ratio,
                })
            })
        }
        _ => admissibility(case, data),
    }
}

fn check_classical(data: &ProblemData) -> Result<()> {
    data.validate()?;
    if data.alpha != 1.0 || data.mu != 1.0 || data.nu != 1.0 {
        return Err(Error::InvalidData(format!(
            "classical solve needs alpha = mu = nu = 1, got alpha={}, mu={}, nu={}",
            data.alpha, data.mu, data.nu
        )));
    }
    Ok(())
}

fn required(case: CaseId, data: &ProblemData, which: Coefficient) -> Result<f64> {
    data.known.get(which).ok_or(Error::MissingCoefficient {
        case,
        coefficient: which,
    })
}

/// Solve the classical problem for `case`; `data` must have `α = μ = ν = 1`.
pub fn solve_classical(case: CaseId, data: &ProblemData) -> Result<ClassicalSolution> {
    if let Verdict::Violated(violation) = classical_admissibility(case, data)? {
        return Err(Error::Inadmissible { case, violation });
    }
    let sigma_star = data.sigma / 2.0;
    let (q0, dt) = (data.q_0, data.delta_t());
    let sqrt_pi = PI.sqrt();
    let known = |c| required(case, data, c);

    let xi_star = match case {
        CaseId::LatentSpecific | CaseId::SpecificDensity | CaseId::LatentDensity => {
            let target = known(Coefficient::K)? * dt / (q0 * sigma_star * sqrt_pi);
            let problem = RootProblem::new(|x: f64| Ok(erf(x) / x), Direction::Decreasing, target)
                .with_range(0.0, 2.0 / sqrt_pi);
            solve_monotone(&problem)?
        }
        CaseId::SpecificConductivity => {
            let target = q0 / (known(Coefficient::Rho)? * known(Coefficient::L)? * sigma_star);
            let problem =
                RootProblem::new(|x: f64| Ok((x * x).exp()), Direction::Increasing, target)
                    .with_range(1.0, f64::INFINITY)
                    .with_upper_limit(EXP_SQUARE_LIMIT);
            solve_monotone(&problem)?
        }
        CaseId::LatentConductivity => {
            let target = known(Coefficient::Rho)? * known(Coefficient::C)? * sigma_star * dt
                / (q0 * sqrt_pi);
            let problem = RootProblem::new(|x: f64| Ok(x * erf(x)), Direction::Increasing, target)
                .with_range(0.0, f64::INFINITY);
            solve_monotone(&problem)?
        }
        CaseId::DensityConductivity => {
            let target = known(Coefficient::C)? * dt / (known(Coefficient::L)? * sqrt_pi);
            let problem = RootProblem::new(
                |x: f64| Ok(x * erf(x) * (x * x).exp()),
                Direction::Increasing,
                target,
            )
            .with_range(0.0, f64::INFINITY)
            .with_upper_limit(EXP_SQUARE_LIMIT);
            solve_monotone(&problem)?
        }
    };

    let x2 = xi_star * xi_star;
    let decay = (-x2).exp();
    let coefficients = match case {
        CaseId::LatentSpecific => {
            let (k, rho) = (known(Coefficient::K)?, known(Coefficient::Rho)?);
            Coefficients {
                k,
                rho,
                c: k / rho * (xi_star / sigma_star).powi(2),
                l: q0 * decay / (rho * sigma_star),
            }
        }
        CaseId::SpecificConductivity => {
            let (rho, l) = (known(Coefficient::Rho)?, known(Coefficient::L)?);
            let e = erf(xi_star);
            Coefficients {
                k: sigma_star * q0 * sqrt_pi * e / (dt * xi_star),
                rho,
                c: q0 * sqrt_pi * xi_star * e / (rho * sigma_star * dt),
                l,
            }
        }
        CaseId::LatentConductivity => {
            let (rho, c) = (known(Coefficient::Rho)?, known(Coefficient::C)?);
            Coefficients {
                k: rho * c * (sigma_star / xi_star).powi(2),
                rho,
                c,
                l: q0 * decay / (rho * sigma_star),
            }
        }
        CaseId::SpecificDensity => {
            let (k, l) = (known(Coefficient::K)?, known(Coefficient::L)?);
            Coefficients {
                k,
                rho: q0 * decay / (l * sigma_star),
                c: k * l * x2 * x2.exp() / (q0 * sigma_star),
                l,
            }
        }
        CaseId::LatentDensity => {
            let (k, c) = (known(Coefficient::K)?, known(Coefficient::C)?);
            Coefficients {
                k,
                rho: k / c * (xi_star / sigma_star).powi(2),
                c,
                l: q0 * c * sigma_star * decay / (k * x2),
            }
        }
        CaseId::DensityConductivity => {
            let (c, l) = (known(Coefficient::C)?, known(Coefficient::L)?);
            Coefficients {
                k: q0 * c * sigma_star * decay / (l * x2),
                rho: q0 * decay / (l * sigma_star),
                c,
                l,
            }
        }
    };

    Ok(ClassicalSolution {
        case,
        sigma_star,
        xi_star,
        lambda: coefficients.lambda(),
        coefficients,
        data: *data,
    })
}

/// Relative residuals of the characterizing relations at `α = 1`
/// (`Γ(1/2) = √π`, `Γ(3/2) = √π/2`, `ξ = 2ξ*`).
pub fn classical_residuals(solution: &ClassicalSolution) -> (f64, f64) {
    let c = &solution.coefficients;
    let data = &solution.data;
    let x = solution.xi_star;
    let dt = data.delta_t();
    let lhs1 = 2.0 * x * erf(x) * PI.sqrt() * (x * x).exp();
    let rhs1 = 2.0 * c.c * dt / c.l;
    let lhs2 = erf(x);
    let rhs2 = (c.k * c.rho * c.c).sqrt() * dt / (data.q_0 * PI.sqrt());
    let gap = |a: f64, b: f64| (a - b).abs() / a.abs().max(b.abs());
    (gap(lhs1, rhs1), gap(lhs2, rhs2))
}

/// One sampled order of a convergence probe.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbeRow {
    pub alpha: f64,
    pub xi: f64,
    /// `|ξ(α) - 2ξ*|`.
    pub xi_deviation: f64,
    /// `|ξ(α) - 2ξ*| / (2ξ*)`.
    pub xi_relative_deviation: f64,
    /// Relative deviation of each recovered coefficient from its classical value.
    pub coefficient_deviations: [(Coefficient, f64); 2],
    pub report: SolveReport,
}

impl ProbeRow {
    pub fn max_coefficient_deviation(&self) -> f64 {
        self.coefficient_deviations
            .iter()
            .map(|(_, d)| *d)
            .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceTable {
    pub classical: ClassicalSolution,
    pub rows: Vec<ProbeRow>,
}

impl ConvergenceTable {
    /// Whether `|ξ(α) - 2ξ*|` shrinks from row to row. Reported, not enforced.
    pub fn xi_deviation_decreasing(&self) -> bool {
        self.rows
            .windows(2)
            .all(|w| w[1].xi_deviation < w[0].xi_deviation)
    }

    /// Final-row deviations (relative ξ and coefficients) at most `tol`.
    pub fn final_within(&self, tol: f64) -> bool {
        self.rows
            .last()
            .is_some_and(|r| r.xi_relative_deviation <= tol && r.max_coefficient_deviation() <= tol)
    }
}

/// Solve `case` at each order in `alphas` with `μ = mu_of(α)`, `ν = nu_of(α)`
/// and compare against the classical solution of the same data.
pub fn convergence_probe(
    case: CaseId,
    base: &ProblemData,
    alphas: &[f64],
    mu_of: &dyn Fn(f64) -> f64,
    nu_of: &dyn Fn(f64) -> f64,
    policy: &SeriesPolicy,
) -> Result<ConvergenceTable> {
    let classical = solve_classical(case, &base.at_classical_limit())?;
    let target_xi = 2.0 * classical.xi_star;
    let mut rows = Vec::with_capacity(alphas.len());
    for &alpha in alphas {
        let data = ProblemData {
            alpha,
            mu: mu_of(alpha),
            nu: nu_of(alpha),
            ..*base
        };
        let report = solve_case(case, &data, policy).map_err(|e| Error::Probe {
            alpha,
            source: Box::new(e),
        })?;
        let deviation = |c: Coefficient| {
            let reference = classical.coefficients.get(c);
            (
                c,
                (report.coefficients.get(c) - reference).abs() / reference,
            )
        };
        let [u1, u2] = case.unknowns();
        let xi_deviation = (report.xi - target_xi).abs();
        rows.push(ProbeRow {
            alpha,
            xi: report.xi,
            xi_deviation,
            xi_relative_deviation: xi_deviation / target_xi,
            coefficient_deviations: [deviation(u1), deviation(u2)],
            report,
        });
    }
    Ok(ConvergenceTable { classical, rows })
}
