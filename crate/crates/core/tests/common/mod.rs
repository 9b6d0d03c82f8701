#![allow(dead_code)]

use serde_json::Value;

const WRIGHT_REFERENCE: &str = include_str!("../data/wright_reference.json");
const SCALARS_REFERENCE: &str = include_str!("../data/scalars_reference.json");

/// One row of the extended-precision Wright grid.
pub struct WrightRow {
    pub alpha: f64,
    pub x: f64,
    pub wright: f64,
    pub mainardi: f64,
}

fn num(v: &Value) -> f64 {
    match v {
        Value::String(s) => s.parse().expect("reference number"),
        Value::Number(n) => n.as_f64().unwrap(),
        other => panic!("unexpected reference value {other}"),
    }
}

pub fn wright_grid() -> Vec<WrightRow> {
    let rows: Vec<Value> = serde_json::from_str(WRIGHT_REFERENCE).unwrap();
    rows.iter()
        .map(|r| WrightRow {
            alpha: num(&r["alpha"]),
            x: num(&r["x"]),
            wright: num(&r["wright"]),
            mainardi: num(&r["mainardi"]),
        })
        .collect()
}

pub fn scalar(name: &str) -> f64 {
    let v: Value = serde_json::from_str(SCALARS_REFERENCE).unwrap();
    num(&v[name])
}

pub fn table(name: &str) -> Vec<(f64, f64)> {
    let v: Value = serde_json::from_str(SCALARS_REFERENCE).unwrap();
    v[name]
        .as_array()
        .unwrap()
        .iter()
        .map(|pair| (num(&pair[0]), num(&pair[1])))
        .collect()
}

pub fn rel_err(actual: f64, expected: f64) -> f64 {
    if expected == 0.0 {
        actual.abs()
    } else {
        ((actual - expected) / expected).abs()
    }
}

use fracstefan::inverse::{consistent_data, CaseId, Coefficients, ProblemData};
use fracstefan::specfun::SeriesPolicy;

pub fn truth() -> Coefficients {
    Coefficients {
        k: 1.5,
        rho: 0.8,
        c: 2.0,
        l: 1.2,
    }
}

/// Data for `case` at order `alpha`, built so that `truth()` solves it
/// exactly with `T0 - Tm = 1` and `μ = ν = 1`.
pub fn roundtrip_data(case: CaseId, alpha: f64) -> ProblemData {
    let cd = consistent_data(
        &truth(),
        alpha,
        1.0,
        1.0,
        0.0,
        1.0,
        &SeriesPolicy::default(),
    )
    .unwrap();
    ProblemData {
        alpha,
        mu: 1.0,
        nu: 1.0,
        t_m: 0.0,
        t_0: 1.0,
        q_0: cd.q_0,
        sigma: cd.sigma,
        known: truth().known_for(case),
    }
}

use fracstefan::inverse::KnownCoefficients;
use fracstefan::profiles::{profile_eval, ProfileKind};
use fracstefan::specfun::gamma;
use rand::Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Draw {
    Admissible,
    Violating,
}

fn log_uniform<R: Rng>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    rng.gen_range(lo.ln()..hi.ln()).exp()
}

/// Random data for `case` at order `alpha`.
///
/// For the conditioned cases the data ratio is drawn directly: inside
/// `(ratio at ξ = 8, 1)` for admissible draws and in `[1, 10]` for violating
/// ones. The unconditioned cases draw positive data freely and return `None`
/// when `ξ` would pass the series bound of 8.
pub fn sample_data<R: Rng>(
    case: CaseId,
    alpha: f64,
    draw: Draw,
    rng: &mut R,
) -> Option<ProblemData> {
    let p = SeriesPolicy::default();
    let bound = p.domain_bound();
    let g_minus = gamma(1.0 - alpha / 2.0).unwrap();
    let g_plus = gamma(1.0 + alpha / 2.0).unwrap();
    let mu = rng.gen_range(0.5..=1.0);
    let nu = rng.gen_range(0.5..=1.0);
    let t_m = rng.gen_range(-5.0..5.0);
    let dt = log_uniform(rng, 0.1, 10.0);
    let sigma = log_uniform(rng, 0.1, 10.0);
    let mut coef = || log_uniform(rng, 0.1, 10.0);
    let (k, rho, c, l) = (coef(), coef(), coef(), coef());
    let ratio = |floor: f64, rng: &mut R| match draw {
        Draw::Admissible => {
            let u: f64 = rng.gen_range(1e-9..1.0);
            floor + (1.0 - floor) * u
        }
        Draw::Violating => rng.gen_range(1.0..=10.0),
    };
    let known = |k, rho, c, l| KnownCoefficients { k, rho, c, l };
    let (q_0, known) = match case {
        CaseId::LatentSpecific | CaseId::SpecificDensity | CaseId::LatentDensity => {
            let floor = g_minus * profile_eval(ProfileKind::Quotient, bound, alpha, &p).unwrap();
            let r = ratio(floor * (1.0 + 1e-9), rng);
            let known = match case {
                CaseId::LatentSpecific => known(Some(k), Some(rho), None, None),
                CaseId::SpecificDensity => known(Some(k), None, None, Some(l)),
                _ => known(Some(k), None, Some(c), None),
            };
            (k * dt / (sigma * r), known)
        }
        CaseId::SpecificConductivity => {
            let floor = g_minus * profile_eval(ProfileKind::Mainardi, bound, alpha, &p).unwrap();
            let r = ratio(floor * (1.0 + 1e-9), rng);
            (
                nu * sigma * rho * l * g_plus / (r * g_minus),
                known(None, Some(rho), None, Some(l)),
            )
        }
        CaseId::LatentConductivity => {
            assert_eq!(draw, Draw::Admissible, "case 3 has no condition to violate");
            let q_0 = log_uniform(rng, 0.1, 10.0);
            let target = sigma * rho * c * dt / (mu * q_0 * g_minus);
            if target >= profile_eval(ProfileKind::Product, bound, alpha, &p).unwrap() {
                return None;
            }
            (q_0, known(None, Some(rho), Some(c), None))
        }
        CaseId::DensityConductivity => {
            assert_eq!(draw, Draw::Admissible, "case 6 has no condition to violate");
            let target = c * dt * g_minus / (mu * nu * l * g_plus);
            if target >= profile_eval(ProfileKind::StefanRatio, bound, alpha, &p).unwrap() {
                return None;
            }
            (
                log_uniform(rng, 0.1, 10.0),
                known(None, None, Some(c), Some(l)),
            )
        }
    };
    Some(ProblemData {
        alpha,
        mu,
        nu,
        t_m,
        t_0: t_m + dt,
        q_0,
        sigma,
        known,
    })
}
