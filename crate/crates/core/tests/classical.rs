mod common;

use std::f64::consts::PI;

use common::{roundtrip_data, truth};
use fracstefan::classical::{
    classical_admissibility, classical_residuals, convergence_probe, solve_classical,
};
use fracstefan::inverse::{CaseId, Condition, KnownCoefficients, ProblemData, Verdict};
use fracstefan::profiles::{profile_eval, ProfileKind};
use fracstefan::specfun::{erf, gamma, SeriesPolicy};
use fracstefan::Error;

fn classical_base(known: KnownCoefficients) -> ProblemData {
    ProblemData {
        alpha: 1.0,
        mu: 1.0,
        nu: 1.0,
        t_m: 0.0,
        t_0: 1.0,
        q_0: 1.0,
        sigma: 1.0,
        known,
    }
}

#[test]
fn every_case_satisfies_the_classical_system() {
    for case in CaseId::ALL {
        let data = roundtrip_data(case, 0.5).at_classical_limit();
        let sol = solve_classical(case, &data).unwrap();
        assert_eq!(sol.sigma_star, data.sigma / 2.0);
        let (r1, r2) = classical_residuals(&sol);
        assert!(r1 <= 1e-10 && r2 <= 1e-10, "case {case}: {r1:e} {r2:e}");
    }
}

#[test]
fn cases_agree_on_the_same_classical_solution() {
    // Solve case 1 first, then feed its completed set to the other cases.
    let data = roundtrip_data(CaseId::LatentSpecific, 0.5).at_classical_limit();
    let first = solve_classical(CaseId::LatentSpecific, &data).unwrap();
    for case in CaseId::ALL {
        let d = ProblemData {
            known: first.coefficients.known_for(case),
            ..data
        };
        let sol = solve_classical(case, &d).unwrap();
        assert!(
            (sol.xi_star - first.xi_star).abs() <= 1e-11 * first.xi_star,
            "case {case}"
        );
        for c in case.unknowns() {
            let (a, b) = (sol.coefficients.get(c), first.coefficients.get(c));
            assert!((a - b).abs() <= 1e-9 * b, "case {case} {c}: {a} vs {b}");
        }
    }
}

#[test]
fn erf_quotient_root() {
    // k ΔT / (q0 σ* √π) = 0.5.
    let k = 0.5 * 0.5 * PI.sqrt();
    let data = classical_base(KnownCoefficients {
        k: Some(k),
        rho: Some(1.0),
        ..Default::default()
    });
    let sol = solve_classical(CaseId::LatentSpecific, &data).unwrap();
    let x = sol.xi_star;
    assert!((erf(x) / x - 0.5).abs() <= 1e-12);
    assert!((x - 1.9902328376288838).abs() <= 1e-12);
}

#[test]
fn density_conductivity_has_a_root_for_any_data() {
    for &(c, l) in &[(1e-3, 5.0), (1.0, 1.0), (40.0, 0.5)] {
        let data = classical_base(KnownCoefficients {
            c: Some(c),
            l: Some(l),
            ..Default::default()
        });
        let sol = solve_classical(CaseId::DensityConductivity, &data).unwrap();
        let x = sol.xi_star;
        let rhs = c / (l * PI.sqrt());
        assert!((x * erf(x) * (x * x).exp() - rhs).abs() <= 1e-10 * rhs.max(1.0));
    }
}

#[test]
fn classical_conditions() {
    let known = KnownCoefficients {
        rho: Some(1.0),
        l: Some(1.0),
        ..Default::default()
    };
    let data = ProblemData {
        q_0: 0.5,
        ..classical_base(known)
    };
    match classical_admissibility(CaseId::SpecificConductivity, &data).unwrap() {
        Verdict::Violated(v) => assert_eq!(v.condition, Condition::LatentRatio),
        Verdict::Admissible => panic!("q0 / (ρ l σ*) = 1 must be inadmissible"),
    }
    assert!(matches!(
        solve_classical(CaseId::SpecificConductivity, &data),
        Err(Error::Inadmissible { .. })
    ));
    let fractional = ProblemData { alpha: 0.5, ..data };
    assert!(solve_classical(CaseId::SpecificConductivity, &fractional).is_err());
}

#[test]
fn probe_converges_for_case_one() {
    let base = roundtrip_data(CaseId::LatentSpecific, 0.5);
    let table = convergence_probe(
        CaseId::LatentSpecific,
        &base,
        &[0.9, 0.99, 0.999],
        &|_| 1.0,
        &|_| 1.0,
        &SeriesPolicy::default(),
    )
    .unwrap();
    assert!(table.xi_deviation_decreasing());
    assert!(table.final_within(1e-2));
    for row in &table.rows {
        assert!(row.xi_deviation.is_finite() && row.max_coefficient_deviation().is_finite());
    }
}

#[test]
fn probe_reports_the_failing_order() {
    // Admissible at α = 0.9 only: the ratio condition involves Γ(1 ± α/2).
    let g = |a: f64| gamma(1.0 + a / 2.0).unwrap() / gamma(1.0 - a / 2.0).unwrap();
    let known = KnownCoefficients {
        rho: Some(1.0),
        l: Some(1.0),
        ..Default::default()
    };
    let base = ProblemData {
        alpha: 0.5,
        q_0: 0.5 * (g(0.5) + g(0.9)),
        ..classical_base(known)
    };
    let err = convergence_probe(
        CaseId::SpecificConductivity,
        &base,
        &[0.9, 0.5],
        &|_| 1.0,
        &|_| 1.0,
        &SeriesPolicy::default(),
    );
    match err {
        Err(Error::Probe { alpha, source }) => {
            assert_eq!(alpha, 0.5);
            assert!(matches!(*source, Error::Inadmissible { .. }));
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn twice_classical_root_nearly_solves_fractional_equation() {
    // Relation (1) at α = 0.999 evaluated at 2ξ*.
    let data = roundtrip_data(CaseId::DensityConductivity, 0.5).at_classical_limit();
    let sol = solve_classical(CaseId::DensityConductivity, &data).unwrap();
    let alpha = 0.999;
    let lhs = profile_eval(
        ProfileKind::StefanRatio,
        2.0 * sol.xi_star,
        alpha,
        &SeriesPolicy::default(),
    )
    .unwrap();
    let t = truth();
    let rhs = t.c * data.delta_t() * gamma(1.0 - alpha / 2.0).unwrap()
        / (t.l * gamma(1.0 + alpha / 2.0).unwrap());
    assert!((lhs - rhs).abs() <= 1e-2 * rhs, "{lhs} vs {rhs}");
}
