mod common;

use common::roundtrip_data;
use fracstefan::classical::solve_classical;
use fracstefan::field::{moving_boundary, FieldSpec, Kernel, SimilarityField};
use fracstefan::inverse::{solve_case, CaseId};
use fracstefan::specfun::{caputo_power, erf, gamma, SeriesPolicy};

const TIMES: [f64; 4] = [0.5, 1.0, 2.0, 10.0];

fn fractional_field(case: CaseId, alpha: f64) -> SimilarityField {
    let p = SeriesPolicy::default();
    let data = roundtrip_data(case, alpha);
    let report = solve_case(case, &data, &p).unwrap();
    SimilarityField::from_report(&report, &data, &p).unwrap()
}

fn classical_field(case: CaseId) -> SimilarityField {
    let data = roundtrip_data(case, 0.5).at_classical_limit();
    SimilarityField::from_classical(&solve_classical(case, &data).unwrap()).unwrap()
}

#[test]
fn conditions_hold_for_every_solved_case() {
    for &alpha in &[0.3, 0.5, 0.8] {
        for case in CaseId::ALL {
            let report = fractional_field(case, alpha)
                .verify_conditions(&TIMES)
                .unwrap();
            assert!(report.max_front_error() <= 1e-9, "case {case}");
            assert!(report.max_flux_residual() <= 1e-8, "case {case}");
            assert!(report.max_stefan_residual() <= 1e-8, "case {case}");
            assert!(report.stefan_spread() <= 1e-12, "case {case}");
        }
    }
}

#[test]
fn classical_stefan_condition() {
    for case in CaseId::ALL {
        let report = classical_field(case).verify_conditions(&TIMES).unwrap();
        assert!(
            report.max_stefan_residual() <= 1e-9 && report.max_flux_residual() <= 1e-9,
            "case {case}"
        );
        assert!(report.max_front_error() <= 1e-9);
    }
}

#[test]
fn wright_kernel_at_order_one_matches_erf_temperature() {
    let data = roundtrip_data(CaseId::LatentSpecific, 0.5).at_classical_limit();
    let sol = solve_classical(CaseId::LatentSpecific, &data).unwrap();
    let wright = SimilarityField::new(
        Kernel::Wright,
        &data,
        sol.coefficients,
        &SeriesPolicy::default(),
    )
    .unwrap();
    for &t in &[0.5f64, 1.0, 3.0] {
        let x = sol.sigma_star * t.sqrt();
        let oracle =
            data.t_0 - data.delta_t() * erf(x / (2.0 * sol.lambda * t.sqrt())) / erf(sol.xi_star);
        assert!((wright.temperature(x, t).unwrap() - oracle).abs() <= 1e-9);
    }
}

#[test]
fn front_speed_from_the_power_rule() {
    assert_eq!(moving_boundary(1.0, 1.7, 0.5), 1.7);
    assert!((moving_boundary(4.0, 1.7, 1.0) - 3.4).abs() < 1e-15);
    let expected = gamma(1.25).unwrap() / gamma(0.75).unwrap();
    assert!((caputo_power(0.25, 0.5, 1.0).unwrap() - expected).abs() <= 1e-15);
}

#[test]
fn temperature_is_monotone_and_bounded() {
    for case in [CaseId::LatentSpecific, CaseId::DensityConductivity] {
        let f = fractional_field(case, 0.6);
        let d = *f.data();
        for &t in &TIMES {
            let s = f.front(t);
            let mut prev = f.temperature(0.0, t).unwrap();
            assert_eq!(prev, d.t_0);
            for i in 1..=100 {
                let v = f.temperature(s * i as f64 / 100.0, t).unwrap();
                assert!(v < prev, "not decreasing at t = {t}");
                assert!(v >= d.t_m - 1e-12 && v <= d.t_0);
                prev = v;
            }
        }
    }
}

#[test]
fn self_similarity() {
    let alpha = 0.45;
    let f = fractional_field(CaseId::LatentConductivity, alpha);
    for &c in &[0.5, 2.0] {
        for &(x, t) in &[(0.2, 1.0), (0.5, 3.0)] {
            let a = f.temperature(x, t).unwrap();
            let b = f.temperature(c * x, c.powf(2.0 / alpha) * t).unwrap();
            assert!((a - b).abs() <= 1e-12);
        }
    }
}

fn fitted_order(residuals: &[f64], steps: &[usize]) -> f64 {
    let xs: Vec<f64> = steps.iter().map(|&n| (n as f64).ln()).collect();
    let ys: Vec<f64> = residuals.iter().map(|r| r.ln()).collect();
    let n = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
    let cov: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let var: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    -cov / var
}

#[test]
fn l1_residual_converges_at_the_front() {
    let f = fractional_field(CaseId::LatentSpecific, 0.5);
    let steps = [256, 512, 1024];
    let x = f.front(1.0);
    let r: Vec<f64> = steps
        .iter()
        .map(|&n| f.pde_residual(x, 1.0, n).unwrap())
        .collect();
    assert!(r.windows(2).all(|w| w[1] < w[0]));
    let order = fitted_order(&r, &steps);
    assert!((order - 1.5).abs() <= 0.3, "order {order}");
}

#[test]
fn l1_residual_decreases_inside() {
    let f = fractional_field(CaseId::LatentSpecific, 0.5);
    for frac in [0.25, 0.5, 0.75] {
        let x = frac * f.front(1.0);
        let r: Vec<f64> = [128, 256, 512, 1024]
            .iter()
            .map(|&n| f.pde_residual(x, 1.0, n).unwrap())
            .collect();
        assert!(r.windows(2).all(|w| w[1] < w[0]), "x = {x}: {r:?}");
    }
}

#[test]
fn classical_heat_equation() {
    let f = classical_field(CaseId::LatentSpecific);
    let r = f.pde_residual(0.5 * f.front(1.0), 1.0, 1 << 20).unwrap();
    assert!(r <= 1e-6, "{r:e}");
}

#[test]
fn coarse_grid_far_inside_is_finite() {
    let f = fractional_field(CaseId::LatentSpecific, 0.5);
    assert!(f
        .pde_residual(0.05 * f.front(1.0), 1.0, 64)
        .unwrap()
        .is_finite());
}

#[test]
fn grid_sampling_marks_solid_points() {
    let f = fractional_field(CaseId::LatentSpecific, 0.5);
    let s1 = f.front(1.0);
    let spec = FieldSpec::new(f, vec![0.5 * s1, 2.0 * s1], vec![1.0, 100.0]).unwrap();
    let pts = spec.evaluate().unwrap();
    assert_eq!(pts.len(), 4);
    assert!(pts[0].inside && !pts[1].inside && pts[2].inside && pts[3].inside);
    assert_eq!(pts[1].temperature, spec.field.data().t_m);
}
