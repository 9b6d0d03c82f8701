mod common;

use common::{rel_err, scalar, table, wright_grid};
use fracstefan::specfun::{
    erf, gamma, mainardi, reciprocal_gamma, wright, wright_derivative_check, SeriesPolicy,
    WrightArgs,
};

#[test]
fn gamma_matches_reference() {
    for (x, expected) in table("gamma") {
        let err = rel_err(gamma(x).unwrap(), expected);
        assert!(err <= 1e-13, "gamma({x}) rel err {err:e}");
    }
}

#[test]
fn reciprocal_gamma_matches_reference() {
    for (x, expected) in table("rgamma") {
        let err = rel_err(reciprocal_gamma(x), expected);
        assert!(err <= 1e-12, "1/gamma({x}) rel err {err:e}");
    }
}

/// Maclaurin series of erf, summed smallest-term-first.
fn erf_maclaurin(x: f64) -> f64 {
    let mut terms = Vec::with_capacity(60);
    let mut power = x;
    let mut fact = 1.0;
    for n in 0..60 {
        if n > 0 {
            power *= x * x;
            fact *= n as f64;
        }
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        terms.push(sign * power / (fact * (2 * n + 1) as f64));
    }
    let sum: f64 = terms.iter().rev().sum();
    sum * 2.0 / std::f64::consts::PI.sqrt()
}

#[test]
fn erf_matches_reference_and_series() {
    for (x, expected) in table("erf") {
        let err = rel_err(erf(x), expected);
        assert!(err <= 1e-13, "erf({x}) rel err {err:e}");
        assert_eq!(erf(-x), -erf(x));
    }
    assert!(rel_err(erf(1.0), erf_maclaurin(1.0)) < 1e-14);
    assert!((erf(1.0) - 0.8427007929497149).abs() < 1e-15);
}

#[test]
fn wright_and_mainardi_match_extended_precision_grid() {
    let policy = SeriesPolicy::default();
    let mut worst = 0.0f64;
    for row in wright_grid() {
        let nu = row.alpha / 2.0;
        let w = wright(WrightArgs::new(-row.x, -nu, 1.0).unwrap(), &policy).unwrap();
        let m = mainardi(row.x, nu, &policy).unwrap();
        let ew = rel_err(w, row.wright);
        let em = rel_err(m, row.mainardi);
        worst = worst.max(ew).max(em);
        assert!(ew <= 1e-11, "W(-{}, -{nu}, 1): rel err {ew:e}", row.x);
        assert!(em <= 1e-11, "M_{nu}({}): rel err {em:e}", row.x);
    }
    eprintln!("worst relative error on the Wright grid: {worst:e}");
}

#[test]
fn single_point_references() {
    let policy = SeriesPolicy::default();
    let w = wright(WrightArgs::new(-1.0, -0.25, 1.0).unwrap(), &policy).unwrap();
    assert!(rel_err(w, scalar("wright_m1_a025")) <= 1e-11);
    let m = mainardi(1.0, 0.25, &policy).unwrap();
    assert!(rel_err(m, scalar("mainardi_1_025")) <= 1e-11);
}

#[test]
fn derivative_identity_holds_on_a_sweep() {
    let policy = SeriesPolicy::default();
    for &alpha in &[0.1, 0.5, 0.9] {
        for &z in &[-0.5, -2.0, -5.0] {
            let args = WrightArgs::new(z, -alpha / 2.0, 1.0).unwrap();
            let e1 = wright_derivative_check(args, 4e-3, &policy).unwrap();
            let e2 = wright_derivative_check(args, 2e-3, &policy).unwrap();
            let order = (e1 / e2).log2();
            assert!(
                (order - 2.0).abs() < 0.3,
                "alpha={alpha} z={z} order={order}"
            );
        }
    }
}
