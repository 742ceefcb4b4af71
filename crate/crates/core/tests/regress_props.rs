mod common;

use common::{fixtures, oracles};
use proptest::prelude::*;
use tarifflab_core::model::{parse_dataset, validate_dataset};
use tarifflab_core::regress::{assess_reciprocity, fit_ols};

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

#[test]
fn matches_normal_equations_on_seeded_data() {
    let mut rng = fixtures::rng(2025);
    for _ in 0..10 {
        let pts = fixtures::random_regression_points(&mut rng, 10);
        let fit = fit_ols(&pts).unwrap();
        let (slope, intercept) = oracles::normal_equations(&pts);
        assert!(rel_close(fit.slope, slope, 1e-9), "{} vs {}", fit.slope, slope);
        assert!(rel_close(fit.intercept, intercept, 1e-9));
    }
}

#[test]
fn r_squared_matches_brute_force() {
    let mut rng = fixtures::rng(7);
    for n in 3..30 {
        let pts = fixtures::random_regression_points(&mut rng, n);
        let fit = fit_ols(&pts).unwrap();
        let want = oracles::r_squared(&pts, fit.slope, fit.intercept);
        assert!((fit.r_squared - want).abs() < 1e-9);
        assert!((0.0..=1.0).contains(&fit.r_squared));
    }
}

#[test]
fn sample_dataset_is_discounted() {
    let d = parse_dataset(&fixtures::sample_csv()).unwrap().dataset;
    assert!(validate_dataset(&d).is_ok());
    let fit = fit_ols(&d.tariff_pairs()).unwrap();
    let (slope, _) = oracles::normal_equations(&d.tariff_pairs());
    assert!(rel_close(fit.slope, slope, 1e-9));
    assert!(assess_reciprocity(&fit).is_discounted);
}

fn points_strategy() -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((0.0..100.0f64, -50.0..150.0f64), 3..40)
        .prop_filter("needs two distinct x", |v| v.iter().any(|p| p.0 != v[0].0))
}

proptest! {
    #[test]
    fn residuals_sum_to_zero(pts in points_strategy()) {
        let fit = fit_ols(&pts).unwrap();
        let mean_abs_y = pts.iter().map(|p| p.1.abs()).sum::<f64>() / pts.len() as f64;
        let sum: f64 = fit.residuals.iter().sum();
        prop_assert!(sum.abs() <= 1e-9 * mean_abs_y.max(1.0));
        prop_assert_eq!(fit.residuals.len(), pts.len());
        prop_assert!((-1e-12..=1.0 + 1e-12).contains(&fit.r_squared));
    }

    #[test]
    fn scaling_y_scales_coefficients(pts in points_strategy(), c in 0.1..10.0f64) {
        let base = fit_ols(&pts).unwrap();
        let scaled: Vec<_> = pts.iter().map(|&(x, y)| (x, c * y)).collect();
        let fit = fit_ols(&scaled).unwrap();
        let scale = base.intercept.abs().max(base.slope.abs() * 100.0).max(1.0);
        prop_assert!((fit.slope - c * base.slope).abs() <= 1e-9 * scale * c);
        prop_assert!((fit.intercept - c * base.intercept).abs() <= 1e-9 * scale * c);
    }

    #[test]
    fn shifting_x_keeps_slope(pts in points_strategy(), shift in -50.0..50.0f64) {
        let base = fit_ols(&pts).unwrap();
        let moved: Vec<_> = pts.iter().map(|&(x, y)| (x + shift, y)).collect();
        let fit = fit_ols(&moved).unwrap();
        let scale = base.intercept.abs().max(base.slope.abs() * 150.0).max(1.0);
        prop_assert!((fit.slope - base.slope).abs() <= 1e-9 * base.slope.abs().max(1.0));
        prop_assert!((fit.intercept - (base.intercept - base.slope * shift)).abs() <= 1e-9 * scale);
    }

    #[test]
    fn collinear_points_fit_exactly(
        xs in prop::collection::vec(0.0..100.0f64, 2..30),
        slope in -3.0..3.0f64,
        intercept in -50.0..50.0f64,
    ) {
        prop_assume!(xs.iter().any(|&x| x != xs[0]));
        let pts: Vec<_> = xs.iter().map(|&x| (x, intercept + slope * x)).collect();
        let fit = fit_ols(&pts).unwrap();
        for r in &fit.residuals {
            prop_assert!(r.abs() <= 1e-9);
        }
    }
}
