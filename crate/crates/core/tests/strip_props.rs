mod common;

use std::f64::consts::PI;

use common::*;
use proptest::prelude::*;
use quasilp::strip::{default_t_grid, kernel_mass};
use quasilp::{
    c64, hirschman_check, hirschman_kernel, p_theta, product_power_check, schatten_norm, three_lines_check, Affine,
    AnalyticFamily, ComplexMatrix, HermitianMatrix, PExponent, QuadratureSpec, WeightedContext, Weighting,
};

const PS: [f64; 5] = [0.5, 1.0, 2.0, 4.0, f64::INFINITY];

fn positive(g: &ComplexMatrix) -> HermitianMatrix {
    let d = g.dim();
    HermitianMatrix::new(g * &g.adjoint() + ComplexMatrix::identity(d).scale_real(0.05)).unwrap()
}

/// Composite Simpson on `[-L, L]`, independent of the crate's trapezoid.
fn simpson(f: impl Fn(f64) -> f64, l: f64, n: usize) -> f64 {
    let h = 2.0 * l / n as f64;
    let inner: f64 = (1..n).map(|k| f(-l + k as f64 * h) * if k % 2 == 1 { 4.0 } else { 2.0 }).sum();
    h / 3.0 * (f(-l) + f(l) + inner)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kernel_matches_closed_form(theta in 0.01f64..0.99, t in -6.0f64..6.0) {
        let want = (PI * theta).sin() / (2.0 * theta * ((PI * t).cosh() + (PI * theta).cos()));
        let got = hirschman_kernel(theta, t);
        prop_assert!(rel_close(got, want, 1e-13));
        prop_assert!(got > 0.0);
        prop_assert!(rel_close(got, hirschman_kernel(theta, -t), 1e-15));
    }

    #[test]
    fn kernel_is_a_probability_density(theta in 0.05f64..0.95) {
        let mass = simpson(|t| hirschman_kernel(theta, t), 14.0, 8192);
        prop_assert!((mass - 1.0).abs() <= 1e-9, "{mass}");
        let (ours, err) = kernel_mass(theta, &QuadratureSpec::default()).unwrap();
        // the peak narrows like 1 - θ, so the fixed step only resolves it to
        // 1e-8 up to θ = 0.9; beyond that the error estimate must cover it
        prop_assert!((ours - 1.0).abs() <= err.max(1e-14), "{ours} {err}");
        if theta <= 0.9 {
            prop_assert!((ours - 1.0).abs() <= 1e-8);
        }
    }

    #[test]
    fn constants_obey_three_lines(g in arb_matrix(1..=4), i in 0usize..5, j in 0usize..5, theta in 0.05f64..0.95) {
        let (p0, p1) = (PExponent::of(PS[i]), PExponent::of(PS[j]));
        let fam = AnalyticFamily::constant(g.clone());
        let rep = three_lines_check(&fam, Weighting::Trace, p0, p1, theta, &default_t_grid()).unwrap();
        // ‖x‖_{p_θ} ≤ ‖x‖_{p0}^{1-θ} ‖x‖_{p1}^θ is log-convexity in 1/p
        let pt = p_theta(p0, p1, theta);
        let n = |p: PExponent| schatten(&dense(&g), p.value());
        prop_assert!(rel_close(rep.lhs, n(pt), 1e-11));
        prop_assert!(rel_close(rep.rhs, n(p0).powf(1.0 - theta) * n(p1).powf(theta), 1e-11));
        prop_assert!(rep.slack >= -1e-10 * rep.rhs && rep.sound);
    }

    #[test]
    fn weighted_constants_obey_three_lines(g in arb_matrix(2..=4), h in arb_matrix(2..=4), theta in 0.05f64..0.95) {
        prop_assume!(g.dim() == h.dim());
        let ctx = WeightedContext::new(state_from(&h, 0.1));
        let fam = AnalyticFamily::constant(g);
        let rep = three_lines_check(
            &fam, Weighting::State(&ctx), PExponent::of(1.0), PExponent::of(4.0), theta, &default_t_grid(),
        ).unwrap();
        prop_assert!(rep.slack >= -1e-10 * rep.rhs);
    }

    #[test]
    fn power_families_obey_hirschman(g in arb_matrix(1..=3), i in 0usize..3, theta in 0.1f64..0.9) {
        let a = positive(&g);
        let fam = AnalyticFamily::power(a.clone(), Affine::new(c64(1.0, 0.0), c64(0.0, 0.0))).unwrap();
        let p = PExponent::of(PS[i]);
        let rep = hirschman_check(&fam, p, p, theta, &QuadratureSpec::default()).unwrap();
        // t-invariant boundary norms: the log-average collapses to the endpoints
        let at = |z: f64| schatten_norm(&fam.evaluate(c64(z, 0.0)).unwrap(), p).unwrap().ln();
        prop_assert!((rep.lhs - at(theta)).abs() <= 1e-10 * at(theta).abs().max(1.0));
        prop_assert!(rep.slack >= -1e-6);
    }

    #[test]
    fn single_factor_is_tight(g in arb_matrix(2..=3), i in 0usize..3, k in 0usize..3) {
        let r = [0.3, 0.5, 1.0][k];
        let p = PExponent::of(PS[i]);
        let rep = product_power_check(&[positive(&g)], r, p, &QuadratureSpec::default()).unwrap();
        prop_assert!(rep.slack.abs() <= 1e-6 * rep.rhs.abs().max(1.0), "{rep:?}");
    }

    #[test]
    fn products_obey_the_power_inequality(
        (a, b) in arb_pair(2..=3), i in 0usize..3, k in 0usize..3,
    ) {
        let r = [0.3, 0.5, 1.0][k];
        let rep = product_power_check(&[positive(&a), positive(&b)], r, PExponent::of(PS[i]), &QuadratureSpec::default())
            .unwrap();
        prop_assert!(rep.slack >= -1e-6 * rep.rhs.abs().max(1.0), "{rep:?}");
    }

    #[test]
    fn commuting_factors_are_tight(
        w in prop::collection::vec((0.05f64..2.0, 0.05f64..2.0), 2..=3), i in 0usize..3, k in 0usize..3,
    ) {
        let a: Vec<f64> = w.iter().map(|x| x.0).collect();
        let b: Vec<f64> = w.iter().map(|x| x.1).collect();
        let r = [0.3, 0.5, 1.0][k];
        let rep = product_power_check(
            &[HermitianMatrix::from_diagonal(&a), HermitianMatrix::from_diagonal(&b)], r, PExponent::of(PS[i]),
            &QuadratureSpec::default(),
        ).unwrap();
        prop_assert!(rep.slack.abs() <= 1e-6 * rep.rhs.abs().max(1.0), "{rep:?}");
    }
}

#[test]
fn kernel_is_one_at_the_center_of_the_half_line() {
    assert!((hirschman_kernel(0.5, 0.0) - 1.0).abs() <= 1e-12);
}

#[test]
fn quadrature_rejects_bad_specs() {
    assert!(QuadratureSpec::new(0.0, 0.1).is_err());
    assert!(QuadratureSpec::new(8.0, 0.0).is_err());
    assert!(QuadratureSpec::new(8.0, 3.0).is_err());
    assert!(kernel_mass(1.0, &QuadratureSpec::default()).is_err());
}
