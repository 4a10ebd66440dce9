mod common;

use common::*;
use proptest::prelude::*;
use quasilp::{
    c64, hermitian_eigen, matrix_power, modulus, operator_norm, p_theta, polar, schatten_norm, singular_values,
    ComplexMatrix, HermitianMatrix, PExponent,
};

const PS: [f64; 7] = [0.25, 0.5, 0.9, 1.0, 2.0, 3.5, f64::INFINITY];

fn hermitian(g: &ComplexMatrix) -> HermitianMatrix {
    HermitianMatrix::new((g + &g.adjoint()).scale_real(0.5)).unwrap()
}

fn positive(g: &ComplexMatrix) -> HermitianMatrix {
    let d = g.dim();
    HermitianMatrix::new(g * &g.adjoint() + ComplexMatrix::identity(d).scale_real(0.05)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn eigenvalues_match_oracle(g in arb_matrix(1..=6)) {
        let h = hermitian(&g);
        let mut ours = hermitian_eigen(&h).unwrap().eigenvalues().to_vec();
        ours.sort_by(f64::total_cmp);
        let oracle = hermitian_eigenvalues(&dense(h.as_matrix()));
        for (a, b) in ours.iter().zip(&oracle) {
            prop_assert!((a - b).abs() <= 1e-12 * (1.0 + b.abs()), "{a} vs {b}");
        }
    }

    #[test]
    fn eigen_reassembles(g in arb_matrix(1..=6)) {
        let h = hermitian(&g);
        let e = hermitian_eigen(&h).unwrap();
        prop_assert!(e.reassemble().max_abs_diff(h.as_matrix()) <= 1e-13);
        let u = e.unitary();
        let gram = &u.adjoint() * u;
        prop_assert!(gram.max_abs_diff(&ComplexMatrix::identity(h.dim())) <= 1e-13);
    }

    #[test]
    fn singular_values_match_oracle(g in arb_matrix(1..=6)) {
        let ours = singular_values(&g).unwrap();
        let oracle = common::singular_values(&dense(&g));
        for (a, b) in ours.iter().zip(&oracle) {
            prop_assert!((a - b).abs() <= 1e-12 * oracle[0].max(1.0), "{a} vs {b}");
        }
    }

    #[test]
    fn singular_values_of_adjoint(g in arb_matrix(1..=6)) {
        let a = singular_values(&g).unwrap();
        let b = singular_values(&g.adjoint()).unwrap();
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((x - y).abs() <= 1e-13 * a[0].max(1.0));
        }
    }

    #[test]
    fn rank_one_singular_values(u in arb_matrix(2..=6), scale in -200i32..0) {
        // outer product of two columns, far below unit scale
        let d = u.dim();
        let f = 2f64.powi(scale);
        let x = ComplexMatrix::from_rows(
            &(0..d).map(|i| (0..d).map(|j| u.get(i, 0) * u.get(j, 1).conj() * f).collect()).collect::<Vec<_>>(),
        ).unwrap();
        let n0: f64 = (0..d).map(|i| u.get(i, 0).norm_sqr()).sum::<f64>().sqrt();
        let n1: f64 = (0..d).map(|i| u.get(i, 1).norm_sqr()).sum::<f64>().sqrt();
        let s = singular_values(&x).unwrap();
        prop_assert!(rel_close(s[0], n0 * n1 * f, 1e-13));
        prop_assert!(s[1..].iter().all(|&v| v <= 1e-14 * s[0]));
    }

    #[test]
    fn schatten_matches_oracle(g in arb_matrix(1..=5)) {
        let oracle = dense(&g);
        for p in PS {
            let ours = schatten_norm(&g, PExponent::of(p)).unwrap();
            prop_assert!(rel_close(ours, schatten(&oracle, p), 1e-11), "p={p}");
        }
    }

    #[test]
    fn unitary_invariance(g in arb_matrix(2..=5), w in arb_matrix(2..=5), v in arb_matrix(2..=5)) {
        let d = g.dim().min(w.dim()).min(v.dim());
        let cut = |m: &ComplexMatrix| ComplexMatrix::from_rows(
            &(0..d).map(|i| (0..d).map(|j| m.get(i, j)).collect()).collect::<Vec<_>>()).unwrap();
        let (x, u, v) = (cut(&g), unitary_from(&cut(&w)), unitary_from(&cut(&v)));
        let y = &(&u * &x) * &v;
        for p in PS {
            let p = PExponent::of(p);
            prop_assert!(rel_close(schatten_norm(&x, p).unwrap(), schatten_norm(&y, p).unwrap(), 1e-12));
        }
    }

    #[test]
    fn holder((x, y) in arb_pair(1..=5), i in 0usize..7, j in 0usize..7) {
        let (p, q) = (PExponent::of(PS[i]), PExponent::of(PS[j]));
        let r = PExponent::from_reciprocal(p.reciprocal() + q.reciprocal()).unwrap();
        let lhs = schatten_norm(&(&x * &y), r).unwrap();
        let rhs = schatten_norm(&x, p).unwrap() * schatten_norm(&y, q).unwrap();
        prop_assert!(lhs <= rhs * (1.0 + 1e-12));
    }

    #[test]
    fn quasi_triangle((x, y) in arb_pair(1..=5), i in 0usize..7) {
        let p = PExponent::of(PS[i]);
        let s = schatten_norm(&(&x + &y), p).unwrap();
        let (a, b) = (schatten_norm(&x, p).unwrap(), schatten_norm(&y, p).unwrap());
        if p.value() < 1.0 {
            let q = p.value();
            prop_assert!(s.powf(q) <= (a.powf(q) + b.powf(q)) * (1.0 + 1e-12));
        } else {
            prop_assert!(s <= (a + b) * (1.0 + 1e-12));
        }
    }

    #[test]
    fn two_p_identity(g in arb_matrix(1..=5), i in 0usize..7) {
        let p = PExponent::of(PS[i]);
        let xx = &g.adjoint() * &g;
        let lhs = schatten_norm(&g, PExponent::of(2.0 * p.value())).unwrap().powi(2);
        prop_assert!(rel_close(lhs, schatten_norm(&xx, p).unwrap(), 1e-11));
    }

    #[test]
    fn power_one_is_identity_map(g in arb_matrix(1..=5)) {
        let h = positive(&g);
        let a1 = matrix_power(&h, c64(1.0, 0.0)).unwrap();
        prop_assert!(a1.max_abs_diff(h.as_matrix()) <= 1e-12 * h.as_matrix().max_abs());
    }

    #[test]
    fn powers_add(g in arb_matrix(1..=5), s in -1.5f64..1.5, t in -1.5f64..1.5, im in -2.0f64..2.0) {
        let h = positive(&g);
        let a = matrix_power(&h, c64(s, im)).unwrap();
        let b = matrix_power(&h, c64(t, -0.5 * im)).unwrap();
        let ab = matrix_power(&h, c64(s + t, 0.5 * im)).unwrap();
        let scale = ab.max_abs().max(a.max_abs() * b.max_abs());
        prop_assert!((&a * &b).max_abs_diff(&ab) <= 1e-11 * scale);
    }

    #[test]
    fn imaginary_powers_are_unitary(g in arb_matrix(1..=5), t in -5.0f64..5.0) {
        let h = positive(&g);
        let u = matrix_power(&h, c64(0.0, t)).unwrap();
        let gram = &u.adjoint() * &u;
        prop_assert!(gram.max_abs_diff(&ComplexMatrix::identity(h.dim())) <= 1e-12);
    }

    #[test]
    fn polar_reconstructs(g in arb_matrix(1..=5)) {
        let (u, a) = polar(&g).unwrap();
        let back = &u * a.as_matrix();
        prop_assert!(back.max_abs_diff(&g) <= 1e-12 * g.max_abs().max(1.0));
        let m = modulus(&g).unwrap();
        prop_assert!(m.as_matrix().max_abs_diff(a.as_matrix()) <= 1e-12 * g.max_abs().max(1.0));
        let gram = &u.adjoint() * &u;
        prop_assert!(gram.max_abs_diff(&ComplexMatrix::identity(g.dim())) <= 1e-10);
    }

    #[test]
    fn operator_norm_is_top_singular_value(g in arb_matrix(1..=5)) {
        let s = common::singular_values(&dense(&g));
        prop_assert!(rel_close(operator_norm(&g).unwrap(), s[0], 1e-12));
    }

    #[test]
    fn p_theta_is_reciprocal_interpolation(i in 0usize..7, j in 0usize..7, theta in 0.01f64..0.99) {
        let (p0, p1) = (PExponent::of(PS[i]), PExponent::of(PS[j]));
        let pt = p_theta(p0, p1, theta);
        let want = (1.0 - theta) / PS[i] + theta / PS[j];
        prop_assert!((pt.reciprocal() - want).abs() <= 1e-14 * want.max(1.0));
    }
}

#[test]
fn diagonal_norms_are_exact() {
    let x = ComplexMatrix::from_diagonal(&[3.0, -4.0]);
    assert!((schatten_norm(&x, PExponent::of(2.0)).unwrap() - 5.0).abs() < 1e-15);
    assert!((schatten_norm(&x, PExponent::of(1.0)).unwrap() - 7.0).abs() < 1e-15);
    assert_eq!(schatten_norm(&x, PExponent::of(f64::INFINITY)).unwrap(), 4.0);
    let half = schatten_norm(&x, PExponent::of(0.5)).unwrap();
    assert!((half - (3f64.sqrt() + 2.0).powi(2)).abs() < 1e-13);
}

#[test]
fn invalid_exponents_are_rejected() {
    assert!(PExponent::new(0.0).is_err());
    assert!(PExponent::new(-1.0).is_err());
    assert!(PExponent::new(f64::NAN).is_err());
    assert!(PExponent::new(f64::INFINITY).is_ok());
}
