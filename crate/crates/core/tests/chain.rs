use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;
use std::f64::consts::PI;
use xyent::chain::*;
use xyent::toeplitz::{toeplitz_det_exact, xy_char_det_from_spectrum, TwoSided};
use xyent::Error;

/// Off-critical parameters, away from `h = 2` and `gamma = 0`.
fn off_critical() -> impl Strategy<Value = (f64, f64)> {
    (0.1f64..1.5, 0.0f64..4.0).prop_filter("off critical", |&(g, h)| {
        let b = 2.0 * (1.0 - g * g).max(0.0).sqrt();
        (h - 2.0).abs() > 0.2 && (h - b).abs() > 0.05
    })
}

/// `(1/2pi) int_0^{2pi} phi(theta) e^{-ik theta}` by composite Simpson, real part.
fn coeff_oracle(p: &ModelParams, k: i64) -> f64 {
    let n = 20_000;
    let h = 2.0 * PI / n as f64;
    let f = |t: f64| (symbol_phi(t, p).unwrap() * Complex64::from_polar(1.0, -(k as f64) * t)).re;
    let mut s = f(0.0) + f(2.0 * PI);
    for j in 1..n {
        s += if j % 2 == 1 { 4.0 } else { 2.0 } * f(j as f64 * h);
    }
    s * h / 3.0 / (2.0 * PI)
}

#[test]
fn two_site_spectrum_against_quadrature_and_pfaffian() {
    let p = ModelParams::new(0.5, 1.0).unwrap();
    let b = build_correlation_matrix(&p, 2, None).unwrap();
    let phi = |k: i64| coeff_oracle(&p, k);
    // B = [[Pi_0, Pi_{-1}], [Pi_1, Pi_0]] with Pi_l = [[0, phi_l], [-phi_{-l}, 0]]
    let m = DMatrix::from_row_slice(
        4,
        4,
        &[
            0.0, phi(0), 0.0, phi(-1),
            -phi(0), 0.0, -phi(1), 0.0,
            0.0, phi(1), 0.0, phi(0),
            -phi(-1), 0.0, -phi(0), 0.0,
        ],
    );
    assert!((&b.entries - &m).abs().max() < 1e-10);
    // nu^2 solve x^2 - (sum_{i<j} b_ij^2) x + Pf^2 = 0
    let s: f64 = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).map(|(i, j)| m[(i, j)].powi(2)).sum();
    let pf = m[(0, 1)] * m[(2, 3)] - m[(0, 2)] * m[(1, 3)] + m[(0, 3)] * m[(1, 2)];
    let disc = (s * s - 4.0 * pf * pf).sqrt();
    let mut want = [((s + disc) / 2.0).sqrt(), ((s - disc) / 2.0).sqrt()];
    want.sort_by(|a, b| b.total_cmp(a));
    let got = nu_spectrum(&b).unwrap();
    for (g, w) in got.nus.iter().zip(want) {
        assert!((g - w).abs() < 1e-10, "{g} vs {w}");
    }
}

#[test]
fn xx_entries_closed_form() {
    let g = build_xx_matrix(0.0, 1).unwrap();
    assert_eq!(g.entries[(0, 0)], 0.0);
    let g = build_xx_matrix(0.0, 2).unwrap();
    assert!((g.entries[(0, 1)] - 2.0 / PI).abs() < 1e-16);
    let g = build_xx_matrix(1.3, 9).unwrap();
    assert_eq!(g.kind, MatrixKind::SymmetricXX);
    for i in 0..9 {
        for j in 0..9 {
            assert_eq!(g.entries[(i, j)], g.entries[(j, i)]);
            if i > 0 && j > 0 {
                assert_eq!(g.entries[(i, j)], g.entries[(i - 1, j - 1)]);
            }
        }
    }
    assert!(matches!(build_xx_matrix(2.0, 3), Err(Error::Domain { .. })));
    let nus = nu_spectrum(&build_xx_matrix(0.0, 1).unwrap()).unwrap();
    assert_eq!(nus.nus, vec![0.0]);
}

#[test]
fn xx_and_majorana_agree_at_zero_anisotropy() {
    for h in [0.0, 1.0] {
        for l in 1..=20 {
            let maj = nu_spectrum(&build_correlation_matrix(&ModelParams::new(0.0, h).unwrap(), l, None).unwrap()).unwrap();
            let xx = nu_spectrum(&build_xx_matrix(h, l).unwrap()).unwrap();
            let mut a = maj.ascending_abs();
            let b = xx.ascending_abs();
            a.truncate(l);
            for (x, y) in a.iter().zip(&b) {
                assert!((x - y).abs() < 1e-10, "h={h} L={l}");
            }
        }
    }
}

#[test]
fn quadrature_closure() {
    let p = ModelParams::new(0.7, 0.8).unwrap();
    let a = build_correlation_matrix(&p, 10, Some(4096)).unwrap();
    let b = build_correlation_matrix(&p, 10, Some(8192)).unwrap();
    assert!((&a.entries - &b.entries).abs().max() < 1e-12);
}

#[test]
fn spectrum_multiset_matches_matrix() {
    // two degree-2L polynomials agreeing at 2L+1 points are equal, so the
    // characteristic determinants pin down the multiset {+-i nu}
    let p = ModelParams::new(0.8, 2.6).unwrap();
    let l = 3;
    let b = build_correlation_matrix(&p, l, None).unwrap();
    let nus = nu_spectrum(&b).unwrap();
    for j in 0..=2 * l {
        let lam = Complex64::new(1.5 + 0.4 * j as f64, 0.3);
        let m = DMatrix::from_fn(2 * l, 2 * l, |r, c| {
            let diag = if r == c { Complex64::new(0.0, 1.0) * lam } else { Complex64::new(0.0, 0.0) };
            diag - b.entries[(r, c)]
        });
        let direct = m.determinant();
        let spec = xy_char_det_from_spectrum(&nus.nus, lam).value();
        assert!((direct - spec).norm() < 1e-11 * direct.norm());
    }
}

#[test]
fn determinant_oracle_for_xx_symbol() {
    let g = build_xx_matrix(0.0, 6).unwrap();
    let nus = nu_spectrum(&g).unwrap();
    let coeffs = TwoSided::from_fn(5, |k| {
        let d = if k == 0 { 3.0 } else { 0.0 };
        Complex64::new(d - xx_symbol_coeff(PI / 2.0, k), 0.0)
    });
    let lu = toeplitz_det_exact(&coeffs, 6).unwrap().det.value();
    let prod: f64 = nus.nus.iter().map(|v| 3.0 - v).product();
    assert!((lu.re - prod).abs() < 1e-12 * prod);
}

#[test]
fn branch_point_examples() {
    let bp = branch_points(&ModelParams::new(1.0, 3.0).unwrap()).unwrap();
    assert_eq!(bp.lambda1, Complex64::new(0.0, 0.0));
    let bp = branch_points(&ModelParams::new(0.5, 1.0).unwrap()).unwrap();
    assert!((bp.lambda1 - Complex64::new(1.0, -2f64.sqrt()) / 3.0).norm() < 1e-15);
    assert!(((bp.lambda1 * bp.lambda2.conj()).norm() - 1.0).abs() < 1e-15);
    let bp = branch_points(&ModelParams::new(0.5, 1.9).unwrap()).unwrap();
    assert!(bp.lambda1.im == 0.0 && bp.lambda1.re > 0.0 && bp.lambda1.re < 1.0);
    assert!(bp.d.re > 1.0);
}

#[test]
fn modulus_examples() {
    let e = modulus_k(&ModelParams::new(1.0, 3.0).unwrap()).unwrap();
    assert!((e.k - 2.0 / 3.0).abs() < 1e-15);
    let e = modulus_k(&ModelParams::new(0.5, 1.0).unwrap()).unwrap();
    assert!((e.k - (2.0f64 / 3.0).sqrt()).abs() < 1e-15);
    let e = modulus_k(&ModelParams::new(0.5, 1.9).unwrap()).unwrap();
    assert!((e.k - 0.1525f64.sqrt() / 0.5).abs() < 1e-14);
}

#[test]
fn symbol_examples() {
    let p = ModelParams::new(0.0, 0.0).unwrap();
    let m = symbol_phi0(0.0, &p).unwrap();
    assert_eq!(m[(0, 1)], Complex64::new(1.0, 0.0));
    assert_eq!(m[(1, 0)], Complex64::new(-1.0, 0.0));
    let p = ModelParams::new(0.5, 1.0).unwrap();
    assert!((symbol_phi(PI, &p).unwrap() + 1.0).norm() < 1e-15);
    // gamma = 0 and h = 2: the symbol vanishes at theta = 0
    let crit = ModelParams::new(0.0, 2.0).unwrap();
    assert!(matches!(symbol_phi0(0.0, &crit), Err(Error::SingularSymbol { .. })));
}

#[test]
fn negative_parameters_rejected() {
    assert!(ModelParams::new(-0.1, 1.0).is_err());
    assert!(ModelParams::new(0.5, -1.0).is_err());
    assert!(ModelParams::new(f64::NAN, 1.0).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn majorana_matrix_antisymmetric((g, h) in off_critical(), l in 1usize..12) {
        let p = ModelParams::new(g, h).unwrap();
        let b = build_correlation_matrix(&p, l, None).unwrap();
        let asym = (&b.entries + b.entries.transpose()).abs().max();
        prop_assert!(asym < 1e-12);
        let nus = nu_spectrum(&b).unwrap();
        prop_assert_eq!(nus.len(), l);
        prop_assert!(nus.nus.iter().all(|&v| (0.0..=1.0).contains(&v)));
        prop_assert!(nus.nus.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn symbol_unimodular((g, h) in off_critical(), t in 0.0f64..(2.0 * PI)) {
        let p = ModelParams::new(g, h).unwrap();
        prop_assert!((symbol_phi(t, &p).unwrap().norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn case_and_sigma_consistent((g, h) in off_critical()) {
        let p = ModelParams::new(g, h).unwrap();
        let case = classify_case(&p).unwrap();
        let expect = if h > 2.0 {
            CaseLabel::Case2
        } else if h * h < 4.0 * (1.0 - g * g) {
            CaseLabel::Case1b
        } else {
            CaseLabel::Case1a
        };
        prop_assert_eq!(case.label, expect);
        prop_assert_eq!(case.sigma, if h > 2.0 { 0 } else { 1 });
        let bp = branch_points(&p).unwrap();
        prop_assert!(bp.a.norm() < 1.0 && bp.b.norm() < 1.0);
        prop_assert!(bp.c.norm() > 1.0 && bp.d.norm() > 1.0);
        let e = modulus_k(&p).unwrap();
        prop_assert!((e.k * e.k + e.kprime * e.kprime - 1.0).abs() < 1e-12);
    }
}
