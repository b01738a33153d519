mod common;

use common::*;
use cpt_core::{
    build_c, build_model, closed_form_c, closed_form_spectrum, eigendecompose, eigenvalues, is_pt_symmetric,
    ComplexMatrix64, ComplexVector64, ModelSpec, Regime, TwoLevel,
};

#[test]
fn closed_form_matches_numeric_spectrum() {
    let mut r = rng(1);
    for k in 0..1000 {
        let (rr, s, t) = if k % 2 == 0 {
            random_unbroken_params(&mut r, 1e-3)
        } else {
            random_broken_params(&mut r, 1e-3)
        };
        let (h, _) = build_model(&ModelSpec::TwoByTwo(TwoLevel::new(rr, s, t))).unwrap();
        let closed = closed_form_spectrum(rr, s, t).unwrap();
        assert_eq!(closed.regime, if k % 2 == 0 { Regime::Unbroken } else { Regime::Broken });
        let numeric = eigenvalues(&h).unwrap();
        assert!(multiset_distance(&closed.eigenvalues, &numeric) <= 1e-9, "{rr} {s} {t}");
        assert!(multiset_distance(&closed.eigenvalues, &quadratic_eigenvalues(&h)) <= 1e-9);
    }
}

// C(φ) written out from tan/sec independently of the library.
fn reference_c(sin_phi: f64) -> ComplexMatrix64 {
    let cos = (1.0 - sin_phi * sin_phi).sqrt();
    ComplexMatrix64::from_row_slice(
        2,
        2,
        &[c(0.0, sin_phi / cos), c(1.0 / cos, 0.0), c(1.0 / cos, 0.0), c(0.0, -sin_phi / cos)],
    )
}

#[test]
fn built_c_matches_closed_form() {
    let mut r = rng(2);
    for _ in 0..200 {
        let (rr, s, t) = random_unbroken_params(&mut r, 1e-2);
        let (h, frame) = build_model(&ModelSpec::TwoByTwo(TwoLevel::new(rr, s, t))).unwrap();
        let built = build_c(&h, &frame, 1e-10).unwrap();
        let sin_phi = rr / s * t.sin();
        let expected = closed_form_c(sin_phi.asin(), 1e-10).unwrap();
        assert!((built.c() - &expected).camax() <= 1e-8);
        assert!((expected - reference_c(sin_phi)).camax() <= 1e-12);
    }
}

#[test]
fn eigenvectors_have_closed_form_shape() {
    let mut r = rng(3);
    for _ in 0..200 {
        let (rr, s, t) = random_unbroken_params(&mut r, 1e-2);
        let (h, _) = build_model(&ModelSpec::TwoByTwo(TwoLevel::new(rr, s, t))).unwrap();
        let phi = (rr / s * t.sin()).asin();
        let half = cpt_core::cis(phi / 2.0);
        let plus = ComplexVector64::from_vec(vec![half, half.conj()]).unscale(2f64.sqrt());
        let minus = ComplexVector64::from_vec(vec![half.conj(), -half]).unscale(2f64.sqrt());
        let closed = closed_form_spectrum(rr, s, t).unwrap();
        let eig = eigendecompose(&h, 1e-10).unwrap();
        for (k, value) in eig.values().iter().enumerate() {
            let v = eig.vector(k).normalize();
            let target = if (value - closed.eigenvalues[0]).norm() < (value - closed.eigenvalues[1]).norm() {
                &plus
            } else {
                &minus
            };
            let projection = target * target.dotc(&v);
            assert!((&v - projection).norm() <= 1e-8);
        }
    }
}

#[test]
fn every_model_is_pt_symmetric_in_its_frame() {
    let mut r = rng(4);
    let mut level = || {
        let (a, b, t) = random_unbroken_params(&mut r, 0.0);
        TwoLevel::new(a, b, t)
    };
    let specs = vec![
        ModelSpec::TwoByTwo(level()),
        ModelSpec::ThreeByThree { block: level(), a: 0.7 },
        ModelSpec::FourByFour { upper: level(), lower: level() },
        ModelSpec::DirectSumChain((0..10).map(|_| level()).collect()),
        ModelSpec::TensorPair(level(), level()),
    ];
    for spec in specs {
        let (h, frame) = build_model(&spec).unwrap();
        assert!(is_pt_symmetric(&h, &frame, 1e-12).unwrap().0, "{spec:?}");
    }
}

#[test]
fn single_precision_models() {
    let (h, frame) = build_model(&ModelSpec::TwoByTwo(TwoLevel::new(1.0f32, 2.0, std::f32::consts::FRAC_PI_6))).unwrap();
    let result = build_c(&h, &frame, 1e-4).unwrap();
    let expected = closed_form_c(0.25f32.asin(), 1e-4).unwrap();
    assert!((result.c() - expected).camax() <= 1e-4);
}
