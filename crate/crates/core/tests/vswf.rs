use std::f64::consts::PI;

use armdgf_core::coords::{cnorm, SphericalPoint};
use armdgf_core::oracle::{cartesian_view, curl, gradient, laplacian, FDStencil};
use armdgf_core::specfun::RadialKind;
use armdgf_core::vswf::{scalar_psi, vector_l, vector_m, vector_n, ModeIndex, Parity};
use armdgf_core::Error;
use num_complex::Complex64;
use proptest::prelude::*;

fn point() -> SphericalPoint {
    SphericalPoint::new(0.17, 1.1, 2.3).unwrap()
}

fn sub(a: [Complex64; 3], b: [Complex64; 3]) -> [Complex64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

#[test]
fn scalar_solves_helmholtz() {
    let k = Complex64::new(30.0, 2.0);
    let x = point();
    let s = FDStencil::new(1e-3 * x.r, 4).unwrap();
    for (n, m) in [(0, 0), (1, 1), (4, 2), (7, 5)] {
        let mode = ModeIndex::new(n, m, Parity::Even).unwrap();
        let zero = Complex64::new(0.0, 0.0);
        let f = move |c: [f64; 3]| {
            let v = scalar_psi(mode, RadialKind::Hankel1, k, &SphericalPoint::from_cartesian(c));
            [v.unwrap(), zero, zero]
        };
        let psi = f(x.to_cartesian())[0];
        let lap = laplacian(&f, x.to_cartesian(), &s)[0];
        assert!((lap + k * k * psi).norm() < 1e-6 * (k * k * psi).norm(), "({n},{m})");
    }
}

#[test]
fn l_is_gradient_of_psi_and_curl_free() {
    let k = Complex64::new(25.0, 0.0);
    let x = point();
    let s = FDStencil::new(1e-4 * x.r, 4).unwrap();
    let mode = ModeIndex::new(5, 3, Parity::Odd).unwrap();
    let psi = |c: [f64; 3]| {
        scalar_psi(mode, RadialKind::BesselJ, k, &SphericalPoint::from_cartesian(c)).unwrap()
    };
    let l = cartesian_view(move |p: &SphericalPoint| Ok(vector_l(mode, RadialKind::BesselJ, k, p)?.to_array()));
    let c = x.to_cartesian();
    let grad = gradient(&psi, c, &s);
    let lv = l(c);
    assert!(cnorm(&sub(grad, lv)) < 1e-8 * cnorm(&lv));
    assert!(cnorm(&curl(&l, c, &s)) < 1e-6 * k.norm() * cnorm(&lv));
}

#[test]
fn m_is_tangential() {
    let mode = ModeIndex::new(6, 4, Parity::Even).unwrap();
    let m = vector_m(mode, RadialKind::Hankel1, Complex64::new(12.0, 0.0), &point()).unwrap();
    assert_eq!(m.e_r, Complex64::new(0.0, 0.0));
    assert!(m.norm() > 0.0);
}

#[test]
fn degenerate_inputs_are_rejected() {
    let mode0 = ModeIndex::new(0, 0, Parity::Even).unwrap();
    let k = Complex64::new(10.0, 0.0);
    assert!(matches!(vector_m(mode0, RadialKind::BesselJ, k, &point()), Err(Error::Domain(_))));
    assert!(matches!(vector_n(mode0, RadialKind::BesselJ, k, &point()), Err(Error::Domain(_))));
    assert!(matches!(ModeIndex::new(2, 3, Parity::Odd), Err(Error::Index { .. })));
    let origin = SphericalPoint::new(0.0, 0.0, 0.0).unwrap();
    let mode = ModeIndex::new(1, 0, Parity::Even).unwrap();
    assert!(vector_n(mode, RadialKind::BesselJ, k, &origin).is_err());
}

#[test]
fn odd_m0_mode_vanishes() {
    let mode = ModeIndex::new(3, 0, Parity::Odd).unwrap();
    let v = vector_m(mode, RadialKind::BesselJ, Complex64::new(9.0, 0.0), &point()).unwrap();
    assert_eq!(v.norm(), 0.0);
}

#[test]
fn pole_values_are_finite() {
    let k = Complex64::new(20.0, 1.0);
    for theta in [0.0, PI] {
        let x = SphericalPoint::new(0.1, theta, 0.0).unwrap();
        for (n, m) in [(1, 0), (1, 1), (3, 1), (3, 2)] {
            let mode = ModeIndex::new(n, m, Parity::Even).unwrap();
            let v = vector_n(mode, RadialKind::Hankel1, k, &x).unwrap();
            assert!(v.to_array().iter().all(|c| c.is_finite()), "({n},{m}) at {theta}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn duality_at_random_points(
        n in 1usize..=6,
        m_frac in 0.0f64..1.0,
        r in 0.05f64..0.3,
        theta in 0.2f64..2.9,
        phi in 0.0f64..6.2,
        kr in 5.0f64..40.0,
        ki in 0.0f64..4.0,
    ) {
        let m = ((n + 1) as f64 * m_frac) as usize;
        let mode = ModeIndex::new(n, m.min(n), Parity::Even).unwrap();
        let k = Complex64::new(kr, ki);
        let x = SphericalPoint::new(r, theta, phi).unwrap();
        let s = FDStencil::new(1e-4 * r, 4).unwrap();
        let mf = cartesian_view(move |p: &SphericalPoint| Ok(vector_m(mode, RadialKind::Hankel1, k, p)?.to_array()));
        let nf = cartesian_view(move |p: &SphericalPoint| Ok(vector_n(mode, RadialKind::Hankel1, k, p)?.to_array()));
        let c = x.to_cartesian();
        let scale = cnorm(&mf(c)).max(cnorm(&nf(c)));
        let curl_m = curl(&mf, c, &s).map(|v| v / k);
        prop_assert!(cnorm(&sub(curl_m, nf(c))) < 1e-6 * scale);
    }
}
