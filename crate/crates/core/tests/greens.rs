use armdgf_core::coords::{cnorm, SphericalPoint};
use armdgf_core::greens::{direct_dgf, scattered_dgf, total_dgf, SphereModel, TruncationSpec};
use armdgf_core::oracle::{cartesian_view, curl_curl, FDStencil};
use armdgf_core::scenario::{PlacementCase, Region, SphereScenario};
use armdgf_core::Error;
use num_complex::Complex64;

fn pt(r: f64, t: f64, p: f64) -> SphericalPoint {
    SphericalPoint::new(r, t, p).unwrap()
}

/// `curl curl (G p) - k^2 G p = 0` away from the source, for the scattered
/// part in every receiver region.
#[test]
fn scattered_dyadic_satisfies_vector_helmholtz() {
    let s = SphereScenario::reference();
    let trunc = TruncationSpec::default();
    let model = SphereModel::for_truncation(&s, &trunc).unwrap();
    let p = [Complex64::new(0.2, 0.0), Complex64::new(0.0, 1.0), Complex64::new(1.0, -0.3)];
    let cases = [
        (pt(0.05, 1.0, 0.2), pt(0.08, 2.0, 1.0), Region::Inside, Region::Inside),
        (pt(0.05, 1.0, 0.2), pt(0.25, 0.7, 4.0), Region::Inside, Region::Outside),
        (pt(0.2, 1.4, 0.0), pt(0.1, 1.9, 2.0), Region::Outside, Region::Inside),
        (pt(0.2, 1.4, 0.0), pt(0.3, 0.9, 2.5), Region::Outside, Region::Outside),
    ];
    for (x0, x, src, rcv) in cases {
        let k = s.wavenumber(rcv);
        let f = cartesian_view(|y: &SphericalPoint| {
            Ok(model.scattered_series(src, rcv, y, &x0, &trunc)?.dyadic.apply(&p))
        });
        let c = x.to_cartesian();
        let stencil = FDStencil::new(2e-3 / k.norm(), 4).unwrap();
        let cc = curl_curl(&f, c, &stencil);
        let e = f(c);
        let res = [0, 1, 2].map(|i| cc[i] - k * k * e[i]);
        assert!(cnorm(&res) < 1e-5 * (k * k).norm() * cnorm(&e), "{src:?}->{rcv:?}");
    }
}

#[test]
fn far_field_is_transverse_and_decays_as_one_over_r() {
    let s = SphereScenario::reference();
    let trunc = TruncationSpec::with_max_order(1000);
    let x0 = pt(0.16, std::f64::consts::FRAC_PI_2, 0.0);
    let p = [Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)];
    let field = |r: f64| total_dgf(&s, &pt(r, 1.2, 0.8), &x0, &trunc).unwrap().apply(&p);
    // Far enough that the k r0^2 / 2r phase correction is ~0.01 rad.
    let (a, b) = (field(20.0), field(40.0));
    let ratio = (cnorm(&b) * 40.0) / (cnorm(&a) * 20.0);
    assert!((ratio - 1.0).abs() < 0.02, "r |E| ratio {ratio}");
    assert!(b[0].norm() < 0.02 * cnorm(&b), "radial share {}", b[0].norm() / cnorm(&b));
}

#[test]
fn total_is_direct_plus_scattered_in_same_region() {
    let s = SphereScenario::reference();
    let t = TruncationSpec::default();
    let (x, x0) = (pt(0.25, 0.8, 1.0), pt(0.18, 1.6, 0.3));
    let total = total_dgf(&s, &x, &x0, &t).unwrap();
    let direct = direct_dgf(s.k_exterior(), &x, &x0, &t).unwrap();
    let scat = scattered_dgf(&s, PlacementCase::Case22, &x, &x0, &t).unwrap();
    assert!(total.rel_diff(&direct.add(&scat)) < 1e-12);
}

#[test]
fn cross_region_total_is_transmitted_only() {
    let s = SphereScenario::reference();
    let t = TruncationSpec::default();
    let (x, x0) = (pt(0.25, 0.8, 1.0), pt(0.1, 1.6, 0.3));
    let total = total_dgf(&s, &x, &x0, &t).unwrap();
    let scat = scattered_dgf(&s, PlacementCase::Case21, &x, &x0, &t).unwrap();
    assert_eq!(total, scat);
    assert!(scattered_dgf(&s, PlacementCase::Case11, &x, &x0, &t).is_err());
}

#[test]
fn error_paths() {
    let s = SphereScenario::reference();
    let t = TruncationSpec::default();
    let x0 = pt(0.16, 1.0, 0.0);
    assert!(matches!(total_dgf(&s, &x0, &x0, &t), Err(Error::Coincident)));
    assert!(matches!(total_dgf(&s, &pt(0.15, 1.0, 0.0), &x0, &t), Err(Error::Interface { .. })));
    // Slowly converging direct series with too few orders.
    let err = total_dgf(&s, &pt(0.17, 1.0, 0.0), &x0, &TruncationSpec::with_max_order(40)).unwrap_err();
    assert!(matches!(err, Error::NonConvergence { .. } | Error::OrderLimit { .. }), "{err}");
    let bad = TruncationSpec { rel_tol: 0.0, ..TruncationSpec::default() };
    assert!(total_dgf(&s, &pt(0.3, 1.0, 0.0), &x0, &bad).is_err());
}

#[test]
fn fixed_truncation_converges_to_adaptive() {
    let s = SphereScenario::reference();
    let (x, x0) = (pt(0.2, 0.5, 2.0), pt(0.16, 1.57, 0.0));
    let a = total_dgf(&s, &x, &x0, &TruncationSpec::with_max_order(300)).unwrap();
    let f = total_dgf(&s, &x, &x0, &TruncationSpec::fixed(300)).unwrap();
    assert!(a.rel_diff(&f) < 1e-7);
}
