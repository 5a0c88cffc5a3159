//! Deliberately broken ingredients must be caught by the checks.

use armdgf_core::greens::SphereModel;
use armdgf_core::scattering::CHANNEL_N;
use armdgf_core::scenario::SphereScenario;
use armdgf_core::verify::{interface_continuity, vswf_structure};
use armdgf_core::vswf::{vector_m, vector_n, VectorFieldValue};

#[test]
fn negated_reflection_channel_breaks_interface_continuity() {
    let s = SphereScenario::reference();
    let mut model = SphereModel::new(&s, 600).unwrap();
    for set in model.coefficients_mut().sets_mut() {
        set.r12.entries[CHANNEL_N][CHANNEL_N] = -set.r12.entries[CHANNEL_N][CHANNEL_N];
        set.r21.entries[CHANNEL_N][CHANNEL_N] = -set.r21.entries[CHANNEL_N][CHANNEL_N];
    }
    let checks = interface_continuity(&s, Some(&model), 8);
    let worst = checks.iter().map(|c| c.measured).fold(0.0, f64::max);
    assert!(worst > 1e-2, "mutant residual only {worst:.3e}");
    assert!(checks.iter().any(|c| !c.passed));
}

#[test]
fn unmutated_model_passes_interface_continuity() {
    let s = SphereScenario::reference();
    let model = SphereModel::new(&s, 600).unwrap();
    assert!(interface_continuity(&s, Some(&model), 8).iter().all(|c| c.passed));
}

/// Flipping the sign of the Legendre theta-derivative negates the
/// `e_phi` part of M and the `e_theta` part of N.
#[test]
fn flipped_legendre_derivative_breaks_duality() {
    let m_bad = |mode, kind, k, x: &_| {
        vector_m(mode, kind, k, x).map(|v| VectorFieldValue { e_phi: -v.e_phi, ..v })
    };
    let n_bad = |mode, kind, k, x: &_| {
        vector_n(mode, kind, k, x).map(|v| VectorFieldValue { e_theta: -v.e_theta, ..v })
    };
    let checks = vswf_structure(20, &m_bad, &n_bad);
    assert!(checks.iter().any(|c| !c.passed && c.measured > 1e-2), "{checks:?}");
    assert!(vswf_structure(20, &vector_m, &vector_n).iter().all(|c| c.passed));
}
