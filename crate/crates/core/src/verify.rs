//! Self-verification checks comparing production results with the oracles.
//!
//! Each check returns a [`CheckOutcome`] carrying the measured residual and
//! its tolerance. Sample counts are parameters so the same checks serve the
//! quick CLI report, the full report and the acceptance tests.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::coords::{cnorm, spherical_to_cartesian, CVec3, SphericalPoint};
use crate::error::Result;
use crate::field::{field_with, FieldSelector};
use crate::greens::{Dyadic, SphereModel, TruncationSpec};
use crate::oracle::{
    cartesian_view, curl, divergence, free_space_dyadic, free_space_stencil, hertzian_dipole_field,
    interface_residual, rayleigh_hankel1, rayleigh_hankel1_derivative, rodrigues_legendre,
    series_bessel, series_bessel_derivative, FDStencil,
};
use crate::scenario::{DipoleSource, Region, SphereScenario};
use crate::specfun::{assoc_legendre, spherical_bessel, wronskian_check, RadialKind};
use crate::sweep::{receiver_position, OffsetAxis, SweepConfig};
use crate::vswf::{vector_m, vector_n, ModeIndex, Parity, VectorFieldValue};

const SEED: u64 = 0x5EED_2024;
const SERIES_TERMS: usize = 600;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub measured: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl CheckOutcome {
    pub fn new(name: impl Into<String>, measured: f64, tolerance: f64) -> Self {
        CheckOutcome {
            name: name.into(),
            measured,
            tolerance,
            passed: measured.is_finite() && measured <= tolerance,
        }
    }

    fn failed(name: impl Into<String>, error: &crate::Error) -> Self {
        CheckOutcome {
            name: format!("{} ({error})", name.into()),
            measured: f64::INFINITY,
            tolerance: 0.0,
            passed: false,
        }
    }
}

impl std::fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} {:<58} measured {:.3e}  tolerance {:.1e}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.measured,
            self.tolerance
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyLevel {
    Quick,
    Full,
}

/// Sample counts of one verification run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SampleSizes {
    pub special_functions: usize,
    pub vswf_points: usize,
    pub free_space_pairs: usize,
    pub null_pairs: usize,
    pub reciprocity_pairs_per_case: usize,
    pub interface_samples: usize,
    pub convergence_phi_step_deg: usize,
}

impl SampleSizes {
    pub fn for_level(level: VerifyLevel) -> Self {
        match level {
            VerifyLevel::Quick => SampleSizes {
                special_functions: 50,
                vswf_points: 25,
                free_space_pairs: 12,
                null_pairs: 6,
                reciprocity_pairs_per_case: 2,
                interface_samples: 8,
                convergence_phi_step_deg: 90,
            },
            VerifyLevel::Full => SampleSizes {
                special_functions: 200,
                vswf_points: 100,
                free_space_pairs: 50,
                null_pairs: 20,
                reciprocity_pairs_per_case: 5,
                interface_samples: 16,
                convergence_phi_step_deg: 30,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

pub fn run(level: VerifyLevel) -> VerifyReport {
    let n = SampleSizes::for_level(level);
    let mut checks = Vec::new();
    checks.extend(special_functions(n.special_functions));
    checks.push(legendre_vs_rodrigues(20));
    checks.extend(vswf_structure(n.vswf_points, &vector_m, &vector_n));
    checks.push(free_space_equivalence(n.free_space_pairs));
    checks.push(dipole_field(n.free_space_pairs.min(20)));
    checks.push(matched_null(n.null_pairs));
    checks.push(reciprocity(n.reciprocity_pairs_per_case));
    checks.extend(interface_continuity(&SphereScenario::reference(), None, n.interface_samples));
    checks.push(convergence(n.convergence_phi_step_deg));
    VerifyReport { checks }
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    let s = b.norm();
    if s == 0.0 {
        a.norm()
    } else {
        (a - b).norm() / s
    }
}

/// Log-uniform modulus in `[0.1, 50]`, argument in the closed first
/// quadrant where `k r` lives for lossy media. Below the real axis the
/// products in the Wronskian cancel from `exp(2 |Im z|)` and the identity
/// cannot be checked in double precision.
fn random_argument(rng: &mut ChaCha8Rng) -> Complex64 {
    let modulus = (rng.random_range(0.1f64.ln()..=50f64.ln())).exp();
    Complex64::from_polar(modulus, rng.random_range(0.0..=FRAC_PI_2))
}

/// `j_n`, `h_n^(1)` and their derivatives against the fixed-point series and
/// Rayleigh sums for `n <= 30`, `0.1 <= |z| <= 50`, plus the Wronskian.
pub fn special_functions(samples: usize) -> Vec<CheckOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut values = 0.0f64;
    let mut derivatives = 0.0f64;
    let mut wronskian = 0.0f64;
    let mut error = None;
    for _ in 0..samples {
        let n = rng.random_range(0..=30usize);
        let z = random_argument(&mut rng);
        let run = || -> Result<(f64, f64, f64)> {
            let j = spherical_bessel(RadialKind::BesselJ, n, z)?;
            let h = spherical_bessel(RadialKind::Hankel1, n, z)?;
            let jo = series_bessel(n, z, SERIES_TERMS)?;
            let ho = rayleigh_hankel1(n, z)?;
            let jd = series_bessel_derivative(n, z, SERIES_TERMS)?;
            let hd = rayleigh_hankel1_derivative(n, z)?;
            let w = wronskian_check(n, z)?;
            let expect = Complex64::new(0.0, 1.0) / (z * z);
            Ok((
                rel(j.value, jo).max(rel(h.value, ho)),
                rel(j.derivative, jd).max(rel(h.derivative, hd)),
                rel(w, expect),
            ))
        };
        match run() {
            Ok((v, d, w)) => {
                values = values.max(v);
                derivatives = derivatives.max(d);
                wronskian = wronskian.max(w);
            }
            Err(e) => error = Some(e),
        }
    }
    if let Some(e) = error {
        return vec![CheckOutcome::failed("spherical Bessel/Hankel vs oracle", &e)];
    }
    vec![
        CheckOutcome::new("spherical Bessel/Hankel values vs oracle", values, 1e-10),
        CheckOutcome::new("spherical Bessel/Hankel derivatives vs oracle", derivatives, 1e-9),
        CheckOutcome::new("Wronskian j h' - j' h = i/z^2", wronskian, 1e-9),
    ]
}

/// Associated Legendre values and theta-derivatives for `n <= n_max`
/// against the Rodrigues reference, relative to the row scale.
pub fn legendre_vs_rodrigues(n_max: usize) -> CheckOutcome {
    let name = "associated Legendre vs Rodrigues oracle";
    let mut worst = 0.0f64;
    for &theta in &[0.0, 0.05, 0.7, 1.3, FRAC_PI_2, 2.2, 3.0, PI] {
        for n in 0..=n_max {
            for m in 0..=n {
                let (p, o) = match (assoc_legendre(n, m, theta), rodrigues_legendre(n, m, theta)) {
                    (Ok(p), Ok(o)) => (p, o),
                    (Err(e), _) | (_, Err(e)) => return CheckOutcome::failed(name, &e),
                };
                // Values that vanish by symmetry are compared against the
                // size of the whole (n, m) function instead.
                let scale = (((n - m + 1)..=(n + m)).map(|j| j as f64).product::<f64>()).sqrt();
                let floor = 1e-6 * scale;
                worst = worst.max((p.value - o.0).abs() / o.0.abs().max(floor));
                worst = worst.max((p.theta_derivative - o.1).abs() / o.1.abs().max(floor * n as f64));
            }
        }
    }
    CheckOutcome::new(name, worst, 1e-10)
}

type ModeFn = dyn Fn(ModeIndex, RadialKind, Complex64, &SphericalPoint) -> Result<VectorFieldValue>;

/// Duality `M = curl N / k`, `N = curl M / k` and zero divergence of both,
/// by finite differences at random points. The mode evaluators are
/// parameters so deliberately broken versions can be checked too.
pub fn vswf_structure(points: usize, m_fn: &ModeFn, n_fn: &ModeFn) -> Vec<CheckOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    let mut duality = 0.0f64;
    let mut div = 0.0f64;
    for _ in 0..points {
        let n = rng.random_range(1..=8usize);
        let m = rng.random_range(0..=n);
        let parity = if rng.random_bool(0.5) { Parity::Even } else { Parity::Odd };
        let kind = if rng.random_bool(0.5) { RadialKind::BesselJ } else { RadialKind::Hankel1 };
        let k = if rng.random_bool(0.5) {
            Complex64::new(rng.random_range(5.0..40.0), 0.0)
        } else {
            Complex64::new(rng.random_range(5.0..40.0), rng.random_range(0.0..5.0))
        };
        let x = SphericalPoint::new(
            rng.random_range(0.05..0.3),
            rng.random_range(0.2..PI - 0.2),
            rng.random_range(0.0..TAU),
        )
        .expect("valid sample point");
        let mode = ModeIndex { n, m, parity };
        let stencil = FDStencil::new(1e-4 * x.r, 4).expect("valid stencil");
        let mf = cartesian_view(move |p: &SphericalPoint| Ok(m_fn(mode, kind, k, p)?.to_array()));
        let nf = cartesian_view(move |p: &SphericalPoint| Ok(n_fn(mode, kind, k, p)?.to_array()));
        let c = x.to_cartesian();
        let (mv, nv) = (mf(c), nf(c));
        let scale = cnorm(&mv).max(cnorm(&nv));
        let curl_n = curl(&nf, c, &stencil).map(|v| v / k);
        let curl_m = curl(&mf, c, &stencil).map(|v| v / k);
        let diff = |a: &CVec3, b: &CVec3| cnorm(&[a[0] - b[0], a[1] - b[1], a[2] - b[2]]) / scale;
        duality = duality.max(diff(&curl_n, &mv)).max(diff(&curl_m, &nv));
        let dm = divergence(&mf, c, &stencil).norm();
        let dn = divergence(&nf, c, &stencil).norm();
        div = div.max(dm.max(dn) / (k.norm() * scale));
    }
    let nan_to_inf = |v: f64| if v.is_nan() { f64::INFINITY } else { v };
    vec![
        CheckOutcome::new("VSWF duality M = curl N / k, N = curl M / k", nan_to_inf(duality), 1e-4),
        CheckOutcome::new("VSWF divergence of M and N", nan_to_inf(div), 1e-4),
    ]
}

fn random_direction(rng: &mut ChaCha8Rng) -> [f64; 3] {
    let z: f64 = rng.random_range(-1.0..1.0);
    let phi: f64 = rng.random_range(0.0..TAU);
    let s = (1.0 - z * z).sqrt();
    [s * phi.cos(), s * phi.sin(), z]
}

/// Random pair with `0.5 <= k R <= 30`, `r< / r> <= 0.75`, both points at
/// least `0.1 d` from the interface.
fn free_space_pair(rng: &mut ChaCha8Rng, k: f64, d: f64) -> (SphericalPoint, SphericalPoint) {
    loop {
        let r0 = rng.random_range(0.03..0.6);
        let dir0 = random_direction(rng);
        let x0c = dir0.map(|c| c * r0);
        let big_r = rng.random_range(0.5..30.0) / k;
        let dir = random_direction(rng);
        let xc = [0, 1, 2].map(|i| x0c[i] + big_r * dir[i]);
        let (x, x0) = (SphericalPoint::from_cartesian(xc), SphericalPoint::from_cartesian(x0c));
        let ratio = x.r.min(x0.r) / x.r.max(x0.r);
        let clear = (x.r - d).abs() > 0.1 * d && (x0.r - d).abs() > 0.1 * d;
        if ratio <= 0.75 && clear && x.r > 1e-3 {
            return (x, x0);
        }
    }
}

/// Matched-media total dyadic against the closed form with a
/// finite-difference Hessian.
pub fn free_space_equivalence(pairs: usize) -> CheckOutcome {
    let name = "free-space equivalence (matched media vs closed form)";
    let s = SphereScenario::reference().matched();
    let trunc = TruncationSpec::with_max_order(200);
    let model = match SphereModel::for_truncation(&s, &trunc) {
        Ok(m) => m,
        Err(e) => return CheckOutcome::failed(name, &e),
    };
    let k = s.k_exterior();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 2);
    let mut worst = 0.0f64;
    for _ in 0..pairs {
        let (x, x0) = free_space_pair(&mut rng, k.norm(), s.radius_d);
        let series = model.total(&x, &x0, &trunc);
        let exact = free_space_dyadic(k, &x, &x0, &free_space_stencil(k, x.distance(&x0)));
        match (series, exact) {
            (Ok(g), Ok(e)) => worst = worst.max(g.dyadic.rel_diff(&e)),
            (Err(e), _) | (_, Err(e)) => return CheckOutcome::failed(name, &e),
        }
    }
    CheckOutcome::new(name, worst, 1e-6)
}

/// Matched-media field of a z-directed dipole against the analytic
/// Hertzian dipole field, `1 <= k R <= 30`.
pub fn dipole_field(pairs: usize) -> CheckOutcome {
    let name = "dipole field (matched media vs Hertzian closed form)";
    let s = SphereScenario::reference().matched();
    let trunc = TruncationSpec::with_max_order(200);
    let model = match SphereModel::for_truncation(&s, &trunc) {
        Ok(m) => m,
        Err(e) => return CheckOutcome::failed(name, &e),
    };
    let k = s.k_exterior();
    let mu = s.exterior.permeability;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 3);
    let mut worst = 0.0f64;
    let mut done = 0;
    while done < pairs {
        let (x, x0) = free_space_pair(&mut rng, k.norm(), s.radius_d);
        if k.norm() * x.distance(&x0) < 1.0 {
            continue;
        }
        done += 1;
        // Unit z moment expressed in the spherical basis at the source.
        let b0 = x0.basis();
        let moment = [b0[0][2], b0[1][2], b0[2][2]].map(|c| Complex64::new(c, 0.0));
        let src = DipoleSource::new(x0, moment);
        let exact = hertzian_dipole_field(
            k,
            s.omega(),
            mu,
            x0.to_cartesian(),
            [0.0, 0.0, 1.0].map(|c| Complex64::new(c, 0.0)),
            x.to_cartesian(),
        );
        match (field_with(&model, FieldSelector::Total, &src, &x, &trunc), exact) {
            (Ok(f), Ok(e)) => {
                let got = spherical_to_cartesian(&x, &f.e);
                let err = cnorm(&[got[0] - e[0], got[1] - e[1], got[2] - e[2]]) / cnorm(&e);
                worst = worst.max(err);
            }
            (Err(e), _) | (_, Err(e)) => return CheckOutcome::failed(name, &e),
        }
    }
    CheckOutcome::new(name, worst, 1e-6)
}

fn entrywise_ratio(num: &Dyadic, den: &Dyadic) -> f64 {
    let mut worst = 0.0f64;
    for (a, b) in num.entries.iter().flatten().zip(den.entries.iter().flatten()) {
        let r = if a.norm() == 0.0 {
            0.0
        } else if b.norm() == 0.0 {
            f64::INFINITY
        } else {
            a.norm() / b.norm()
        };
        worst = worst.max(r);
    }
    worst
}

/// Scattered dyadic of matched media relative to the direct dyadic,
/// entrywise, on same-region pairs inside and outside the sphere.
pub fn matched_null(pairs: usize) -> CheckOutcome {
    let name = "matched-media null scattering |G_s| / |G_d|";
    let s = SphereScenario::reference().matched();
    let trunc = TruncationSpec::default();
    let model = match SphereModel::for_truncation(&s, &trunc) {
        Ok(m) => m,
        Err(e) => return CheckOutcome::failed(name, &e),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 4);
    let mut worst = 0.0f64;
    for i in 0..pairs {
        let range = if i % 2 == 0 { 0.01..0.12 } else { 0.2..0.4 };
        let (x, x0) = loop {
            let a = random_point(&mut rng, range.clone());
            let b = random_point(&mut rng, range.clone());
            if a.r.min(b.r) / a.r.max(b.r) <= 0.75 {
                break (a, b);
            }
        };
        match (model.scattered(&x, &x0, &trunc), model.direct(&x, &x0, &trunc)) {
            (Ok(gs), Ok(gd)) => worst = worst.max(entrywise_ratio(&gs.dyadic, &gd.dyadic)),
            (Err(e), _) | (_, Err(e)) => return CheckOutcome::failed(name, &e),
        }
    }
    CheckOutcome::new(name, worst, 1e-10)
}

fn random_point(rng: &mut ChaCha8Rng, radius: std::ops::Range<f64>) -> SphericalPoint {
    let r = rng.random_range(radius);
    let dir = random_direction(rng);
    SphericalPoint::from_cartesian(dir.map(|c| c * r))
}

/// `G(x, x0) = G(x0, x)^T` at the reference scenario for every placement
/// case. Same-region pairs keep `r< / r> <= 0.75` so the direct series
/// converges within the default truncation.
pub fn reciprocity(pairs_per_case: usize) -> CheckOutcome {
    let name = "reciprocity G(x,x0) = G(x0,x)^T, all four cases";
    let s = SphereScenario::reference();
    let trunc = TruncationSpec::default();
    let model = match SphereModel::for_truncation(&s, &trunc) {
        Ok(m) => m,
        Err(e) => return CheckOutcome::failed(name, &e),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 5);
    let mut worst = 0.0f64;
    let inside = 0.03..0.10;
    let outside = 0.2..0.35;
    let wide_outside = 0.2..0.4;
    for _ in 0..pairs_per_case {
        let mut pairs = Vec::new();
        pairs.push(loop {
            let (a, b) = (random_point(&mut rng, 0.01..0.1), random_point(&mut rng, 0.01..0.1));
            if a.r.min(b.r) / a.r.max(b.r) <= 0.75 {
                break (a, b);
            }
        });
        pairs.push((random_point(&mut rng, outside.clone()), random_point(&mut rng, inside.clone())));
        pairs.push((random_point(&mut rng, inside.clone()), random_point(&mut rng, outside.clone())));
        pairs.push(loop {
            let (a, b) = (
                random_point(&mut rng, wide_outside.clone()),
                random_point(&mut rng, wide_outside.clone()),
            );
            if a.r.min(b.r) / a.r.max(b.r) <= 0.75 {
                break (a, b);
            }
        });
        for (x, x0) in pairs {
            match (model.total(&x, &x0, &trunc), model.total(&x0, &x, &trunc)) {
                (Ok(a), Ok(b)) => worst = worst.max(a.dyadic.rel_diff(&b.dyadic.transpose())),
                (Err(e), _) | (_, Err(e)) => return CheckOutcome::failed(name, &e),
            }
        }
    }
    CheckOutcome::new(name, worst, 1e-6)
}

/// Generic dipole used for interface checks: all three components present.
fn interface_moment() -> CVec3 {
    [
        Complex64::new(0.3, 0.1),
        Complex64::new(0.0, -0.5),
        Complex64::new(1.0, 0.0),
    ]
}

/// Source positions for the interface checks: one inside (cases 11 and 21
/// share it) and the reference transmitter outside (cases 12 and 22).
pub fn interface_sources() -> [(Region, SphericalPoint); 2] {
    [
        (
            Region::Inside,
            SphericalPoint {
                r: 0.10,
                theta: 1.2,
                phi: 0.3,
            },
        ),
        (Region::Outside, DipoleSource::reference().position),
    ]
}

/// Tangential continuity of `E` and of `H` (finite-difference curl) across
/// `r = d`. The model may carry perturbed coefficients.
pub fn interface_continuity(
    scenario: &SphereScenario,
    model: Option<&SphereModel>,
    samples: usize,
) -> Vec<CheckOutcome> {
    // Sources near the interface need many orders for the direct series.
    let trunc = TruncationSpec {
        max_order: 600,
        max_azimuthal: 600,
        rel_tol: 1e-12,
        fixed: false,
    };
    let owned;
    let model = match model {
        Some(m) => m,
        None => match SphereModel::for_truncation(scenario, &trunc) {
            Ok(m) => {
                owned = m;
                &owned
            }
            Err(e) => return vec![CheckOutcome::failed("interface continuity", &e)],
        },
    };
    let k_max = scenario.k_body().norm().max(scenario.k_exterior().norm());
    let stencil = FDStencil {
        step: 2.0 / k_max * 1e-2,
        order: 4,
    };
    let mut out = Vec::new();
    for (region, x0) in interface_sources() {
        let label = match region {
            Region::Inside => "source inside, cases 11/21",
            Region::Outside => "source outside, cases 12/22",
        };
        let p = interface_moment();
        let field = |receiver: Region| {
            move |x: &SphericalPoint| -> Result<CVec3> {
                let g = model.region_dyadic(region, receiver, x, &x0, &trunc)?;
                Ok(g.dyadic.apply(&p))
            }
        };
        let (fi, fo) = (field(Region::Inside), field(Region::Outside));
        match interface_residual(scenario, &fi, &fo, samples, &stencil) {
            Ok(r) => {
                out.push(CheckOutcome::new(format!("interface tangential E ({label})"), r.e, 1e-6));
                out.push(CheckOutcome::new(format!("interface tangential H ({label})"), r.h, 1e-4));
            }
            Err(e) => out.push(CheckOutcome::failed(format!("interface continuity ({label})"), &e)),
        }
    }
    out
}

/// Scattered field at the reference sweep geometry with `Q` and `2Q`
/// orders, and the adaptively truncated values against `2Q`.
pub fn convergence(phi_step_deg: usize) -> CheckOutcome {
    convergence_at(120, phi_step_deg)
}

pub fn convergence_at(q: usize, phi_step_deg: usize) -> CheckOutcome {
    let name = format!("convergence: Q = {q} vs 2Q = {}", 2 * q);
    let s = SphereScenario::reference();
    let src = DipoleSource::reference();
    let coarse = TruncationSpec::fixed(q);
    let fine = TruncationSpec::fixed(2 * q);
    let adaptive = TruncationSpec::with_max_order(q);
    let model = match SphereModel::for_truncation(&s, &fine) {
        Ok(m) => m,
        Err(e) => return CheckOutcome::failed(name, &e),
    };
    let config = SweepConfig::default();
    let mut worst = 0.0f64;
    for &theta in &config.theta_values {
        for &offset in &config.offsets_m {
            for step in (0..360).step_by(phi_step_deg.max(1)) {
                let phi = (step as f64).to_radians();
                let run = || -> Result<f64> {
                    let x = receiver_position(0.18, theta, phi, offset, OffsetAxis::Radial)?;
                    let f2 = field_with(&model, FieldSelector::Scattered, &src, &x, &fine)?.e;
                    let mut w = 0.0f64;
                    for t in [&coarse, &adaptive] {
                        let f1 = field_with(&model, FieldSelector::Scattered, &src, &x, t)?.e;
                        let d = [f1[0] - f2[0], f1[1] - f2[1], f1[2] - f2[2]];
                        w = w.max(cnorm(&d) / cnorm(&f2));
                    }
                    Ok(w)
                };
                match run() {
                    Ok(w) => worst = worst.max(w),
                    Err(e) => return CheckOutcome::failed(name, &e),
                }
            }
        }
    }
    CheckOutcome::new(name, worst, 1e-6)
}
