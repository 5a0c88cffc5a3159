//! Interface references: a dense 4x4 continuity solve per order and the
//! tangential-field residual across `r = d`.

use nalgebra::{Matrix4, Vector4};
use num_complex::Complex64;

use super::bessel::{rayleigh_hankel1, series_bessel};
use super::fd::{cartesian_view, curl, to_spherical, FDStencil};
use super::legendre::rodrigues_legendre;
use crate::coords::{CVec3, SphericalPoint};
use crate::error::{Error, Result};
use crate::scenario::{Region, SphereScenario};

const SERIES_TERMS: usize = 600;
const SAMPLE_THETA: f64 = 0.9;
const SAMPLE_PHI: f64 = 0.4;

/// `[N, M]` channel coefficients of one order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DenseCoefficients {
    pub r12: [Complex64; 2],
    pub t12: [Complex64; 2],
    pub r21: [Complex64; 2],
    pub t21: [Complex64; 2],
}

#[derive(Clone, Copy)]
enum Kind {
    Standing,
    Outgoing,
}

fn radial(kind: Kind, n: usize, z: Complex64) -> Result<Complex64> {
    match kind {
        Kind::Standing => series_bessel(n, z, SERIES_TERMS),
        Kind::Outgoing => rayleigh_hankel1(n, z),
    }
}

/// Tangential `(E_theta, E_phi, H_theta, H_phi)` at `r = d` of the even
/// `m = 1` N and M modes.
fn tangential_traces(
    scenario: &SphereScenario,
    region: Region,
    kind: Kind,
    n: usize,
) -> Result<[Vector4<Complex64>; 2]> {
    let k = scenario.wavenumber(region);
    let mu = scenario.medium(region).permeability;
    let rho = k * scenario.radius_d;
    let b = radial(kind, n, rho)?;
    let riccati = rho * radial(kind, n - 1, rho)? - n as f64 * b;
    let t = riccati / rho;
    let (p, dp) = rodrigues_legendre(n, 1, SAMPLE_THETA)?;
    let os = p / SAMPLE_THETA.sin();
    let (s, c) = SAMPLE_PHI.sin_cos();
    let h = k / Complex64::new(0.0, scenario.omega() * mu);
    // Angular patterns: M-type (-os sin, -dp cos), N-type (dp cos, -os sin).
    let m_pattern = [-os * s, -dp * c];
    let n_pattern = [dp * c, -os * s];
    let n_mode = Vector4::new(
        t * n_pattern[0],
        t * n_pattern[1],
        h * b * m_pattern[0],
        h * b * m_pattern[1],
    );
    let m_mode = Vector4::new(
        b * m_pattern[0],
        b * m_pattern[1],
        h * t * n_pattern[0],
        h * t * n_pattern[1],
    );
    Ok([n_mode, m_mode])
}

fn solve(columns: [Vector4<Complex64>; 4], rhs: Vector4<Complex64>, n: usize) -> Result<Vector4<Complex64>> {
    let a = Matrix4::from_columns(&columns);
    a.lu().solve(&rhs).ok_or(Error::SingularSystem { n, det: 0.0 })
}

/// Reflection and transmission of order `n >= 1` from the full continuity
/// system, using the series and Rayleigh references for the radial parts.
pub fn dense_interface_solve(scenario: &SphereScenario, n: usize) -> Result<DenseCoefficients> {
    if n == 0 {
        return Err(Error::Domain("interface solve starts at n = 1".into()));
    }
    let [j1n, j1m] = tangential_traces(scenario, Region::Inside, Kind::Standing, n)?;
    let [h1n, h1m] = tangential_traces(scenario, Region::Inside, Kind::Outgoing, n)?;
    let [j2n, j2m] = tangential_traces(scenario, Region::Outside, Kind::Standing, n)?;
    let [h2n, h2m] = tangential_traces(scenario, Region::Outside, Kind::Outgoing, n)?;

    let inside = solve([j1n, j1m, -h2n, -h2m], -(h1n + h1m), n)?;
    let outside = solve([h2n, h2m, -j1n, -j1m], -(j2n + j2m), n)?;
    Ok(DenseCoefficients {
        r12: [inside[0], inside[1]],
        t12: [inside[2], inside[3]],
        r21: [outside[0], outside[1]],
        t21: [outside[2], outside[3]],
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterfaceResidual {
    /// Worst tangential-E mismatch relative to the local field magnitude.
    pub e: f64,
    /// Same for H obtained by a finite-difference curl.
    pub h: f64,
}

/// Deterministic sample directions spread over the sphere, away from the
/// poles.
pub fn interface_samples(count: usize) -> Vec<(f64, f64)> {
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    (0..count)
        .map(|i| {
            let u = (i as f64 + 0.5) / count as f64;
            let theta = (1.0 - 2.0 * u).clamp(-0.98, 0.98).acos();
            let phi = (i as f64 * golden).rem_euclid(std::f64::consts::TAU);
            (theta, phi)
        })
        .collect()
}

fn tangential_mismatch(a: &CVec3, b: &CVec3) -> f64 {
    let scale = crate::coords::cnorm(a).max(crate::coords::cnorm(b));
    if scale == 0.0 {
        return 0.0;
    }
    ((a[1] - b[1]).norm_sqr() + (a[2] - b[2]).norm_sqr()).sqrt() / scale
}

/// Tangential continuity of `E` and `H = curl E / (i omega mu)` at
/// `count` points on `r = d`. Both closures return spherical components and
/// must be evaluable slightly off the interface for the curl stencil.
pub fn interface_residual(
    scenario: &SphereScenario,
    inside: &dyn Fn(&SphericalPoint) -> Result<CVec3>,
    outside: &dyn Fn(&SphericalPoint) -> Result<CVec3>,
    count: usize,
    stencil: &FDStencil,
) -> Result<InterfaceResidual> {
    let d = scenario.radius_d;
    let omega = scenario.omega();
    let iwmu = |region: Region| Complex64::new(0.0, omega * scenario.medium(region).permeability);
    let inside_c = cartesian_view(inside);
    let outside_c = cartesian_view(outside);
    let mut worst = InterfaceResidual { e: 0.0, h: 0.0 };
    for (theta, phi) in interface_samples(count) {
        let p = SphericalPoint::new(d, theta, phi)?;
        let (ei, eo) = (inside(&p)?, outside(&p)?);
        worst.e = worst.e.max(tangential_mismatch(&ei, &eo));
        let c = p.to_cartesian();
        let hi = curl(&inside_c, c, stencil).map(|v| v / iwmu(Region::Inside));
        let ho = curl(&outside_c, c, stencil).map(|v| v / iwmu(Region::Outside));
        let (hi, ho) = (to_spherical(&p, &hi), to_spherical(&p, &ho));
        let h = tangential_mismatch(&hi, &ho);
        if !h.is_finite() {
            return Err(Error::Domain("non-finite field near the interface".into()));
        }
        worst.h = worst.h.max(h);
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scattering::{CoeffTable, CHANNEL_M, CHANNEL_N};

    #[test]
    fn dense_solve_matches_coefficient_table() {
        let s = SphereScenario::reference();
        let table = CoeffTable::new(&s, 8).unwrap();
        for n in 1..=8 {
            let dense = dense_interface_solve(&s, n).unwrap();
            let set = table.get(n);
            for c in [CHANNEL_N, CHANNEL_M] {
                for (a, b) in [
                    (dense.r12[c], set.r12.value(c, c)),
                    (dense.t12[c], set.t12.value(c, c)),
                    (dense.r21[c], set.r21.value(c, c)),
                    (dense.t21[c], set.t21.value(c, c)),
                ] {
                    assert!((a - b).norm() < 1e-10 * b.norm().max(1e-300), "n={n} c={c}: {a} vs {b}");
                }
            }
        }
    }

    #[test]
    fn matched_media_dense_solve() {
        let s = SphereScenario::reference().matched();
        let d = dense_interface_solve(&s, 3).unwrap();
        for c in 0..2 {
            assert!(d.r12[c].norm() < 1e-12 && (d.t12[c] - 1.0).norm() < 1e-12);
            assert!(d.r21[c].norm() < 1e-12 && (d.t21[c] - 1.0).norm() < 1e-12);
        }
    }

    #[test]
    fn samples_avoid_poles() {
        let s = interface_samples(16);
        assert_eq!(s.len(), 16);
        assert!(s.iter().all(|(t, _)| *t > 0.1 && *t < std::f64::consts::PI - 0.1));
    }
}
