//! Closed-form free-space references.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::fd::{hessian, FDStencil};
use crate::coords::{CVec3, SphericalPoint};
use crate::error::{Error, Result};
use crate::greens::Dyadic;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// `exp(i k R) / (4 pi R)`.
pub fn free_space_scalar(k: Complex64, r: f64) -> Complex64 {
    (I * k * r).exp() / (4.0 * PI * r)
}

/// Order-4 stencil with `step = 1e-2 min(R, 1/|k|)`.
pub fn free_space_stencil(k: Complex64, r: f64) -> FDStencil {
    FDStencil {
        step: 1e-2 * r.min(1.0 / k.norm()),
        order: 4,
    }
}

fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn norm(a: [f64; 3]) -> f64 {
    (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]).sqrt()
}

/// `(I + grad grad / k^2) g(|x - x0|)` with the Hessian by finite
/// differences, in the spherical bases at `x` (rows) and `x0` (columns).
pub fn free_space_dyadic(
    k: Complex64,
    x: &SphericalPoint,
    x0: &SphericalPoint,
    stencil: &FDStencil,
) -> Result<Dyadic> {
    let (xc, x0c) = (x.to_cartesian(), x0.to_cartesian());
    let r = norm(sub(xc, x0c));
    if r <= 1e-12 * x.r.max(x0.r) || r == 0.0 {
        return Err(Error::Coincident);
    }
    let g = |p: [f64; 3]| free_space_scalar(k, norm(sub(p, x0c)));
    let h = hessian(&g, xc, stencil);
    let g0 = g(xc);
    let mut cart = [[Complex64::new(0.0, 0.0); 3]; 3];
    for a in 0..3 {
        for b in 0..3 {
            cart[a][b] = h[a][b] / (k * k) + if a == b { g0 } else { 0.0.into() };
        }
    }
    Ok(cartesian_to_bases(&cart, x, x0))
}

/// `A(x) G A(x0)^T` with `A` the rows of the spherical basis.
pub fn cartesian_to_bases(
    g: &[[Complex64; 3]; 3],
    x: &SphericalPoint,
    x0: &SphericalPoint,
) -> Dyadic {
    let (a, b) = (x.basis(), x0.basis());
    let mut out = Dyadic::zero();
    for i in 0..3 {
        for j in 0..3 {
            let mut acc = Complex64::new(0.0, 0.0);
            for p in 0..3 {
                for q in 0..3 {
                    acc += a[i][p] * g[p][q] * b[j][q];
                }
            }
            out.entries[i][j] = acc;
        }
    }
    out
}

/// Field of a Hertzian dipole `p` at `x0` in a homogeneous medium,
/// Cartesian components, `E = i omega mu G p`.
pub fn hertzian_dipole_field(
    k: Complex64,
    omega: f64,
    mu: f64,
    x0: [f64; 3],
    p: CVec3,
    x: [f64; 3],
) -> Result<CVec3> {
    let rv = sub(x, x0);
    let r = norm(rv);
    if r == 0.0 {
        return Err(Error::Coincident);
    }
    let u = rv.map(|c| c / r);
    let kr = k * r;
    let g = free_space_scalar(k, r);
    let a = 1.0 + I / kr - 1.0 / (kr * kr);
    let b = 3.0 / (kr * kr) - 3.0 * I / kr - 1.0;
    let up: Complex64 = (0..3).map(|i| p[i] * u[i]).sum();
    let f = I * omega * mu * g;
    Ok([0, 1, 2].map(|i| f * (a * p[i] + b * up * u[i])))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_magnitude() {
        let g = free_space_scalar(Complex64::new(3.0, 0.0), 0.5);
        assert!((g.norm() - 1.0 / (4.0 * PI * 0.5)).abs() < 1e-15);
    }

    #[test]
    fn dyadic_matches_analytic_and_is_symmetric() {
        let k = Complex64::new(10.0, 0.0);
        let x = SphericalPoint::new(0.4, 1.0, 0.3).unwrap();
        let x0 = SphericalPoint::new(0.2, 2.0, 1.0).unwrap();
        let r = x.distance(&x0);
        let d = free_space_dyadic(k, &x, &x0, &free_space_stencil(k, r)).unwrap();
        // Column j of the analytic dipole field with p = unit e_j(x0).
        let (omega, mu) = (1.0, 1.0);
        let b0 = x0.basis();
        let b = x.basis();
        for j in 0..3 {
            let p = b0[j].map(|c| Complex64::new(c, 0.0));
            let e = hertzian_dipole_field(k, omega, mu, x0.to_cartesian(), p, x.to_cartesian()).unwrap();
            for i in 0..3 {
                let comp: Complex64 = (0..3).map(|q| e[q] * b[i][q]).sum::<Complex64>() / I;
                assert!((comp - d.entries[i][j]).norm() < 1e-8 * d.norm(), "{i}{j}");
            }
        }
        assert!(free_space_dyadic(k, &x, &x, &free_space_stencil(k, 1.0)).is_err());
    }

    #[test]
    fn far_field_is_transverse() {
        let k = Complex64::new(100.0, 0.0);
        let x0 = SphericalPoint::new(0.0, 0.0, 0.0).unwrap();
        let x = SphericalPoint::new(1.0, 0.7, 0.2).unwrap();
        let d = free_space_dyadic(k, &x, &x0, &free_space_stencil(k, 1.0)).unwrap();
        // Rows are in the basis at x, which is radial from x0 = origin.
        let longitudinal = d.entries[0][0].norm();
        let transverse = d.entries[1][1].norm();
        assert!(transverse / longitudinal > 30.0);
    }
}
