//! Finite-difference stencils on Cartesian fields.

use num_complex::Complex64;

use crate::coords::{cartesian_to_spherical, spherical_to_cartesian, CVec3, SphericalPoint};
use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Central differences of order 2 or 4 with a fixed step in meters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FDStencil {
    pub step: f64,
    pub order: u8,
}

impl FDStencil {
    pub fn new(step: f64, order: u8) -> Result<Self> {
        if !(step.is_finite() && step > 0.0) {
            return Err(Error::invalid("step", "must be > 0"));
        }
        if order != 2 && order != 4 {
            return Err(Error::invalid("order", format!("{order} is not 2 or 4")));
        }
        Ok(FDStencil { step, order })
    }

    /// Second order with step `1e-5 r`.
    pub fn relative(r: f64) -> Self {
        FDStencil {
            step: 1e-5 * r,
            order: 2,
        }
    }

    /// Whether `|k| step` stays below 0.05.
    pub fn resolves(&self, k: Complex64) -> bool {
        k.norm() * self.step < 0.05
    }
}

fn shifted(p: [f64; 3], axis: usize, h: f64) -> [f64; 3] {
    let mut q = p;
    q[axis] += h;
    q
}

fn combine(terms: &[(f64, CVec3)], scale: f64) -> CVec3 {
    let mut out = [ZERO; 3];
    for (w, v) in terms {
        for i in 0..3 {
            out[i] += v[i] * *w;
        }
    }
    out.map(|c| c / scale)
}

/// `d f / d x_axis`.
pub fn partial(f: &dyn Fn([f64; 3]) -> CVec3, p: [f64; 3], axis: usize, s: &FDStencil) -> CVec3 {
    let h = s.step;
    let at = |k: f64| f(shifted(p, axis, k * h));
    match s.order {
        2 => combine(&[(1.0, at(1.0)), (-1.0, at(-1.0))], 2.0 * h),
        _ => combine(
            &[(-1.0, at(2.0)), (8.0, at(1.0)), (-8.0, at(-1.0)), (1.0, at(-2.0))],
            12.0 * h,
        ),
    }
}

fn mixed_once(f: &dyn Fn([f64; 3]) -> CVec3, p: [f64; 3], a: usize, b: usize, h: f64) -> CVec3 {
    let at = |sa: f64, sb: f64| f(shifted(shifted(p, a, sa * h), b, sb * h));
    combine(
        &[(1.0, at(1.0, 1.0)), (-1.0, at(1.0, -1.0)), (-1.0, at(-1.0, 1.0)), (1.0, at(-1.0, -1.0))],
        4.0 * h * h,
    )
}

/// `d^2 f / dx_a dx_b`; fourth order mixed derivatives use Richardson
/// extrapolation of the second-order stencil.
pub fn second_partial(
    f: &dyn Fn([f64; 3]) -> CVec3,
    p: [f64; 3],
    a: usize,
    b: usize,
    s: &FDStencil,
) -> CVec3 {
    let h = s.step;
    if a == b {
        let at = |k: f64| f(shifted(p, a, k * h));
        return match s.order {
            2 => combine(&[(1.0, at(1.0)), (-2.0, f(p)), (1.0, at(-1.0))], h * h),
            _ => combine(
                &[
                    (-1.0, at(2.0)),
                    (16.0, at(1.0)),
                    (-30.0, f(p)),
                    (16.0, at(-1.0)),
                    (-1.0, at(-2.0)),
                ],
                12.0 * h * h,
            ),
        };
    }
    let fine = mixed_once(f, p, a, b, h);
    match s.order {
        2 => fine,
        _ => {
            let coarse = mixed_once(f, p, a, b, 2.0 * h);
            combine(&[(4.0, fine), (-1.0, coarse)], 3.0)
        }
    }
}

pub fn curl(f: &dyn Fn([f64; 3]) -> CVec3, p: [f64; 3], s: &FDStencil) -> CVec3 {
    let d: Vec<CVec3> = (0..3).map(|a| partial(f, p, a, s)).collect();
    [d[1][2] - d[2][1], d[2][0] - d[0][2], d[0][1] - d[1][0]]
}

pub fn divergence(f: &dyn Fn([f64; 3]) -> CVec3, p: [f64; 3], s: &FDStencil) -> Complex64 {
    (0..3).map(|a| partial(f, p, a, s)[a]).sum()
}

pub fn gradient(f: &dyn Fn([f64; 3]) -> Complex64, p: [f64; 3], s: &FDStencil) -> CVec3 {
    let g = |q: [f64; 3]| [f(q), ZERO, ZERO];
    [0, 1, 2].map(|a| partial(&g, p, a, s)[0])
}

pub fn hessian(f: &dyn Fn([f64; 3]) -> Complex64, p: [f64; 3], s: &FDStencil) -> [[Complex64; 3]; 3] {
    let g = |q: [f64; 3]| [f(q), ZERO, ZERO];
    let mut out = [[ZERO; 3]; 3];
    for a in 0..3 {
        for b in a..3 {
            let v = second_partial(&g, p, a, b, s)[0];
            out[a][b] = v;
            out[b][a] = v;
        }
    }
    out
}

pub fn laplacian(f: &dyn Fn([f64; 3]) -> CVec3, p: [f64; 3], s: &FDStencil) -> CVec3 {
    let parts: Vec<(f64, CVec3)> = (0..3).map(|a| (1.0, second_partial(f, p, a, a, s))).collect();
    combine(&parts, 1.0)
}

/// `curl curl f` as `grad div f - laplacian f`.
pub fn curl_curl(f: &dyn Fn([f64; 3]) -> CVec3, p: [f64; 3], s: &FDStencil) -> CVec3 {
    let mut out = [ZERO; 3];
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                out[i] += second_partial(f, p, i, j, s)[j] - second_partial(f, p, j, j, s)[i];
            }
        }
    }
    out
}

/// Cartesian view of a field given in spherical components. Evaluation
/// errors become NaN so they surface in any residual.
pub fn cartesian_view<'a>(
    f: impl Fn(&SphericalPoint) -> Result<CVec3> + 'a,
) -> impl Fn([f64; 3]) -> CVec3 + 'a {
    move |c: [f64; 3]| {
        let p = SphericalPoint::from_cartesian(c);
        match f(&p) {
            Ok(v) => spherical_to_cartesian(&p, &v),
            Err(_) => [Complex64::new(f64::NAN, f64::NAN); 3],
        }
    }
}

/// Spherical components at `at` of a Cartesian vector.
pub fn to_spherical(at: &SphericalPoint, v: &CVec3) -> CVec3 {
    cartesian_to_spherical(at, v)
}
