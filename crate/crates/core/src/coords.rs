//! Spherical points and conversions between the local spherical basis and
//! Cartesian components.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type CVec3 = [Complex64; 3];

/// A point `(r, theta, phi)`; `phi` is folded into `[0, 2 pi)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SphericalPoint {
    pub r: f64,
    pub theta: f64,
    pub phi: f64,
}

impl SphericalPoint {
    pub fn new(r: f64, theta: f64, phi: f64) -> Result<Self> {
        if !(r.is_finite() && r >= 0.0) {
            return Err(Error::invalid("r", format!("{r} must be finite and >= 0")));
        }
        if !(0.0..=PI).contains(&theta) {
            return Err(Error::invalid("theta", format!("{theta} outside [0, pi]")));
        }
        if !phi.is_finite() {
            return Err(Error::invalid("phi", "must be finite"));
        }
        let mut phi = phi.rem_euclid(TAU);
        if phi >= TAU {
            phi = 0.0;
        }
        Ok(SphericalPoint { r, theta, phi })
    }

    pub fn from_cartesian(p: [f64; 3]) -> Self {
        let r = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
        if r == 0.0 {
            return SphericalPoint { r, theta: 0.0, phi: 0.0 };
        }
        let theta = (p[2] / r).clamp(-1.0, 1.0).acos();
        let phi = p[1].atan2(p[0]).rem_euclid(TAU);
        let phi = if phi >= TAU { 0.0 } else { phi };
        SphericalPoint { r, theta, phi }
    }

    pub fn to_cartesian(&self) -> [f64; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [self.r * st * cp, self.r * st * sp, self.r * ct]
    }

    /// Rows are the Cartesian components of `r_hat`, `theta_hat`, `phi_hat`.
    pub fn basis(&self) -> [[f64; 3]; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [
            [st * cp, st * sp, ct],
            [ct * cp, ct * sp, -st],
            [-sp, cp, 0.0],
        ]
    }

    pub fn distance(&self, other: &SphericalPoint) -> f64 {
        let (a, b) = (self.to_cartesian(), other.to_cartesian());
        ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt()
    }
}

/// Spherical components at `at` to Cartesian components.
pub fn spherical_to_cartesian(at: &SphericalPoint, v: &CVec3) -> CVec3 {
    let b = at.basis();
    let mut out = [Complex64::new(0.0, 0.0); 3];
    for (i, o) in out.iter_mut().enumerate() {
        *o = v[0] * b[0][i] + v[1] * b[1][i] + v[2] * b[2][i];
    }
    out
}

/// Cartesian components to spherical components at `at`.
pub fn cartesian_to_spherical(at: &SphericalPoint, v: &CVec3) -> CVec3 {
    let b = at.basis();
    let mut out = [Complex64::new(0.0, 0.0); 3];
    for (o, row) in out.iter_mut().zip(b.iter()) {
        *o = v[0] * row[0] + v[1] * row[1] + v[2] * row[2];
    }
    out
}

pub fn cnorm(v: &CVec3) -> f64 {
    v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}
