//! Scalar generating function and the vector spherical wave functions.
//!
//! With `psi = Z_n(k r) P_n^m(cos theta) {cos | sin}(m phi)`:
//!
//! * `L = grad psi`
//! * `M = curl(r psi r_hat)`, purely tangential
//! * `N = curl(M) / k`
//!
//! Components are returned in the local `(r_hat, theta_hat, phi_hat)` basis.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use crate::coords::SphericalPoint;
use crate::coords::CVec3;
use crate::error::{Error, Result};
use crate::specfun::{assoc_legendre, spherical_bessel, LegendreEval, RadialEval, RadialKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Parity {
    /// `cos(m phi)`
    Even,
    /// `sin(m phi)`
    Odd,
}

/// One term `(n, m, parity)` of the eigenfunction expansion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModeIndex {
    pub n: usize,
    pub m: usize,
    pub parity: Parity,
}

impl ModeIndex {
    pub fn new(n: usize, m: usize, parity: Parity) -> Result<Self> {
        if m > n {
            return Err(Error::Index { n, m });
        }
        Ok(ModeIndex { n, m, parity })
    }

    /// `(f(m phi), d f / d(m phi))` for the parity's trigonometric factor.
    fn azimuthal(&self, phi: f64) -> (f64, f64) {
        let (s, c) = (self.m as f64 * phi).sin_cos();
        match self.parity {
            Parity::Even => (c, -s),
            Parity::Odd => (s, c),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VectorFieldValue {
    pub e_r: Complex64,
    pub e_theta: Complex64,
    pub e_phi: Complex64,
}

impl VectorFieldValue {
    pub fn to_array(&self) -> CVec3 {
        [self.e_r, self.e_theta, self.e_phi]
    }

    pub fn from_array(v: CVec3) -> Self {
        VectorFieldValue {
            e_r: v[0],
            e_theta: v[1],
            e_phi: v[2],
        }
    }

    pub fn norm(&self) -> f64 {
        crate::coords::cnorm(&self.to_array())
    }
}

struct ModeParts {
    radial: RadialEval,
    legendre: LegendreEval,
    trig: f64,
    dtrig: f64,
    rho: Complex64,
}

fn parts(mode: ModeIndex, kind: RadialKind, k: Complex64, x: &SphericalPoint) -> Result<ModeParts> {
    let rho = k * x.r;
    let radial = spherical_bessel(kind, mode.n, rho)?;
    let legendre = assoc_legendre(mode.n, mode.m, x.theta)?;
    let (trig, dtrig) = mode.azimuthal(x.phi);
    Ok(ModeParts {
        radial,
        legendre,
        trig,
        dtrig,
        rho,
    })
}

fn require_positive_r(x: &SphericalPoint) -> Result<()> {
    if x.r > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain("vector wave functions need r > 0".into()))
    }
}

fn require_vector_mode(mode: ModeIndex) -> Result<()> {
    if mode.n == 0 {
        return Err(Error::Domain("M and N vanish identically for n = 0".into()));
    }
    if mode.m > mode.n {
        return Err(Error::Index { n: mode.n, m: mode.m });
    }
    Ok(())
}

pub fn scalar_psi(
    mode: ModeIndex,
    kind: RadialKind,
    k: Complex64,
    x: &SphericalPoint,
) -> Result<Complex64> {
    let p = parts(mode, kind, k, x)?;
    Ok(p.radial.value * p.legendre.value * p.trig)
}

pub fn vector_l(
    mode: ModeIndex,
    kind: RadialKind,
    k: Complex64,
    x: &SphericalPoint,
) -> Result<VectorFieldValue> {
    require_positive_r(x)?;
    let p = parts(mode, kind, k, x)?;
    let z_over_r = p.radial.value / x.r;
    Ok(VectorFieldValue {
        e_r: k * p.radial.derivative * p.legendre.value * p.trig,
        e_theta: z_over_r * p.legendre.theta_derivative * p.trig,
        e_phi: z_over_r * p.legendre.over_sin_theta * p.dtrig,
    })
}

pub fn vector_m(
    mode: ModeIndex,
    kind: RadialKind,
    k: Complex64,
    x: &SphericalPoint,
) -> Result<VectorFieldValue> {
    require_vector_mode(mode)?;
    require_positive_r(x)?;
    let p = parts(mode, kind, k, x)?;
    let z = p.radial.value;
    Ok(VectorFieldValue {
        e_r: Complex64::new(0.0, 0.0),
        e_theta: z * p.legendre.over_sin_theta * p.dtrig,
        e_phi: -z * p.legendre.theta_derivative * p.trig,
    })
}

pub fn vector_n(
    mode: ModeIndex,
    kind: RadialKind,
    k: Complex64,
    x: &SphericalPoint,
) -> Result<VectorFieldValue> {
    require_vector_mode(mode)?;
    require_positive_r(x)?;
    let p = parts(mode, kind, k, x)?;
    let nn = (mode.n * (mode.n + 1)) as f64;
    let radial = p.radial.riccati_derivative / p.rho;
    Ok(VectorFieldValue {
        e_r: nn * p.radial.value / p.rho * p.legendre.value * p.trig,
        e_theta: radial * p.legendre.theta_derivative * p.trig,
        e_phi: radial * p.legendre.over_sin_theta * p.dtrig,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn j1_of_1() -> f64 {
        1f64.sin() - 1f64.cos()
    }

    #[test]
    fn psi_examples() {
        let x0 = SphericalPoint::new(0.0, 0.0, 0.0).unwrap();
        let m00 = ModeIndex::new(0, 0, Parity::Even).unwrap();
        let v = scalar_psi(m00, RadialKind::BesselJ, c(3.0), &x0).unwrap();
        assert_eq!(v, c(1.0));

        let x = SphericalPoint::new(1.0, PI / 2.0, 0.0).unwrap();
        let m10 = ModeIndex::new(1, 0, Parity::Even).unwrap();
        let v = scalar_psi(m10, RadialKind::BesselJ, c(1.0), &x).unwrap();
        assert!(v.norm() < 1e-16);

        let x = SphericalPoint::new(1.0, PI / 2.0, PI / 2.0).unwrap();
        let m11 = ModeIndex::new(1, 1, Parity::Odd).unwrap();
        let v = scalar_psi(m11, RadialKind::BesselJ, c(1.0), &x).unwrap();
        assert!((v.re - j1_of_1()).abs() < 1e-15);
        assert!((v.re - 0.3011686789).abs() < 1e-10);
    }

    #[test]
    fn l_of_monopole_is_radial() {
        let k = c(2.0);
        let x = SphericalPoint::new(0.7, 1.0, 2.0).unwrap();
        let m00 = ModeIndex::new(0, 0, Parity::Even).unwrap();
        let l = vector_l(m00, RadialKind::BesselJ, k, &x).unwrap();
        let j1 = spherical_bessel(RadialKind::BesselJ, 1, k * 0.7).unwrap().value;
        assert!((l.e_r + k * j1).norm() < 1e-15);
        assert_eq!(l.e_theta, c(0.0));
        assert_eq!(l.e_phi, c(0.0));

        let x = SphericalPoint::new(0.7, PI / 2.0, 2.0).unwrap();
        let m10 = ModeIndex::new(1, 0, Parity::Even).unwrap();
        let l = vector_l(m10, RadialKind::BesselJ, k, &x).unwrap();
        assert!(l.e_r.norm() < 1e-16);
    }

    #[test]
    fn m_examples() {
        let x = SphericalPoint::new(1.0, PI / 2.0, 0.0).unwrap();
        let m10 = ModeIndex::new(1, 0, Parity::Even).unwrap();
        let m = vector_m(m10, RadialKind::BesselJ, c(1.0), &x).unwrap();
        assert_eq!(m.e_r, c(0.0));
        assert!((m.e_phi.re - 0.3011686789).abs() < 1e-10);
        let bad = ModeIndex { n: 0, m: 0, parity: Parity::Even };
        assert!(vector_m(bad, RadialKind::BesselJ, c(1.0), &x).is_err());
    }

    #[test]
    fn n_at_pole_for_axisymmetric_mode() {
        let x = SphericalPoint::new(0.4, 0.0, 1.3).unwrap();
        let m10 = ModeIndex::new(1, 0, Parity::Even).unwrap();
        let n = vector_n(m10, RadialKind::BesselJ, c(2.0), &x).unwrap();
        assert_eq!(n.e_theta.norm(), 0.0);
        assert_eq!(n.e_phi.norm(), 0.0);
    }

    #[test]
    fn hankel_needs_positive_radius() {
        let x = SphericalPoint::new(0.0, 0.5, 0.0).unwrap();
        let m = ModeIndex::new(2, 1, Parity::Odd).unwrap();
        assert!(vector_n(m, RadialKind::Hankel1, c(1.0), &x).is_err());
    }
}
