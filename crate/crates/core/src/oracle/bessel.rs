//! Spherical Bessel references computed in fixed point.
//!
//! * `j_n(z) = z^n / (2n+1)!! * sum_k (-z^2/2)^k / (k! (2n+3)(2n+5)...(2n+2k+1))`
//! * `h_n^(1)(z) = (-i)^(n+1) e^(iz)/z * sum_{k<=n} (n+k)! / (k! (n-k)!) (i / 2z)^k`

use num_bigint::BigInt;
use num_complex::Complex64;

use super::bigfixed::CFixed;
use crate::error::{Error, Result};

const TAIL_TOLERANCE: f64 = 1e-14;

/// Ascending series for `j_n(z)` with at most `terms` terms.
pub fn series_bessel(n: usize, z: Complex64, terms: usize) -> Result<Complex64> {
    if z == Complex64::new(0.0, 0.0) {
        return Ok(if n == 0 { Complex64::new(1.0, 0.0) } else { z });
    }
    let zf = CFixed::from_c64(z);
    let step = zf.mul(&zf).div_int(-2);
    let mut term = CFixed::one();
    let mut sum = CFixed::one();
    let mut converged = false;
    let mut tail = f64::INFINITY;
    for k in 1..terms {
        let denom = BigInt::from(k) * BigInt::from(2 * n + 2 * k + 1);
        term = term.mul(&step).div_int(denom);
        sum = sum.add(&term);
        // Once the ratio of successive terms drops below 1/2 the remaining
        // tail is bounded by twice the current term.
        let ratio = z.norm_sqr() / (2.0 * (k + 1) as f64 * (2 * n + 2 * k + 3) as f64);
        if ratio < 0.5 {
            tail = 2.0 * term.magnitude();
            if tail <= TAIL_TOLERANCE * sum.magnitude() {
                converged = true;
                break;
            }
        }
    }
    if !converged {
        return Err(Error::TailBound { terms, tail });
    }
    let mut prefactor = Complex64::new(1.0, 0.0);
    for j in 1..=n {
        prefactor *= z / (2 * j + 1) as f64;
    }
    Ok(prefactor * sum.to_c64())
}

/// `j_n'(z)` from the oracle values of the neighbouring orders.
pub fn series_bessel_derivative(n: usize, z: Complex64, terms: usize) -> Result<Complex64> {
    let up = series_bessel(n + 1, z, terms)?;
    if n == 0 {
        return Ok(-up);
    }
    let down = series_bessel(n - 1, z, terms)?;
    Ok((n as f64 * down - (n + 1) as f64 * up) / (2 * n + 1) as f64)
}

/// Finite Rayleigh sum for `h_n^(1)(z)`, `z != 0`.
pub fn rayleigh_hankel1(n: usize, z: Complex64) -> Result<Complex64> {
    if z == Complex64::new(0.0, 0.0) {
        return Err(Error::Domain("h_n(0) is singular".into()));
    }
    let half_inv = CFixed::from_c64(Complex64::new(0.0, 1.0))
        .div(&CFixed::from_c64(z))
        .div_int(2);
    let mut power = CFixed::one();
    let mut sum = CFixed::one();
    // c_k = (n+k)! / (k! (n-k)!), c_{k} = c_{k-1} (n+k)(n-k+1) / k.
    let mut c = BigInt::from(1);
    for k in 1..=n {
        c = c * BigInt::from((n + k) * (n - k + 1)) / BigInt::from(k);
        power = power.mul(&half_inv);
        sum = sum.add(&power.mul_int(c.clone()));
    }
    let phase = Complex64::new(0.0, -1.0).powu(n as u32 + 1);
    let i = Complex64::new(0.0, 1.0);
    Ok(phase * (i * z).exp() / z * sum.to_c64())
}

/// `h_n^(1)'(z)` from neighbouring Rayleigh sums.
pub fn rayleigh_hankel1_derivative(n: usize, z: Complex64) -> Result<Complex64> {
    let up = rayleigh_hankel1(n + 1, z)?;
    if n == 0 {
        return Ok(-up);
    }
    let down = rayleigh_hankel1(n - 1, z)?;
    Ok((n as f64 * down - (n + 1) as f64 * up) / (2 * n + 1) as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn series_examples() {
        let v = series_bessel(0, c(1.0, 0.0), 30).unwrap();
        assert!((v.re - 1f64.sin()).abs() < 1e-15);
        assert!((v.re - 0.8414709848).abs() < 1e-10);
        assert_eq!(series_bessel(2, c(0.0, 0.0), 30).unwrap(), c(0.0, 0.0));
        let v = series_bessel(1, c(0.5, 0.0), 30).unwrap();
        assert!((v.re - 0.1625370306).abs() < 1e-10);
    }

    #[test]
    fn series_reports_short_budget() {
        assert!(matches!(series_bessel(0, c(40.0, 0.0), 10), Err(Error::TailBound { .. })));
    }

    #[test]
    fn rayleigh_examples() {
        let z = c(1.0, 0.0);
        let h0 = rayleigh_hankel1(0, z).unwrap();
        let expect = c(0.0, -1.0) * (c(0.0, 1.0) * z).exp() / z;
        assert!((h0 - expect).norm() < 1e-15);
        // h_1 = -e^{iz} (z + i) / z^2
        let z = c(2.0, 0.5);
        let h1 = rayleigh_hankel1(1, z).unwrap();
        let expect = -(c(0.0, 1.0) * z).exp() * (z + c(0.0, 1.0)) / (z * z);
        assert!((h1 - expect).norm() < 1e-14 * expect.norm());
    }

    #[test]
    fn large_argument_cancellation_is_resolved() {
        // j_0(50) = sin 50 / 50 needs ~70 digits of cancellation.
        let v = series_bessel(0, c(50.0, 0.0), 400).unwrap();
        assert!((v.re - 50f64.sin() / 50.0).abs() < 1e-16);
    }
}
