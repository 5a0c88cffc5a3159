//! Rodrigues-formula reference for `P_n^m(cos theta)` (no Condon-Shortley
//! phase):
//!
//! ```text
//! P_n^m(x) = (1 - x^2)^(m/2) / (2^n n!) d^(n+m)/dx^(n+m) (x^2 - 1)^n
//! ```
//!
//! The polynomial is built with exact integer coefficients and evaluated in
//! fixed point.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::bigfixed::Fixed;
use crate::error::{Error, Result};

fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, j| acc * BigInt::from(j))
}

fn binomial(n: usize, k: usize) -> BigInt {
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// Integer coefficients `a_p` of `d^(n+m)/dx^(n+m) (x^2 - 1)^n`, lowest
/// power first.
fn derivative_coefficients(n: usize, m: usize) -> Vec<BigInt> {
    let order = n + m;
    let mut coeffs = vec![BigInt::zero(); (2 * n).saturating_sub(order) + 1];
    for j in 0..=n {
        if 2 * j < order {
            continue;
        }
        let sign = if (n - j).is_multiple_of(2) { 1 } else { -1 };
        let falling = factorial(2 * j) / factorial(2 * j - order);
        coeffs[2 * j - order] += binomial(n, j) * falling * sign;
    }
    coeffs
}

fn horner(coeffs: &[BigInt], x: &Fixed) -> Fixed {
    let mut acc = Fixed::zero();
    for a in coeffs.iter().rev() {
        acc = Fixed(&acc.mul(x).0 + (a.clone() << super::bigfixed::FRAC_BITS));
    }
    acc
}

/// `(P_n^m(cos theta), d/dtheta P_n^m(cos theta))`.
pub fn rodrigues_legendre(n: usize, m: usize, theta: f64) -> Result<(f64, f64)> {
    if m > n {
        return Err(Error::Index { n, m });
    }
    if !(0.0..=std::f64::consts::PI).contains(&theta) {
        return Err(Error::Domain(format!("theta = {theta} outside [0, pi]")));
    }
    let (s, c) = theta.sin_cos();
    let s = s.max(0.0);
    let coeffs = derivative_coefficients(n, m);
    let dcoeffs: Vec<BigInt> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(p, a)| a * BigInt::from(p))
        .collect();
    let norm = factorial(n) << n;
    let x = Fixed::from_f64(c);
    let q = Fixed(horner(&coeffs, &x).0 / &norm).to_f64();
    let dq = Fixed(horner(&dcoeffs, &x).0 / &norm).to_f64();
    let value = s.powi(m as i32) * q;
    // d/dtheta [s^m q(cos theta)] = m s^(m-1) c q - s^(m+1) q'
    let lead = if m == 0 {
        0.0
    } else {
        m as f64 * s.powi(m as i32 - 1) * c * q
    };
    Ok((value, lead - s.powi(m as i32 + 1) * dq))
}
