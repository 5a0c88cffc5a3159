//! Associated Legendre functions `P_n^m(cos theta)` without the
//! Condon-Shortley phase, so `P_1^1(cos theta) = sin theta`.
//!
//! The theta-derivative and `m P_n^m / sin theta` are produced from
//! neighbouring orders,
//!
//! ```text
//! dP_n^m/dtheta        = (n+m)(n-m+1) P_n^(m-1) / 2 - P_n^(m+1) / 2     (m >= 1)
//! dP_n^0/dtheta        = -P_n^1
//! m P_n^m / sin theta  = (n+m)(n+m-1) P_(n-1)^(m-1) / 2 + P_(n-1)^(m+1) / 2
//! ```
//!
//! so neither quantity ever divides by `sin theta` and both are exact at the
//! poles.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LegendreEval {
    pub value: f64,
    pub theta_derivative: f64,
    pub over_sin_theta: f64,
}

fn check_theta(theta: f64) -> Result<()> {
    if !(0.0..=std::f64::consts::PI).contains(&theta) {
        return Err(Error::Domain(format!("theta = {theta} outside [0, pi]")));
    }
    Ok(())
}

/// Column `P_k^m(x)` for `k = 0..=n` (zero below `k = m`).
fn column(m: usize, n: usize, x: f64, s: f64) -> Vec<f64> {
    let mut col = vec![0.0; n + 1];
    if m > n {
        return col;
    }
    let mut pmm = 1.0;
    for j in 1..=m {
        pmm *= (2 * j - 1) as f64 * s;
    }
    col[m] = pmm;
    if m < n {
        col[m + 1] = (2 * m + 1) as f64 * x * pmm;
    }
    for k in (m + 2)..=n {
        col[k] = ((2 * k - 1) as f64 * x * col[k - 1] - (k + m - 1) as f64 * col[k - 2])
            / (k - m) as f64;
    }
    col
}

/// Unnormalized `P_n^m(cos theta)` with its theta-derivative and
/// `m P_n^m / sin theta`.
pub fn assoc_legendre(n: usize, m: usize, theta: f64) -> Result<LegendreEval> {
    if m > n {
        return Err(Error::Index { n, m });
    }
    check_theta(theta)?;
    let (s, x) = theta.sin_cos();
    let s = s.max(0.0);
    let here = column(m, n, x, s);
    let up = column(m + 1, n, x, s);
    let down = if m > 0 { column(m - 1, n, x, s) } else { vec![0.0; n + 1] };

    let (nf, mf) = (n as f64, m as f64);
    let theta_derivative = if m == 0 {
        -up[n]
    } else {
        0.5 * ((nf + mf) * (nf - mf + 1.0) * down[n] - up[n])
    };
    let over_sin_theta = if m == 0 {
        0.0
    } else {
        // n >= m >= 1 here.
        0.5 * ((nf + mf) * (nf + mf - 1.0) * down[n - 1] + up[n - 1])
    };
    let value = here[n];
    if !(value.is_finite() && theta_derivative.is_finite() && over_sin_theta.is_finite()) {
        return Err(Error::Overflow {
            n,
            z: num_complex::Complex64::new(x, 0.0),
        });
    }
    Ok(LegendreEval {
        value,
        theta_derivative,
        over_sin_theta,
    })
}

/// All orders `0 <= m <= n <= n_max` of the normalized functions
/// `sqrt((n-m)!/(n+m)!) P_n^m(cos theta)` at one angle.
///
/// Normalization keeps every entry `O(sqrt(n))`, so tables to high order
/// never overflow.
#[derive(Debug, Clone)]
pub struct LegendreTable {
    n_max: usize,
    value: Vec<f64>,
    theta_derivative: Vec<f64>,
    over_sin_theta: Vec<f64>,
}

#[inline]
fn idx(n: usize, m: usize) -> usize {
    n * (n + 1) / 2 + m
}

impl LegendreTable {
    pub fn normalized(n_max: usize, theta: f64) -> Result<Self> {
        check_theta(theta)?;
        let (s, x) = theta.sin_cos();
        let s = s.max(0.0);
        let size = idx(n_max + 1, 0);
        let mut p = vec![0.0; size];

        let mut pmm = 1.0;
        for m in 0..=n_max {
            if m > 0 {
                pmm *= ((2 * m - 1) as f64 / (2 * m) as f64).sqrt() * s;
            }
            p[idx(m, m)] = pmm;
            if m < n_max {
                p[idx(m + 1, m)] = ((2 * m + 1) as f64).sqrt() * x * pmm;
            }
            for n in (m + 2)..=n_max {
                let a = (2 * n - 1) as f64 * x * p[idx(n - 1, m)];
                let b = (((n + m - 1) * (n - m - 1)) as f64).sqrt() * p[idx(n - 2, m)];
                p[idx(n, m)] = (a - b) / (((n - m) * (n + m)) as f64).sqrt();
            }
        }

        let get = |p: &[f64], n: usize, m: usize| if m <= n { p[idx(n, m)] } else { 0.0 };
        let mut dp = vec![0.0; size];
        let mut os = vec![0.0; size];
        for n in 0..=n_max {
            for m in 0..=n {
                let (nf, mf) = (n as f64, m as f64);
                dp[idx(n, m)] = if m == 0 {
                    -(nf * (nf + 1.0)).sqrt() * get(&p, n, 1)
                } else {
                    0.5 * (((nf + mf) * (nf - mf + 1.0)).sqrt() * get(&p, n, m - 1)
                        - ((nf + mf + 1.0) * (nf - mf)).sqrt() * get(&p, n, m + 1))
                };
                if m > 0 {
                    os[idx(n, m)] = 0.5
                        * (((nf + mf) * (nf + mf - 1.0)).sqrt() * get(&p, n - 1, m - 1)
                            + ((nf - mf) * (nf - mf - 1.0)).max(0.0).sqrt() * get(&p, n - 1, m + 1));
                }
            }
        }
        Ok(LegendreTable {
            n_max,
            value: p,
            theta_derivative: dp,
            over_sin_theta: os,
        })
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    #[inline]
    pub fn get(&self, n: usize, m: usize) -> LegendreEval {
        let i = idx(n, m);
        LegendreEval {
            value: self.value[i],
            theta_derivative: self.theta_derivative[i],
            over_sin_theta: self.over_sin_theta[i],
        }
    }

    /// Row `n` as three slices indexed by `m`.
    #[inline]
    pub fn row(&self, n: usize) -> (&[f64], &[f64], &[f64]) {
        let r = idx(n, 0)..idx(n, 0) + n + 1;
        (
            &self.value[r.clone()],
            &self.theta_derivative[r.clone()],
            &self.over_sin_theta[r],
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn low_order_examples() {
        let p = assoc_legendre(0, 0, 0.7).unwrap();
        assert_eq!(p.value, 1.0);
        assert_eq!(p.theta_derivative, 0.0);
        let p = assoc_legendre(1, 0, PI / 3.0).unwrap();
        assert!((p.value - 0.5).abs() < 1e-15);
        let p = assoc_legendre(2, 1, PI / 2.0).unwrap();
        assert!(p.value.abs() < 1e-15);
        // No Condon-Shortley phase.
        let p = assoc_legendre(1, 1, 0.4).unwrap();
        assert!((p.value - 0.4f64.sin()).abs() < 1e-15);
        assert!((p.theta_derivative - 0.4f64.cos()).abs() < 1e-15);
        assert!((p.over_sin_theta - 1.0).abs() < 1e-15);
    }

    #[test]
    fn index_error() {
        assert_eq!(assoc_legendre(2, 3, 0.1).unwrap_err(), Error::Index { n: 2, m: 3 });
    }

    #[test]
    fn pole_limits() {
        for n in 1..12usize {
            let nn = (n * (n + 1)) as f64 / 2.0;
            let north = assoc_legendre(n, 1, 0.0).unwrap();
            assert!((north.over_sin_theta - nn).abs() < 1e-12 * nn);
            assert!((north.theta_derivative - nn).abs() < 1e-12 * nn);
            let south = assoc_legendre(n, 1, PI).unwrap();
            let sign = if n % 2 == 0 { -1.0 } else { 1.0 };
            assert!((south.over_sin_theta - sign * nn).abs() < 1e-10 * nn, "n={n}");
            assert!((south.theta_derivative + sign * nn).abs() < 1e-10 * nn, "n={n}");
            for m in 2..=n {
                let p = assoc_legendre(n, m, 0.0).unwrap();
                assert_eq!(p.value, 0.0);
                assert_eq!(p.over_sin_theta, 0.0);
                assert_eq!(p.theta_derivative, 0.0);
            }
        }
    }

    #[test]
    fn derivative_matches_central_difference() {
        let h = 1e-6;
        for &(n, m) in &[(3usize, 0usize), (5, 2), (9, 9), (14, 6)] {
            let th = 1.1;
            let f = |t: f64| assoc_legendre(n, m, t).unwrap().value;
            let fd = (f(th + h) - f(th - h)) / (2.0 * h);
            let d = assoc_legendre(n, m, th).unwrap().theta_derivative;
            assert!((d - fd).abs() <= 1e-7 * d.abs().max(1.0), "({n},{m})");
            let os = assoc_legendre(n, m, th).unwrap().over_sin_theta;
            assert!((os - m as f64 * f(th) / th.sin()).abs() <= 1e-12 * os.abs().max(1.0));
        }
    }

    #[test]
    fn normalized_table_matches_unnormalized() {
        let th = 0.83;
        let t = LegendreTable::normalized(25, th).unwrap();
        for n in 0..=25usize {
            for m in 0..=n {
                let mut norm = 1.0f64;
                for j in (n - m + 1)..=(n + m) {
                    norm /= j as f64;
                }
                let norm = norm.sqrt();
                let p = assoc_legendre(n, m, th).unwrap();
                let q = t.get(n, m);
                let tol = 1e-12 * (norm * p.value.abs()).max(1e-3);
                assert!((q.value - norm * p.value).abs() < tol, "value ({n},{m})");
                let tol = 1e-11 * (norm * p.theta_derivative.abs()).max(1e-3);
                assert!((q.theta_derivative - norm * p.theta_derivative).abs() < tol, "d ({n},{m})");
                let tol = 1e-11 * (norm * p.over_sin_theta.abs()).max(1e-3);
                assert!((q.over_sin_theta - norm * p.over_sin_theta).abs() < tol, "os ({n},{m})");
            }
        }
    }

    #[test]
    fn high_order_table_is_finite() {
        let t = LegendreTable::normalized(400, 1e-3).unwrap();
        for n in [0usize, 100, 400] {
            let (v, d, o) = t.row(n);
            assert!(v.iter().chain(d).chain(o).all(|x| x.is_finite()));
        }
    }
}
