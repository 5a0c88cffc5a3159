//! Spherical Bessel and Hankel functions of complex argument.
//!
//! Orders are generated as whole tables. Every entry carries a natural-log
//! scale so that `j_n` at small argument and `h_n` at high order stay
//! representable long after the plain `f64` values would under- or overflow;
//! products of a small and a large factor are formed in log space first.
//!
//! `BesselJ` uses Miller's downward recurrence normalized against the closed
//! forms of `j_0` / `j_1`. The Hankel kinds use upward recurrence from their
//! closed forms, which is stable because `h_n` is the dominant solution.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest order accepted by [`spherical_bessel`].
pub const DEFAULT_MAX_ORDER: usize = 120;

/// Hard ceiling for the order of a [`RadialTable`].
pub const ORDER_CEILING: usize = 1000;

const RESCALE_LIMIT: f64 = 1e100;
const SMALL_ARGUMENT: f64 = 1e-5;

/// Which spherical function fills the radial slot `Z_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RadialKind {
    /// `j_n`, regular at the origin (standing waves).
    BesselJ,
    /// `h_n^(1) = j_n + i y_n`, outgoing under `exp(-i omega t)`.
    Hankel1,
    /// `h_n^(2) = j_n - i y_n`.
    Hankel2,
}

/// Value, derivative and Riccati derivative `d/dz [z b_n(z)]` of one order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialEval {
    pub value: Complex64,
    pub derivative: Complex64,
    pub riccati_derivative: Complex64,
}

/// A [`RadialEval`] whose three members must be multiplied by
/// `exp(log_scale)` to obtain the true values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledRadial {
    pub value: Complex64,
    pub derivative: Complex64,
    pub riccati_derivative: Complex64,
    pub log_scale: f64,
}

impl ScaledRadial {
    fn zero() -> Self {
        let z = Complex64::new(0.0, 0.0);
        ScaledRadial {
            value: z,
            derivative: z,
            riccati_derivative: z,
            log_scale: 0.0,
        }
    }

    /// Undo the scaling. Returns `None` when any member overflows `f64`.
    pub fn unscale(&self) -> Option<RadialEval> {
        let f = self.log_scale.exp();
        let out = RadialEval {
            value: self.value * f,
            derivative: self.derivative * f,
            riccati_derivative: self.riccati_derivative * f,
        };
        let finite = out.value.is_finite()
            && out.derivative.is_finite()
            && out.riccati_derivative.is_finite();
        finite.then_some(out)
    }

    fn normalized(mut self) -> Self {
        let m = self
            .value
            .norm()
            .max(self.derivative.norm())
            .max(self.riccati_derivative.norm());
        if m > 0.0 && m.is_finite() {
            self.value /= m;
            self.derivative /= m;
            self.riccati_derivative /= m;
            self.log_scale += m.ln();
        }
        self
    }
}

/// Orders `0..=n_max` of one radial kind at a fixed argument.
#[derive(Debug, Clone)]
pub struct RadialTable {
    kind: RadialKind,
    z: Complex64,
    entries: Vec<ScaledRadial>,
}

impl RadialTable {
    pub fn new(kind: RadialKind, n_max: usize, z: Complex64) -> Result<Self> {
        if n_max > ORDER_CEILING {
            return Err(Error::OrderLimit {
                n: n_max,
                max: ORDER_CEILING,
            });
        }
        if !z.is_finite() {
            return Err(Error::Domain(format!("non-finite argument {z}")));
        }
        let entries = match kind {
            RadialKind::BesselJ => bessel_j_entries(n_max, z)?,
            RadialKind::Hankel1 => hankel_entries(1.0, n_max, z)?,
            RadialKind::Hankel2 => hankel_entries(-1.0, n_max, z)?,
        };
        Ok(RadialTable { kind, z, entries })
    }

    pub fn kind(&self) -> RadialKind {
        self.kind
    }

    pub fn argument(&self) -> Complex64 {
        self.z
    }

    pub fn n_max(&self) -> usize {
        self.entries.len() - 1
    }

    #[inline]
    pub fn get(&self, n: usize) -> &ScaledRadial {
        &self.entries[n]
    }

    pub fn entries(&self) -> &[ScaledRadial] {
        &self.entries
    }
}

/// Spherical Bessel/Hankel function of order `n` with derivatives.
pub fn spherical_bessel(kind: RadialKind, n: usize, z: Complex64) -> Result<RadialEval> {
    if n > DEFAULT_MAX_ORDER {
        return Err(Error::OrderLimit {
            n,
            max: DEFAULT_MAX_ORDER,
        });
    }
    let table = RadialTable::new(kind, n, z)?;
    table.get(n).unscale().ok_or(Error::Overflow { n, z })
}

/// `j_n h_n' - j_n' h_n`, which equals `i / z^2` for every order.
pub fn wronskian_check(n: usize, z: Complex64) -> Result<Complex64> {
    if z == Complex64::new(0.0, 0.0) {
        return Err(Error::Domain("Wronskian undefined at z = 0".into()));
    }
    let j = RadialTable::new(RadialKind::BesselJ, n, z)?;
    let h = RadialTable::new(RadialKind::Hankel1, n, z)?;
    let (j, h) = (j.get(n), h.get(n));
    let w = (j.value * h.derivative - j.derivative * h.value) * (j.log_scale + h.log_scale).exp();
    if w.is_finite() {
        Ok(w)
    } else {
        Err(Error::Overflow { n, z })
    }
}

/// A recurrence sequence entry: true value is `mantissa * exp(log)`.
type Raw = (Complex64, f64);

/// Turn raw values for orders `0..=n_max + 1` into scaled triples.
fn assemble(raw: &[Raw], n_max: usize, z: Complex64) -> Vec<ScaledRadial> {
    let rel = |k: usize, base: f64| raw[k].0 * (raw[k].1 - base).exp();
    (0..=n_max)
        .map(|k| {
            let (v, s) = raw[k];
            let above = rel(k + 1, s);
            let derivative = if k == 0 {
                -above
            } else {
                let below = rel(k - 1, s);
                (k as f64 * below - (k + 1) as f64 * above) / (2 * k + 1) as f64
            };
            ScaledRadial {
                value: v,
                derivative,
                riccati_derivative: v + z * derivative,
                log_scale: s,
            }
            .normalized()
        })
        .collect()
}

fn hankel_entries(sigma: f64, n_max: usize, z: Complex64) -> Result<Vec<ScaledRadial>> {
    if z.norm() == 0.0 {
        return Err(Error::Domain("Hankel functions are singular at z = 0".into()));
    }
    let top = n_max + 1;
    // exp(i sigma z) = phase * exp(-sigma Im z)
    let phase = Complex64::from_polar(1.0, sigma * z.re);
    let mut s = -sigma * z.im;
    let i_sigma = Complex64::new(0.0, sigma);
    let h0 = -i_sigma * phase / z;
    let h1 = -phase * (z + i_sigma) / (z * z);

    let mut raw: Vec<Raw> = Vec::with_capacity(top + 1);
    raw.push((h0, s));
    raw.push((h1, s));
    let (mut prev, mut cur) = (h0, h1);
    for k in 1..top {
        let factor = (2 * k + 1) as f64 / z;
        if !factor.is_finite() {
            return Err(Error::Overflow { n: k + 1, z });
        }
        if cur.norm() * factor.norm() > RESCALE_LIMIT {
            let sc = cur.norm();
            prev /= sc;
            cur /= sc;
            s += sc.ln();
        }
        let next = factor * cur - prev;
        if !next.is_finite() {
            return Err(Error::Overflow { n: k + 1, z });
        }
        raw.push((next, s));
        prev = cur;
        cur = next;
    }
    Ok(assemble(&raw, n_max, z))
}

fn bessel_j_entries(n_max: usize, z: Complex64) -> Result<Vec<ScaledRadial>> {
    let top = n_max + 1;
    let a = z.norm();
    if a == 0.0 {
        let mut out = vec![ScaledRadial::zero(); n_max + 1];
        out[0].value = Complex64::new(1.0, 0.0);
        out[0].riccati_derivative = Complex64::new(1.0, 0.0);
        if n_max >= 1 {
            out[1].derivative = Complex64::new(1.0 / 3.0, 0.0);
        }
        return Ok(out);
    }
    let raw = if a < SMALL_ARGUMENT {
        small_argument_series(top, z)
    } else {
        miller_downward(top, z)?
    };
    Ok(assemble(&raw, n_max, z))
}

/// Leading terms of the ascending series; exact to rounding for `|z| < 1e-5`.
fn small_argument_series(top: usize, z: Complex64) -> Vec<Raw> {
    let a = z.norm();
    let unit = z / a;
    let z2 = z * z;
    let mut log_dfact = 0.0; // ln (2k+1)!!
    (0..=top)
        .map(|k| {
            if k > 0 {
                log_dfact += ((2 * k + 1) as f64).ln();
            }
            let kf = k as f64;
            let bracket = 1.0 - z2 / (2.0 * (2.0 * kf + 3.0))
                + z2 * z2 / (8.0 * (2.0 * kf + 3.0) * (2.0 * kf + 5.0));
            (unit.powu(k as u32) * bracket, kf * a.ln() - log_dfact)
        })
        .collect()
}

fn miller_downward(top: usize, z: Complex64) -> Result<Vec<Raw>> {
    let a = z.norm();
    let reach = (top as f64).max(a.ceil());
    let start = (reach + 16.0 + (40.0 * reach).sqrt().ceil()) as usize;

    let zero = Complex64::new(0.0, 0.0);
    let mut raw: Vec<Raw> = vec![(zero, 0.0); top + 1];
    let mut above = zero;
    let mut cur = Complex64::new(1.0, 0.0);
    let mut s = 0.0;
    for k in (1..=start).rev() {
        if k <= top {
            raw[k] = (cur, s);
        }
        let mut below = (2 * k + 1) as f64 / z * cur - above;
        let m = below.norm();
        if m > RESCALE_LIMIT {
            below /= m;
            cur /= m;
            s += m.ln();
        }
        if !below.is_finite() {
            return Err(Error::Overflow { n: k - 1, z });
        }
        above = cur;
        cur = below;
    }
    raw[0] = (cur, s);

    // Normalize against whichever closed form is larger to stay clear of zeros.
    let t = z.im.abs();
    let i = Complex64::new(0.0, 1.0);
    let ep = (i * z).exp() * (-t).exp();
    let em = (-i * z).exp() * (-t).exp();
    let sin_hat = (ep - em) / (2.0 * i);
    let cos_hat = (ep + em) / 2.0;
    let j0 = sin_hat / z;
    let j1 = sin_hat / (z * z) - cos_hat / z;
    let (anchor, k_anchor) = if j0.norm() >= j1.norm() { (j0, 0) } else { (j1, 1) };
    let ratio = anchor / raw[k_anchor].0;
    let shift = t - raw[k_anchor].1;
    if !ratio.is_finite() {
        return Err(Error::Overflow { n: k_anchor, z });
    }
    Ok(raw
        .into_iter()
        .map(|(v, sk)| (v * ratio, sk + shift))
        .collect())
}
