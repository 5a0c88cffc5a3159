//! Per-order reflection and transmission coefficients of the sphere.
//!
//! Each order `n` carries two decoupled channels, indexed `[N (TM), M (TE)]`.
//! For a channel the tangential traces at `r = d` of a mode with radial
//! function `b_n` are
//!
//! ```text
//!            N channel                     M channel
//! E row      zeta'(kd) / kd                b_n(kd)
//! H row      (k / i omega mu) b_n(kd)      (k / i omega mu) zeta'(kd) / kd
//! ```
//!
//! where `zeta' = d/dz [z b_n(z)]`. Continuity of both rows with the incident
//! wave gives a 2x2 system per channel and per source side. Everything is
//! carried with a logarithmic scale because `j_n` and `h_n` leave the `f64`
//! range long before the series does.

use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::scenario::{Medium, Region, SphereScenario};
use crate::specfun::{RadialKind, RadialTable, ScaledRadial, ORDER_CEILING};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Channel order used by every 2x2 matrix.
pub const CHANNEL_N: usize = 0;
pub const CHANNEL_M: usize = 1;

/// A 2x2 matrix whose true value is `entries * exp(log_scale)`.
///
/// Interface trace matrices have rows `[E, H]` and columns `[N, M]`;
/// reflection and transmission matrices are diagonal in `[N, M]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryMatrix {
    pub entries: [[Complex64; 2]; 2],
    pub log_scale: [f64; 2],
}

impl BoundaryMatrix {
    pub fn zero() -> Self {
        BoundaryMatrix {
            entries: [[ZERO; 2]; 2],
            log_scale: [0.0; 2],
        }
    }

    pub fn identity() -> Self {
        BoundaryMatrix {
            entries: [[ONE, ZERO], [ZERO, ONE]],
            log_scale: [0.0; 2],
        }
    }

    pub fn diagonal(values: [Complex64; 2], log_scale: [f64; 2]) -> Self {
        BoundaryMatrix {
            entries: [[values[0], ZERO], [ZERO, values[1]]],
            log_scale,
        }
    }

    /// Column `c` scaled so its true value is `column * exp(log_scale[c])`.
    pub fn column(&self, c: usize) -> [Complex64; 2] {
        [self.entries[0][c], self.entries[1][c]]
    }

    /// Entry `(i, j)` with the column scale applied. May overflow to
    /// infinity at high orders; exact zeros stay zero.
    pub fn value(&self, i: usize, j: usize) -> Complex64 {
        let e = self.entries[i][j];
        if e == ZERO {
            ZERO
        } else {
            e * self.log_scale[j].exp()
        }
    }

    /// `(ln |a_cc|, arg a_cc)` of a diagonal entry without overflow.
    pub fn log_polar(&self, c: usize) -> (f64, f64) {
        let e = self.entries[c][c];
        (e.norm().ln() + self.log_scale[c], e.arg())
    }

    pub fn values(&self) -> [[Complex64; 2]; 2] {
        let mut out = [[ZERO; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = self.value(i, j);
            }
        }
        out
    }
}

/// Reflection and transmission matrices of one order. The first digit of
/// each label is the receiver region and the second the source region
/// (1 = body, 2 = exterior).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoeffSet {
    pub n: usize,
    /// Source inside, wave reflected back inside.
    pub r12: BoundaryMatrix,
    /// Source outside, wave reflected back outside.
    pub r21: BoundaryMatrix,
    /// Source inside, wave transmitted outside.
    pub t12: BoundaryMatrix,
    /// Source outside, wave transmitted inside.
    pub t21: BoundaryMatrix,
}

impl CoeffSet {
    /// The matrix weighting the scattered series for a source region and a
    /// receiver region.
    pub fn weight(&self, source: Region, receiver: Region) -> &BoundaryMatrix {
        match (source, receiver) {
            (Region::Inside, Region::Inside) => &self.r12,
            (Region::Inside, Region::Outside) => &self.t12,
            (Region::Outside, Region::Outside) => &self.r21,
            (Region::Outside, Region::Inside) => &self.t21,
        }
    }
}

fn trace_matrix(entry: &ScaledRadial, n: usize, rho: Complex64, c_h: Complex64) -> Result<BoundaryMatrix> {
    if rho == ZERO {
        return Err(Error::Domain("interface trace needs k d != 0".into()));
    }
    let t = entry.riccati_derivative / rho;
    let b = entry.value;
    let m = BoundaryMatrix {
        entries: [[t, b], [c_h * b, c_h * t]],
        log_scale: [entry.log_scale; 2],
    };
    if m.entries.iter().flatten().any(|v| !v.is_finite()) {
        return Err(Error::Overflow { n, z: rho });
    }
    Ok(m)
}

/// `k / (i omega mu)`, the factor turning `curl E` into `H`.
fn h_factor(medium: &Medium, omega: f64, k: Complex64) -> Complex64 {
    k / Complex64::new(0.0, omega * medium.permeability)
}

/// Tangential `[E, H]` traces at `r = d` of the `[N, M]` modes of one radial
/// kind in one medium.
pub fn bessel_interface_matrix(
    kind: RadialKind,
    medium: &Medium,
    omega: f64,
    n: usize,
    k: Complex64,
    d: f64,
) -> Result<BoundaryMatrix> {
    if !(d.is_finite() && d > 0.0) {
        return Err(Error::invalid("d", format!("{d} must be > 0")));
    }
    if n == 0 {
        return Err(Error::Domain("interface matrices start at n = 1".into()));
    }
    let rho = k * d;
    let table = RadialTable::new(kind, n, rho)?;
    trace_matrix(table.get(n), n, rho, h_factor(medium, omega, k))
}

#[inline]
fn det2(a: [Complex64; 2], b: [Complex64; 2]) -> Complex64 {
    a[0] * b[1] - a[1] * b[0]
}

/// Solves `a x1 + b x2 = rhs` by Cramer's rule, tracking the scales of the
/// three columns.
fn solve_channel(
    n: usize,
    (a, sa): ([Complex64; 2], f64),
    (b, sb): ([Complex64; 2], f64),
    (rhs, sr): ([Complex64; 2], f64),
) -> Result<((Complex64, f64), (Complex64, f64))> {
    let det = det2(a, b);
    let size = (a[0].norm() + a[1].norm()) * (b[0].norm() + b[1].norm());
    if !det.is_finite() || det.norm() <= f64::EPSILON * size {
        return Err(Error::SingularSystem {
            n,
            det: det.norm() * (sa + sb).exp(),
        });
    }
    let x1 = det2(rhs, b) / det;
    let x2 = det2(a, rhs) / det;
    Ok(((x1, sr - sa), (x2, sr - sb)))
}

fn neg(v: [Complex64; 2]) -> [Complex64; 2] {
    [-v[0], -v[1]]
}

struct Traces {
    j_body: BoundaryMatrix,
    h_body: BoundaryMatrix,
    j_ext: BoundaryMatrix,
    h_ext: BoundaryMatrix,
}

fn coefficients_from_traces(n: usize, w: &Traces) -> Result<CoeffSet> {
    let mut r12 = [(ZERO, 0.0); 2];
    let mut t12 = [(ZERO, 0.0); 2];
    let mut r21 = [(ZERO, 0.0); 2];
    let mut t21 = [(ZERO, 0.0); 2];
    for c in [CHANNEL_N, CHANNEL_M] {
        let col = |m: &BoundaryMatrix| (m.column(c), m.log_scale[c]);
        let negcol = |m: &BoundaryMatrix| (neg(m.column(c)), m.log_scale[c]);
        // Inside source: h1 + R j1 = T h2.
        let (r, t) = solve_channel(n, col(&w.j_body), negcol(&w.h_ext), negcol(&w.h_body))?;
        r12[c] = r;
        t12[c] = t;
        // Outside source: j2 + R h2 = T j1.
        let (r, t) = solve_channel(n, col(&w.h_ext), negcol(&w.j_body), negcol(&w.j_ext))?;
        r21[c] = r;
        t21[c] = t;
    }
    let pack = |v: [(Complex64, f64); 2]| BoundaryMatrix::diagonal([v[0].0, v[1].0], [v[0].1, v[1].1]);
    Ok(CoeffSet {
        n,
        r12: pack(r12),
        r21: pack(r21),
        t12: pack(t12),
        t21: pack(t21),
    })
}

/// Coefficients of order `n` for a scenario.
pub fn coefficients(scenario: &SphereScenario, n: usize) -> Result<CoeffSet> {
    if n == 0 {
        return Err(Error::Domain("coefficients start at n = 1".into()));
    }
    let table = CoeffTable::new(scenario, n)?;
    Ok(*table.get(n))
}

/// Coefficients for `n = 1..=max_order`, built once and read-only after.
#[derive(Debug, Clone)]
pub struct CoeffTable {
    sets: Vec<CoeffSet>,
}

impl CoeffTable {
    pub fn new(scenario: &SphereScenario, max_order: usize) -> Result<Self> {
        scenario.validate()?;
        if max_order == 0 || max_order > ORDER_CEILING {
            return Err(Error::OrderLimit {
                n: max_order,
                max: ORDER_CEILING,
            });
        }
        let omega = scenario.omega();
        let d = scenario.radius_d;
        let (k1, k2) = (scenario.k_body(), scenario.k_exterior());
        let table = |kind, k: Complex64| RadialTable::new(kind, max_order, k * d);
        let (j1, h1) = (table(RadialKind::BesselJ, k1)?, table(RadialKind::Hankel1, k1)?);
        let (j2, h2) = (table(RadialKind::BesselJ, k2)?, table(RadialKind::Hankel1, k2)?);
        let c1 = h_factor(&scenario.body, omega, k1);
        let c2 = h_factor(&scenario.exterior, omega, k2);
        let sets = (1..=max_order)
            .map(|n| {
                let w = Traces {
                    j_body: trace_matrix(j1.get(n), n, k1 * d, c1)?,
                    h_body: trace_matrix(h1.get(n), n, k1 * d, c1)?,
                    j_ext: trace_matrix(j2.get(n), n, k2 * d, c2)?,
                    h_ext: trace_matrix(h2.get(n), n, k2 * d, c2)?,
                };
                coefficients_from_traces(n, &w)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CoeffTable { sets })
    }

    pub fn max_order(&self) -> usize {
        self.sets.len()
    }

    /// Order `n >= 1`.
    #[inline]
    pub fn get(&self, n: usize) -> &CoeffSet {
        &self.sets[n - 1]
    }

    pub fn sets(&self) -> &[CoeffSet] {
        &self.sets
    }

    /// Mutable access, for checks that perturb coefficients on purpose.
    pub fn sets_mut(&mut self) -> &mut [CoeffSet] {
        &mut self.sets
    }

    /// CSV with one row per `(n, channel)`. Magnitudes are given as
    /// `log10 |.|` since reflection coefficients overflow `f64` at high order.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "n,channel,log10_abs_r12,arg_r12,log10_abs_t12,arg_t12,log10_abs_r21,arg_r21,log10_abs_t21,arg_t21\n",
        );
        for s in &self.sets {
            for (c, name) in [(CHANNEL_N, "N"), (CHANNEL_M, "M")] {
                let _ = write!(out, "{},{}", s.n, name);
                for m in [&s.r12, &s.t12, &s.r21, &s.t21] {
                    let (ln_abs, arg) = m.log_polar(c);
                    let _ = write!(out, ",{:.16e},{:.16e}", ln_abs / std::f64::consts::LN_10, arg);
                }
                out.push('\n');
            }
        }
        out
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_csv()).map_err(|e| Error::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })
    }
}
