//! Dyadic Green's function of the sphere as a vector-wave-function series.
//!
//! Every term pairs like with like, `M(x) M(x0)` and `N(x) N(x0)`, with the
//! per-order normalization
//!
//! ```text
//! (i k_s / 4 pi) (2 - delta_m0) (2n + 1) / (n (n + 1)) (n - m)! / (n + m)!
//! ```
//!
//! where `k_s` is the source-region wavenumber. Summing both parities of one
//! `m` collapses the azimuthal dependence onto `cos m(phi - phi0)` and
//! `sin m(phi - phi0)`, so a term of order `n` costs one pass over `m`.
//!
//! The direct part uses `h_n^(1)` at the larger radius and `j_n` at the
//! smaller; the scattered part weights each channel by the reflection or
//! transmission coefficient of the placement case.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::coords::{CVec3, SphericalPoint};
use crate::error::{Error, Result};
use crate::scattering::{CoeffTable, CHANNEL_M, CHANNEL_N};
use crate::scenario::{PlacementCase, Region, SphereScenario};
use crate::specfun::{LegendreTable, RadialKind, RadialTable, DEFAULT_MAX_ORDER, ORDER_CEILING};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Evaluation points closer than this fraction of `d` to the interface are
/// rejected.
pub const NEAR_INTERFACE: f64 = 1e-6;

/// Consecutive small terms required before a series counts as converged.
const CAUCHY_RUN: usize = 3;

/// 3x3 map from the spherical basis at the source to the spherical basis at
/// the field point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dyadic {
    pub entries: [[Complex64; 3]; 3],
}

impl Default for Dyadic {
    fn default() -> Self {
        Dyadic::zero()
    }
}

impl Dyadic {
    pub fn zero() -> Self {
        Dyadic {
            entries: [[ZERO; 3]; 3],
        }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Dyadic::zero();
        for i in 0..3 {
            for j in 0..3 {
                t.entries[i][j] = self.entries[j][i];
            }
        }
        t
    }

    pub fn apply(&self, v: &CVec3) -> CVec3 {
        let mut out = [ZERO; 3];
        for (o, row) in out.iter_mut().zip(self.entries.iter()) {
            *o = row[0] * v[0] + row[1] * v[1] + row[2] * v[2];
        }
        out
    }

    pub fn add(&self, other: &Dyadic) -> Dyadic {
        let mut s = *self;
        for (a, b) in s.entries.iter_mut().flatten().zip(other.entries.iter().flatten()) {
            *a += b;
        }
        s
    }

    pub fn sub(&self, other: &Dyadic) -> Dyadic {
        let mut s = *self;
        for (a, b) in s.entries.iter_mut().flatten().zip(other.entries.iter().flatten()) {
            *a -= b;
        }
        s
    }

    pub fn scale(&self, f: Complex64) -> Dyadic {
        let mut s = *self;
        s.entries.iter_mut().flatten().for_each(|a| *a *= f);
        s
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.entries.iter().flatten().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().flatten().map(|a| a.norm()).fold(0.0, f64::max)
    }

    /// `|self - reference| / |reference|` in the Frobenius norm.
    pub fn rel_diff(&self, reference: &Dyadic) -> f64 {
        let r = reference.norm();
        let e = self.sub(reference).norm();
        if r == 0.0 {
            if e == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            e / r
        }
    }

    pub fn is_finite(&self) -> bool {
        self.entries.iter().flatten().all(|a| a.is_finite())
    }
}

/// Truncation of the mode series: orders `n <= max_order`, azimuthal
/// indices `m <= min(n, max_azimuthal)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TruncationSpec {
    pub max_order: usize,
    pub max_azimuthal: usize,
    pub rel_tol: f64,
    /// Sum every order up to `max_order` instead of stopping once the
    /// Cauchy test passes.
    pub fixed: bool,
}

impl Default for TruncationSpec {
    fn default() -> Self {
        TruncationSpec {
            max_order: DEFAULT_MAX_ORDER,
            max_azimuthal: DEFAULT_MAX_ORDER,
            rel_tol: 1e-8,
            fixed: false,
        }
    }
}

impl TruncationSpec {
    pub fn with_max_order(q: usize) -> Self {
        TruncationSpec {
            max_order: q,
            max_azimuthal: q,
            ..Default::default()
        }
    }

    /// Every order and azimuthal index up to `q`, no early exit.
    pub fn fixed(q: usize) -> Self {
        TruncationSpec {
            fixed: true,
            ..TruncationSpec::with_max_order(q)
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_order == 0 || self.max_order > ORDER_CEILING {
            return Err(Error::invalid(
                "truncation.max_order",
                format!("{} outside 1..={ORDER_CEILING}", self.max_order),
            ));
        }
        if self.max_azimuthal > self.max_order {
            return Err(Error::invalid(
                "truncation.max_azimuthal",
                format!("{} exceeds max_order {}", self.max_azimuthal, self.max_order),
            ));
        }
        if !(self.rel_tol.is_finite() && self.rel_tol > 0.0) {
            return Err(Error::invalid("truncation.rel_tol", "must be > 0"));
        }
        Ok(())
    }
}

/// `ceil(x + 4 x^(1/3) + 2)`, the order at which the Cauchy test starts.
pub fn starting_order(x: f64) -> usize {
    (x + 4.0 * x.cbrt() + 2.0).ceil() as usize
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesResult {
    pub dyadic: Dyadic,
    /// Highest order summed.
    pub orders_used: usize,
    /// Relative size of the last term.
    pub residual: f64,
}

impl SeriesResult {
    fn combine(a: SeriesResult, b: SeriesResult) -> SeriesResult {
        SeriesResult {
            dyadic: a.dyadic.add(&b.dyadic),
            orders_used: a.orders_used.max(b.orders_used),
            residual: a.residual.max(b.residual),
        }
    }
}

/// Radial factors `(z, zeta'/rho, n(n+1) z/rho)` for orders `1..=q`, all
/// sharing `exp(scale[n])`.
struct RadialSide {
    z: Vec<Complex64>,
    t: Vec<Complex64>,
    q: Vec<Complex64>,
    scale: Vec<f64>,
}

impl RadialSide {
    fn new(kind: RadialKind, k: Complex64, r: f64, q_max: usize) -> Result<Self> {
        if r <= 0.0 {
            return Err(Error::Domain("the series is not evaluated at the origin".into()));
        }
        let rho = k * r;
        let table = RadialTable::new(kind, q_max, rho)?;
        let mut side = RadialSide {
            z: Vec::with_capacity(q_max + 1),
            t: Vec::with_capacity(q_max + 1),
            q: Vec::with_capacity(q_max + 1),
            scale: Vec::with_capacity(q_max + 1),
        };
        for (n, e) in table.entries().iter().enumerate() {
            side.z.push(e.value);
            side.t.push(e.riccati_derivative / rho);
            side.q.push((n * (n + 1)) as f64 * e.value / rho);
            side.scale.push(e.log_scale);
        }
        Ok(side)
    }
}

/// Channel weights of one order: `[N, M]` values and log-scales.
type ChannelWeights = ([Complex64; 2], [f64; 2]);

struct SeriesInput<'a> {
    x: &'a SphericalPoint,
    x0: &'a SphericalPoint,
    at_x: (RadialKind, Complex64),
    at_x0: (RadialKind, Complex64),
    k_source: Complex64,
    /// Argument of the starting-order estimate.
    size_parameter: f64,
    weights: &'a dyn Fn(usize) -> ChannelWeights,
}

fn mode_series(input: &SeriesInput, trunc: &TruncationSpec) -> Result<SeriesResult> {
    trunc.validate()?;
    let q_max = trunc.max_order;
    let l_max = trunc.max_azimuthal;
    let (x, x0) = (input.x, input.x0);
    let side = RadialSide::new(input.at_x.0, input.at_x.1, x.r, q_max)?;
    let side0 = RadialSide::new(input.at_x0.0, input.at_x0.1, x0.r, q_max)?;
    let leg = LegendreTable::normalized(q_max, x.theta)?;
    let leg0 = LegendreTable::normalized(q_max, x0.theta)?;

    let delta = x.phi - x0.phi;
    let trig: Vec<(f64, f64)> = (0..=l_max).map(|m| (m as f64 * delta).sin_cos()).collect();

    let start = starting_order(input.size_parameter).min(q_max);
    let base = Complex64::new(0.0, 1.0) * input.k_source / (4.0 * PI);
    let mut sum = Dyadic::zero();
    let mut run = 0usize;
    let mut residual = f64::INFINITY;

    for n in 1..=q_max {
        let (w, ws) = (input.weights)(n);
        let nf = n as f64;
        let pref = base * ((2.0 * nf + 1.0) / (nf * (nf + 1.0)));
        let common = side.scale[n] + side0.scale[n];
        let alpha_n = pref * w[CHANNEL_N] * (common + ws[CHANNEL_N]).exp();
        let alpha_m = pref * w[CHANNEL_M] * (common + ws[CHANNEL_M]).exp();

        let term = if alpha_n == ZERO && alpha_m == ZERO {
            Dyadic::zero()
        } else {
            let a = angular_sums(&leg, &leg0, n, l_max.min(n), &trig);
            let (z, t, q) = (side.z[n], side.t[n], side.q[n]);
            let (z0, t0, q0) = (side0.z[n], side0.t[n], side0.q[n]);
            let (mm, nn) = (alpha_m * z * z0, alpha_n * t * t0);
            let nq = alpha_n * q;
            let nt = alpha_n * t;
            Dyadic {
                entries: [
                    [nq * q0 * a.pp, nq * t0 * a.pd, nq * t0 * a.pq],
                    [nt * q0 * a.dp, mm * a.qq + nn * a.dd, mm * a.qd + nn * a.dq],
                    [-nt * q0 * a.qp, -mm * a.dq - nn * a.qd, mm * a.dd + nn * a.qq],
                ],
            }
        };
        if !term.is_finite() {
            return Err(Error::Overflow {
                n,
                z: input.at_x.1 * x.r,
            });
        }
        sum = sum.add(&term);
        let (tn, sn) = (term.norm(), sum.norm());
        residual = if tn == 0.0 { 0.0 } else { tn / sn };
        if trunc.fixed {
            continue;
        }
        if n >= start {
            run = if residual <= trunc.rel_tol { run + 1 } else { 0 };
            if run >= CAUCHY_RUN {
                return Ok(SeriesResult {
                    dyadic: sum,
                    orders_used: n,
                    residual,
                });
            }
        }
    }
    if trunc.fixed {
        Ok(SeriesResult {
            dyadic: sum,
            orders_used: q_max,
            residual,
        })
    } else {
        Err(Error::NonConvergence {
            order: q_max,
            achieved: residual,
            tolerance: trunc.rel_tol,
        })
    }
}

/// Azimuthal sums of one order. The first letter refers to the field point,
/// the second to the source: `p` = normalized `P`, `d` = its theta-derivative,
/// `q` = `m P / sin theta`.
#[derive(Default)]
struct AngularSums {
    pp: f64,
    pd: f64,
    dp: f64,
    dd: f64,
    qq: f64,
    pq: f64,
    qp: f64,
    dq: f64,
    qd: f64,
}

#[inline]
fn angular_sums(
    leg: &LegendreTable,
    leg0: &LegendreTable,
    n: usize,
    m_max: usize,
    trig: &[(f64, f64)],
) -> AngularSums {
    let (p, d, q) = leg.row(n);
    let (p0, d0, q0) = leg0.row(n);
    let mut a = AngularSums::default();
    for m in 0..=m_max {
        let (s, c) = trig[m];
        let w = if m == 0 { 1.0 } else { 2.0 };
        let (wc, ws) = (w * c, w * s);
        a.pp += wc * p[m] * p0[m];
        a.pd += wc * p[m] * d0[m];
        a.dp += wc * d[m] * p0[m];
        a.dd += wc * d[m] * d0[m];
        a.qq += wc * q[m] * q0[m];
        a.pq += ws * p[m] * q0[m];
        a.qp += ws * q[m] * p0[m];
        a.dq += ws * d[m] * q0[m];
        a.qd += ws * q[m] * d0[m];
    }
    a
}

fn unit_weights(_: usize) -> ChannelWeights {
    ([Complex64::new(1.0, 0.0); 2], [0.0; 2])
}

fn check_distinct(x: &SphericalPoint, x0: &SphericalPoint) -> Result<()> {
    let scale = x.r.max(x0.r).max(f64::MIN_POSITIVE);
    if x.distance(x0) <= 1e-12 * scale {
        return Err(Error::Coincident);
    }
    Ok(())
}

/// Direct (free-space) series in a homogeneous medium of wavenumber `k`.
pub fn direct_series(
    k: Complex64,
    x: &SphericalPoint,
    x0: &SphericalPoint,
    trunc: &TruncationSpec,
) -> Result<SeriesResult> {
    check_distinct(x, x0)?;
    let (at_x, at_x0) = if x.r >= x0.r {
        (RadialKind::Hankel1, RadialKind::BesselJ)
    } else {
        (RadialKind::BesselJ, RadialKind::Hankel1)
    };
    mode_series(
        &SeriesInput {
            x,
            x0,
            at_x: (at_x, k),
            at_x0: (at_x0, k),
            k_source: k,
            size_parameter: k.norm() * x.r.max(x0.r),
            weights: &unit_weights,
        },
        trunc,
    )
}

/// Direct dyadic `(I + grad grad / k^2) exp(ikR) / (4 pi R)` as a series;
/// the delta term at `x = x0` is not represented.
pub fn direct_dgf(
    k: Complex64,
    x: &SphericalPoint,
    x0: &SphericalPoint,
    trunc: &TruncationSpec,
) -> Result<Dyadic> {
    Ok(direct_series(k, x, x0, trunc)?.dyadic)
}

/// Scenario plus its coefficient table, built once and shared read-only.
#[derive(Debug, Clone)]
pub struct SphereModel {
    scenario: SphereScenario,
    coeffs: CoeffTable,
}

impl SphereModel {
    pub fn new(scenario: &SphereScenario, max_order: usize) -> Result<Self> {
        Ok(SphereModel {
            scenario: scenario.clone(),
            coeffs: CoeffTable::new(scenario, max_order)?,
        })
    }

    pub fn for_truncation(scenario: &SphereScenario, trunc: &TruncationSpec) -> Result<Self> {
        trunc.validate()?;
        SphereModel::new(scenario, trunc.max_order)
    }

    pub fn scenario(&self) -> &SphereScenario {
        &self.scenario
    }

    pub fn coefficients(&self) -> &CoeffTable {
        &self.coeffs
    }

    pub fn coefficients_mut(&mut self) -> &mut CoeffTable {
        &mut self.coeffs
    }

    fn check_order(&self, trunc: &TruncationSpec) -> Result<()> {
        trunc.validate()?;
        if trunc.max_order > self.coeffs.max_order() {
            return Err(Error::invalid(
                "truncation.max_order",
                format!(
                    "{} exceeds the {} orders of the coefficient table",
                    trunc.max_order,
                    self.coeffs.max_order()
                ),
            ));
        }
        Ok(())
    }

    fn check_point(&self, p: &SphericalPoint) -> Result<Region> {
        let d = self.scenario.radius_d;
        if (p.r - d).abs() < NEAR_INTERFACE * d {
            return Err(Error::Interface { r: p.r, d });
        }
        self.scenario.region(p.r)
    }

    /// Placement case of a source at `x0` and a receiver at `x`, rejecting
    /// points within `NEAR_INTERFACE * d` of the interface.
    pub fn classify(&self, x: &SphericalPoint, x0: &SphericalPoint) -> Result<PlacementCase> {
        let receiver = self.check_point(x)?;
        let source = self.check_point(x0)?;
        Ok(PlacementCase::from_regions(source, receiver))
    }

    /// Scattered series for explicitly given regions, without any check of
    /// where the points lie. Interface checks evaluate the expansion of each
    /// region exactly on `r = d` through this.
    pub fn scattered_series(
        &self,
        source: Region,
        receiver: Region,
        x: &SphericalPoint,
        x0: &SphericalPoint,
        trunc: &TruncationSpec,
    ) -> Result<SeriesResult> {
        self.check_order(trunc)?;
        let k_src = self.scenario.wavenumber(source);
        let k_rcv = self.scenario.wavenumber(receiver);
        // Receiver side: outgoing outside, standing inside. Source side: the
        // function regular where the interface is seen from the source.
        let kind = |r: Region| match r {
            Region::Inside => RadialKind::BesselJ,
            Region::Outside => RadialKind::Hankel1,
        };
        let coeffs = &self.coeffs;
        let weights = move |n: usize| {
            let w = coeffs.get(n).weight(source, receiver);
            ([w.entries[0][0], w.entries[1][1]], w.log_scale)
        };
        let size = self.scenario.k_body().norm().max(self.scenario.k_exterior().norm())
            * self.scenario.radius_d;
        mode_series(
            &SeriesInput {
                x,
                x0,
                at_x: (kind(receiver), k_rcv),
                at_x0: (kind(source), k_src),
                k_source: k_src,
                size_parameter: size,
                weights: &weights,
            },
            trunc,
        )
    }

    /// Complete field dyadic of the given regions: direct plus scattered when
    /// both share a region, transmitted alone otherwise. No interface checks.
    pub fn region_dyadic(
        &self,
        source: Region,
        receiver: Region,
        x: &SphericalPoint,
        x0: &SphericalPoint,
        trunc: &TruncationSpec,
    ) -> Result<SeriesResult> {
        let scattered = self.scattered_series(source, receiver, x, x0, trunc)?;
        if source != receiver {
            return Ok(scattered);
        }
        let direct = direct_series(self.scenario.wavenumber(source), x, x0, trunc)?;
        Ok(SeriesResult::combine(direct, scattered))
    }

    pub fn direct(
        &self,
        x: &SphericalPoint,
        x0: &SphericalPoint,
        trunc: &TruncationSpec,
    ) -> Result<SeriesResult> {
        let case = self.classify(x, x0)?;
        if !case.same_region() {
            return Err(Error::invalid(
                "placement",
                format!("{case:?} has no direct term: points lie in different media"),
            ));
        }
        direct_series(self.scenario.wavenumber(case.source_region()), x, x0, trunc)
    }

    pub fn scattered(
        &self,
        x: &SphericalPoint,
        x0: &SphericalPoint,
        trunc: &TruncationSpec,
    ) -> Result<SeriesResult> {
        let case = self.classify(x, x0)?;
        self.scattered_series(case.source_region(), case.receiver_region(), x, x0, trunc)
    }

    pub fn total(
        &self,
        x: &SphericalPoint,
        x0: &SphericalPoint,
        trunc: &TruncationSpec,
    ) -> Result<SeriesResult> {
        let case = self.classify(x, x0)?;
        check_distinct(x, x0)?;
        self.region_dyadic(case.source_region(), case.receiver_region(), x, x0, trunc)
    }
}

/// Scattered dyadic for an explicitly stated placement case.
pub fn scattered_dgf(
    scenario: &SphereScenario,
    case: PlacementCase,
    x: &SphericalPoint,
    x0: &SphericalPoint,
    trunc: &TruncationSpec,
) -> Result<Dyadic> {
    let model = SphereModel::for_truncation(scenario, trunc)?;
    let actual = model.classify(x, x0)?;
    if actual != case {
        return Err(Error::invalid(
            "placement",
            format!("points are in {actual:?}, not {case:?}"),
        ));
    }
    Ok(model.scattered(x, x0, trunc)?.dyadic)
}

pub fn total_dgf(
    scenario: &SphereScenario,
    x: &SphericalPoint,
    x0: &SphericalPoint,
    trunc: &TruncationSpec,
) -> Result<Dyadic> {
    let model = SphereModel::for_truncation(scenario, trunc)?;
    Ok(model.total(x, x0, trunc)?.dyadic)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coords::{cartesian_to_spherical, spherical_to_cartesian};

    fn pt(r: f64, t: f64, p: f64) -> SphericalPoint {
        SphericalPoint::new(r, t, p).unwrap()
    }

    /// Closed-form free-space dyadic in Cartesian components.
    fn closed_form(k: Complex64, x: &SphericalPoint, x0: &SphericalPoint) -> Dyadic {
        let (a, b) = (x.to_cartesian(), x0.to_cartesian());
        let rv = [a[0] - b[0], a[1] - b[1], a[2] - b[2]];
        let r = (rv[0] * rv[0] + rv[1] * rv[1] + rv[2] * rv[2]).sqrt();
        let kr = k * r;
        let i = Complex64::new(0.0, 1.0);
        let g = (i * kr).exp() / (4.0 * PI * r);
        let c1 = 1.0 + i / kr - 1.0 / (kr * kr);
        let c2 = 3.0 / (kr * kr) - 3.0 * i / kr - 1.0;
        let mut out = Dyadic::zero();
        for p in 0..3 {
            for q in 0..3 {
                let delta = if p == q { 1.0 } else { 0.0 };
                out.entries[p][q] = g * (c1 * delta + c2 * rv[p] * rv[q] / (r * r));
            }
        }
        out
    }

    fn to_spherical(g: &Dyadic, x: &SphericalPoint, x0: &SphericalPoint) -> Dyadic {
        // G_sph = A(x) G A(x0)^T, columns mapped one at a time.
        let mut out = Dyadic::zero();
        for j in 0..3 {
            let mut e = [ZERO; 3];
            e[j] = Complex64::new(1.0, 0.0);
            let src = spherical_to_cartesian(x0, &e);
            let col = cartesian_to_spherical(x, &g.apply(&src));
            for i in 0..3 {
                out.entries[i][j] = col[i];
            }
        }
        out
    }

    #[test]
    fn direct_series_matches_closed_form() {
        let k = Complex64::new(20.0, 0.0);
        let pairs = [
            (pt(0.3, 0.7, 0.2), pt(0.1, 1.9, 2.5)),
            (pt(0.05, 2.0, 5.0), pt(0.2, 0.4, 1.0)),
            (pt(0.4, 0.0, 0.0), pt(0.2, PI, 0.0)),
        ];
        for (x, x0) in pairs {
            let series = direct_dgf(k, &x, &x0, &TruncationSpec::default()).unwrap();
            let exact = to_spherical(&closed_form(k, &x, &x0), &x, &x0);
            assert!(series.rel_diff(&exact) < 1e-8, "{}", series.rel_diff(&exact));
        }
    }

    #[test]
    fn lossy_direct_series_matches_closed_form() {
        let k = Complex64::new(30.0, 4.0);
        let (x, x0) = (pt(0.25, 1.2, 0.3), pt(0.12, 0.9, 4.0));
        let series = direct_dgf(k, &x, &x0, &TruncationSpec::default()).unwrap();
        let exact = to_spherical(&closed_form(k, &x, &x0), &x, &x0);
        assert!(series.rel_diff(&exact) < 1e-8);
    }

    #[test]
    fn coincident_points_rejected() {
        let x = pt(0.2, 1.0, 1.0);
        let k = Complex64::new(5.0, 0.0);
        assert_eq!(direct_dgf(k, &x, &x, &TruncationSpec::default()), Err(Error::Coincident));
    }

    #[test]
    fn slow_series_reports_non_convergence() {
        let k = Complex64::new(20.0, 0.0);
        let (x, x0) = (pt(0.18, PI / 6.0, 0.0), pt(0.16, PI / 2.0, 0.0));
        let err = direct_dgf(k, &x, &x0, &TruncationSpec::with_max_order(30)).unwrap_err();
        assert!(matches!(err, Error::NonConvergence { order: 30, .. }), "{err}");
        let fixed = direct_series(k, &x, &x0, &TruncationSpec::fixed(30)).unwrap();
        assert_eq!(fixed.orders_used, 30);
    }

    #[test]
    fn truncation_validation() {
        assert!(TruncationSpec { max_azimuthal: 5, ..TruncationSpec::with_max_order(4) }
            .validate()
            .is_err());
        assert!(TruncationSpec::with_max_order(0).validate().is_err());
        assert!(TruncationSpec::with_max_order(ORDER_CEILING + 1).validate().is_err());
        assert!(TruncationSpec { rel_tol: 0.0, ..Default::default() }.validate().is_err());
        assert_eq!(starting_order(16.9), 30);
    }

    #[test]
    fn near_interface_rejected() {
        let s = SphereScenario::reference();
        let model = SphereModel::new(&s, 120).unwrap();
        let x = pt(0.15 * (1.0 + 1e-7), 1.0, 0.0);
        let x0 = pt(0.16, PI / 2.0, 0.0);
        let err = model.total(&x, &x0, &TruncationSpec::default()).unwrap_err();
        assert!(matches!(err, Error::Interface { .. }));
    }

    #[test]
    fn scattered_dgf_checks_case() {
        let s = SphereScenario::reference();
        let (x, x0) = (pt(0.18, 1.0, 0.5), pt(0.16, PI / 2.0, 0.0));
        let t = TruncationSpec::default();
        assert!(scattered_dgf(&s, PlacementCase::Case22, &x, &x0, &t).is_ok());
        assert!(scattered_dgf(&s, PlacementCase::Case11, &x, &x0, &t).is_err());
    }

    #[test]
    fn matched_media_total_is_free_space() {
        let s = SphereScenario::reference().matched();
        let k = s.k_exterior();
        let (x, x0) = (pt(0.3, 0.8, 1.0), pt(0.1, 2.0, 3.0));
        let total = total_dgf(&s, &x, &x0, &TruncationSpec::default()).unwrap();
        let exact = to_spherical(&closed_form(k, &x, &x0), &x, &x0);
        assert!(total.rel_diff(&exact) < 1e-8);
    }

    #[test]
    fn dyadic_helpers() {
        let mut a = Dyadic::zero();
        a.entries[0][1] = Complex64::new(1.0, 2.0);
        assert_eq!(a.transpose().entries[1][0], Complex64::new(1.0, 2.0));
        assert_eq!(a.rel_diff(&a), 0.0);
        assert_eq!(a.rel_diff(&Dyadic::zero()), f64::INFINITY);
        let v = a.apply(&[ZERO, Complex64::new(2.0, 0.0), ZERO]);
        assert_eq!(v[0], Complex64::new(2.0, 4.0));
    }
}
