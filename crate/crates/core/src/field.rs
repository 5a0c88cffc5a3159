//! Electric field of a point dipole, `E = i omega mu_s G(x, x0) p`, where
//! `mu_s` is the permeability of the source region.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::coords::{cnorm, CVec3, SphericalPoint};
use crate::error::Result;
use crate::greens::{Dyadic, SphereModel, TruncationSpec};
use crate::scenario::{DipoleSource, SphereScenario};

/// Magnitudes at or below zero map to this level.
pub const DB_FLOOR: f64 = -300.0;

/// `20 log10 |x|` relative to 1 V/m, floored at [`DB_FLOOR`].
pub fn to_db(magnitude: f64) -> f64 {
    if magnitude > 0.0 {
        (20.0 * magnitude.log10()).max(DB_FLOOR)
    } else {
        DB_FLOOR
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldSelector {
    /// Reflected/transmitted field only.
    Scattered,
    /// Direct plus scattered (same-region cases) or transmitted.
    Total,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldSample {
    pub position: SphericalPoint,
    /// `(E_r, E_theta, E_phi)` in V/m.
    pub e: CVec3,
    pub mag_total_db: f64,
    pub mag_phi_db: f64,
}

impl FieldSample {
    pub fn new(position: SphericalPoint, e: CVec3) -> Self {
        FieldSample {
            position,
            e,
            mag_total_db: to_db(cnorm(&e)),
            mag_phi_db: to_db(e[2].norm()),
        }
    }
}

/// `i omega mu_s G p`.
pub fn apply_dipole(
    scenario: &SphereScenario,
    source: &DipoleSource,
    g: &Dyadic,
) -> Result<CVec3> {
    let mu = scenario.medium(source.region(scenario)?).permeability;
    let f = Complex64::new(0.0, scenario.omega() * mu);
    Ok(g.apply(&source.moment).map(|c| c * f))
}

pub fn field_with(
    model: &SphereModel,
    selector: FieldSelector,
    source: &DipoleSource,
    x: &SphericalPoint,
    trunc: &TruncationSpec,
) -> Result<FieldSample> {
    let g = match selector {
        FieldSelector::Scattered => model.scattered(x, &source.position, trunc)?,
        FieldSelector::Total => model.total(x, &source.position, trunc)?,
    };
    let e = apply_dipole(model.scenario(), source, &g.dyadic)?;
    Ok(FieldSample::new(*x, e))
}

pub fn efield(
    scenario: &SphereScenario,
    source: &DipoleSource,
    x: &SphericalPoint,
    trunc: &TruncationSpec,
) -> Result<FieldSample> {
    let model = SphereModel::for_truncation(scenario, trunc)?;
    field_with(&model, FieldSelector::Total, source, x, trunc)
}

/// The reflected/transmitted part only.
pub fn scattered_efield(
    scenario: &SphereScenario,
    source: &DipoleSource,
    x: &SphericalPoint,
    trunc: &TruncationSpec,
) -> Result<FieldSample> {
    let model = SphereModel::for_truncation(scenario, trunc)?;
    field_with(&model, FieldSelector::Scattered, source, x, trunc)
}
