//! Media, sphere geometry, dipole sources and the inside/outside placement
//! cases.
//!
//! Time dependence is `exp(-i omega t)`. A conducting medium therefore has
//! complex permittivity `eps' + i sigma / omega` and a wavenumber in the
//! first quadrant, so outgoing waves `h_n^(1)(k r)` decay.

use std::f64::consts::{FRAC_PI_2, TAU};
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::coords::{CVec3, SphericalPoint};
use crate::error::{Error, Result};

/// Permittivity of the exterior (air) used in the reference scenario, F/m.
pub const REFERENCE_EPS_AIR: f64 = 8.8542e-12;
/// Permittivity of the body tissue used in the reference scenario, F/m.
pub const REFERENCE_EPS_BODY: f64 = 2.563e-10;
/// Permeability used for both media in the reference scenario, H/m.
pub const REFERENCE_MU: f64 = 1.256e-6;
pub const REFERENCE_RADIUS_M: f64 = 0.15;
pub const REFERENCE_FREQUENCY_HZ: f64 = 1e9;
pub const REFERENCE_SOURCE_R_M: f64 = 0.16;
pub const REFERENCE_RECEIVER_RANGE_M: f64 = 0.18;

/// Relative distance from `r = d` inside which a radius counts as on the
/// interface for classification.
pub const INTERFACE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Medium {
    pub name: String,
    /// Real part of the permittivity, F/m.
    pub permittivity: f64,
    /// S/m.
    pub conductivity: f64,
    /// H/m.
    pub permeability: f64,
}

impl Medium {
    pub fn new(
        name: impl Into<String>,
        permittivity: f64,
        conductivity: f64,
        permeability: f64,
    ) -> Result<Self> {
        let m = Medium {
            name: name.into(),
            permittivity,
            conductivity,
            permeability,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn lossless(name: impl Into<String>, permittivity: f64, permeability: f64) -> Result<Self> {
        Medium::new(name, permittivity, 0.0, permeability)
    }

    pub fn validate(&self) -> Result<()> {
        let field = |f: &str| format!("{}.{f}", self.name);
        if !(self.permittivity.is_finite() && self.permittivity > 0.0) {
            return Err(Error::invalid(field("eps"), format!("{} must be > 0", self.permittivity)));
        }
        if !(self.conductivity.is_finite() && self.conductivity >= 0.0) {
            return Err(Error::invalid(
                field("sigma"),
                format!("{} must be >= 0", self.conductivity),
            ));
        }
        if !(self.permeability.is_finite() && self.permeability > 0.0) {
            return Err(Error::invalid(field("mu"), format!("{} must be > 0", self.permeability)));
        }
        Ok(())
    }

    /// `eps' + i sigma / omega`.
    pub fn complex_permittivity(&self, omega: f64) -> Complex64 {
        Complex64::new(self.permittivity, self.conductivity / omega)
    }
}

/// `omega sqrt(mu eps_c)` on the branch with `Re k >= 0`, `Im k >= 0`.
pub fn wavenumber(medium: &Medium, frequency: f64) -> Result<Complex64> {
    if !(frequency.is_finite() && frequency > 0.0) {
        return Err(Error::invalid("frequency_hz", format!("{frequency} must be > 0")));
    }
    let omega = TAU * frequency;
    let k = omega * (medium.permeability * medium.complex_permittivity(omega)).sqrt();
    Ok(k)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Region {
    /// `r < d`, the body.
    Inside,
    /// `r > d`, the exterior.
    Outside,
}

/// Transmitter/receiver placement; the first digit is the receiver region
/// and the second the transmitter region (1 = body, 2 = exterior).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PlacementCase {
    Case11,
    /// Transmitter inside, receiver outside.
    Case21,
    /// Transmitter outside, receiver inside.
    Case12,
    Case22,
}

impl PlacementCase {
    pub fn from_regions(source: Region, receiver: Region) -> Self {
        match (source, receiver) {
            (Region::Inside, Region::Inside) => PlacementCase::Case11,
            (Region::Inside, Region::Outside) => PlacementCase::Case21,
            (Region::Outside, Region::Inside) => PlacementCase::Case12,
            (Region::Outside, Region::Outside) => PlacementCase::Case22,
        }
    }

    pub fn source_region(self) -> Region {
        match self {
            PlacementCase::Case11 | PlacementCase::Case21 => Region::Inside,
            PlacementCase::Case12 | PlacementCase::Case22 => Region::Outside,
        }
    }

    pub fn receiver_region(self) -> Region {
        match self {
            PlacementCase::Case11 | PlacementCase::Case12 => Region::Inside,
            PlacementCase::Case21 | PlacementCase::Case22 => Region::Outside,
        }
    }

    pub fn same_region(self) -> bool {
        self.source_region() == self.receiver_region()
    }

    pub const ALL: [PlacementCase; 4] = [
        PlacementCase::Case11,
        PlacementCase::Case21,
        PlacementCase::Case12,
        PlacementCase::Case22,
    ];
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SphereScenario {
    pub radius_d: f64,
    pub body: Medium,
    pub exterior: Medium,
    pub frequency: f64,
}

impl SphereScenario {
    pub fn new(radius_d: f64, body: Medium, exterior: Medium, frequency: f64) -> Result<Self> {
        let s = SphereScenario {
            radius_d,
            body,
            exterior,
            frequency,
        };
        s.validate()?;
        Ok(s)
    }

    /// Sphere of radius 15 cm at 1 GHz with the reference tissue and air.
    pub fn reference() -> Self {
        SphereScenario {
            radius_d: REFERENCE_RADIUS_M,
            body: Medium {
                name: "body".into(),
                permittivity: REFERENCE_EPS_BODY,
                conductivity: 0.0,
                permeability: REFERENCE_MU,
            },
            exterior: Medium {
                name: "exterior".into(),
                permittivity: REFERENCE_EPS_AIR,
                conductivity: 0.0,
                permeability: REFERENCE_MU,
            },
            frequency: REFERENCE_FREQUENCY_HZ,
        }
    }

    /// Same geometry with the body replaced by the exterior medium.
    pub fn matched(&self) -> Self {
        let mut s = self.clone();
        s.body = Medium {
            name: "body".into(),
            ..self.exterior.clone()
        };
        s
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.radius_d.is_finite() && self.radius_d > 0.0) {
            return Err(Error::invalid("radius_m", format!("{} must be > 0", self.radius_d)));
        }
        if !(self.frequency.is_finite() && self.frequency > 0.0) {
            return Err(Error::invalid(
                "frequency_hz",
                format!("{} must be > 0", self.frequency),
            ));
        }
        self.body.validate()?;
        self.exterior.validate()
    }

    pub fn omega(&self) -> f64 {
        TAU * self.frequency
    }

    pub fn medium(&self, region: Region) -> &Medium {
        match region {
            Region::Inside => &self.body,
            Region::Outside => &self.exterior,
        }
    }

    pub fn wavenumber(&self, region: Region) -> Complex64 {
        let m = self.medium(region);
        self.omega() * (m.permeability * m.complex_permittivity(self.omega())).sqrt()
    }

    pub fn k_body(&self) -> Complex64 {
        self.wavenumber(Region::Inside)
    }

    pub fn k_exterior(&self) -> Complex64 {
        self.wavenumber(Region::Outside)
    }

    pub fn region(&self, r: f64) -> Result<Region> {
        if (r - self.radius_d).abs() <= INTERFACE_TOLERANCE * self.radius_d {
            return Err(Error::Interface { r, d: self.radius_d });
        }
        Ok(if r < self.radius_d {
            Region::Inside
        } else {
            Region::Outside
        })
    }

    pub fn classify(&self, source_r: f64, receiver_r: f64) -> Result<PlacementCase> {
        Ok(PlacementCase::from_regions(
            self.region(source_r)?,
            self.region(receiver_r)?,
        ))
    }
}

/// Point current `J = p delta(x - x0)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DipoleSource {
    pub position: SphericalPoint,
    /// Components in the spherical basis at `position`, A m.
    pub moment: CVec3,
}

impl DipoleSource {
    pub fn new(position: SphericalPoint, moment: CVec3) -> Self {
        DipoleSource { position, moment }
    }

    /// Unit `phi_hat` moment at `(0.16 m, pi/2, 0)`.
    pub fn reference() -> Self {
        let zero = Complex64::new(0.0, 0.0);
        DipoleSource {
            position: SphericalPoint {
                r: REFERENCE_SOURCE_R_M,
                theta: FRAC_PI_2,
                phi: 0.0,
            },
            moment: [zero, zero, Complex64::new(1.0, 0.0)],
        }
    }

    pub fn region(&self, scenario: &SphereScenario) -> Result<Region> {
        scenario.region(self.position.r)
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        let mut s = *self;
        for c in s.moment.iter_mut() {
            *c *= factor;
        }
        s
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MediumFile {
    pub eps: f64,
    pub mu: f64,
    #[serde(default)]
    pub sigma: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SourceFile {
    pub r: f64,
    pub theta: f64,
    pub phi: f64,
    /// `[[re, im]; 3]` in the spherical basis at the source.
    pub moment: [[f64; 2]; 3],
}

/// On-disk scenario description.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub radius_m: f64,
    pub frequency_hz: f64,
    pub body: MediumFile,
    pub exterior: MediumFile,
    pub source: SourceFile,
    /// Radial distance of the receiver before the offset is applied.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub receiver_range_m: Option<f64>,
}

/// A validated scenario file.
#[derive(Debug, Clone, PartialEq)]
pub struct LoadedScenario {
    pub scenario: SphereScenario,
    pub source: DipoleSource,
    pub receiver_range_m: f64,
}

impl ScenarioFile {
    pub fn reference() -> Self {
        let m = |eps: f64| MediumFile {
            eps,
            mu: REFERENCE_MU,
            sigma: 0.0,
        };
        ScenarioFile {
            radius_m: REFERENCE_RADIUS_M,
            frequency_hz: REFERENCE_FREQUENCY_HZ,
            body: m(REFERENCE_EPS_BODY),
            exterior: m(REFERENCE_EPS_AIR),
            source: SourceFile {
                r: REFERENCE_SOURCE_R_M,
                theta: FRAC_PI_2,
                phi: 0.0,
                moment: [[0.0, 0.0], [0.0, 0.0], [1.0, 0.0]],
            },
            receiver_range_m: Some(REFERENCE_RECEIVER_RANGE_M),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Invalid {
            field: format!("scenario (line {}, column {})", e.line(), e.column()),
            reason: e.to_string(),
        })
    }

    pub fn load(path: &Path) -> Result<LoadedScenario> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        ScenarioFile::parse(&text)?.resolve()
    }

    pub fn resolve(&self) -> Result<LoadedScenario> {
        let medium = |name: &str, m: &MediumFile| Medium::new(name, m.eps, m.sigma, m.mu);
        let scenario = SphereScenario::new(
            self.radius_m,
            medium("body", &self.body)?,
            medium("exterior", &self.exterior)?,
            self.frequency_hz,
        )?;
        let s = &self.source;
        let position = SphericalPoint::new(s.r, s.theta, s.phi).map_err(|e| match e {
            Error::Invalid { field, reason } => Error::invalid(format!("source.{field}"), reason),
            other => other,
        })?;
        if s.moment.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::invalid("source.moment", "entries must be finite"));
        }
        let moment = s.moment.map(|[re, im]| Complex64::new(re, im));
        scenario.region(position.r).map_err(|_| {
            Error::invalid("source.r", format!("{} lies on the interface", position.r))
        })?;
        let receiver_range_m = self.receiver_range_m.unwrap_or(REFERENCE_RECEIVER_RANGE_M);
        if !(receiver_range_m.is_finite() && receiver_range_m > 0.0) {
            return Err(Error::invalid(
                "receiver_range_m",
                format!("{receiver_range_m} must be > 0"),
            ));
        }
        Ok(LoadedScenario {
            scenario,
            source: DipoleSource::new(position, moment),
            receiver_range_m,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_wavenumbers() {
        let s = SphereScenario::reference();
        let omega = TAU * 1e9;
        let air = omega * (REFERENCE_MU * REFERENCE_EPS_AIR).sqrt();
        let body = omega * (REFERENCE_MU * REFERENCE_EPS_BODY).sqrt();
        assert!((s.k_exterior() - air).norm() < 1e-12 * air);
        assert!((s.k_body() - body).norm() < 1e-12 * body);
        assert!((air - 20.953).abs() < 1e-3);
        assert!((body - 112.73).abs() < 1e-2);
        assert_eq!(s.k_body().im, 0.0);
        let k = wavenumber(&s.body, 1e9).unwrap();
        assert_eq!(k, s.k_body());
    }

    #[test]
    fn lossy_wavenumber_is_first_quadrant() {
        let m = Medium::new("muscle", 50.0 * REFERENCE_EPS_AIR, 1.0, REFERENCE_MU).unwrap();
        let k = wavenumber(&m, 1e9).unwrap();
        assert!(k.re > 0.0 && k.im > 0.0);
    }

    #[test]
    fn wavenumber_is_homogeneous() {
        let m = Medium::new("x", 3e-11, 0.0, 2e-6).unwrap();
        let a = 3.7;
        let scaled = Medium::new("x", 3e-11 * a * a, 0.0, 2e-6 * a * a).unwrap();
        let (k, ks) = (wavenumber(&m, 2e9).unwrap(), wavenumber(&scaled, 2e9).unwrap());
        assert!((ks - k * a * a).norm() < 1e-12 * ks.norm());
    }

    #[test]
    fn classification() {
        let s = SphereScenario::reference();
        assert_eq!(s.classify(0.10, 0.05).unwrap(), PlacementCase::Case11);
        assert_eq!(s.classify(0.16, 0.18).unwrap(), PlacementCase::Case22);
        assert_eq!(s.classify(0.10, 0.18).unwrap(), PlacementCase::Case21);
        assert_eq!(s.classify(0.18, 0.10).unwrap(), PlacementCase::Case12);
        assert!(matches!(s.classify(0.15, 0.18), Err(Error::Interface { .. })));
        assert!(s.classify(0.10, 0.15 * (1.0 + 1e-13)).is_err());
        for case in PlacementCase::ALL {
            let c = PlacementCase::from_regions(case.source_region(), case.receiver_region());
            assert_eq!(c, case);
        }
    }

    #[test]
    fn invalid_media_rejected() {
        assert!(Medium::new("m", -1.0, 0.0, 1e-6).is_err());
        assert!(Medium::new("m", 1e-11, -0.1, 1e-6).is_err());
        assert!(Medium::new("m", 1e-11, 0.0, 0.0).is_err());
        assert!(wavenumber(&SphereScenario::reference().body, 0.0).is_err());
    }

    #[test]
    fn scenario_file_round_trip() {
        let f = ScenarioFile::reference();
        let text = serde_json::to_string_pretty(&f).unwrap();
        let loaded = ScenarioFile::parse(&text).unwrap().resolve().unwrap();
        assert_eq!(loaded.scenario, {
            let mut p = SphereScenario::reference();
            p.body.name = "body".into();
            p
        });
        assert_eq!(loaded.source, DipoleSource::reference());
        assert_eq!(loaded.receiver_range_m, REFERENCE_RECEIVER_RANGE_M);
    }

    #[test]
    fn scenario_file_diagnostics() {
        let err = ScenarioFile::parse("{\n \"radius_m\": 0.1,\n \"bogus\": 1\n}").unwrap_err();
        match err {
            Error::Invalid { field, .. } => assert!(field.contains("line 3"), "{field}"),
            e => panic!("{e}"),
        }
        let mut f = ScenarioFile::reference();
        f.source.r = REFERENCE_RADIUS_M;
        assert!(matches!(f.resolve(), Err(Error::Invalid { field, .. }) if field == "source.r"));
        let mut f = ScenarioFile::reference();
        f.exterior.eps = 0.0;
        assert!(matches!(f.resolve(), Err(Error::Invalid { field, .. }) if field == "exterior.eps"));
    }
}
