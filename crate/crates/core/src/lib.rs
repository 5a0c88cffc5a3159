//! Dyadic Green's function of a dielectric sphere for on-body channel
//! modelling: special functions, vector spherical wave functions, per-order
//! interface coefficients, the four source/receiver placements, dipole
//! fields, parameter sweeps and the oracles used to verify them.

pub mod coords;
pub mod error;
pub mod field;
pub mod greens;
pub mod oracle;
pub mod scattering;
pub mod scenario;
pub mod specfun;
pub mod sweep;
pub mod verify;
pub mod vswf;

pub use coords::{CVec3, SphericalPoint};
pub use error::{Error, Result};
pub use field::{FieldSample, FieldSelector};
pub use greens::{Dyadic, SphereModel, TruncationSpec};
pub use scattering::{CoeffSet, CoeffTable};
pub use scenario::{DipoleSource, Medium, PlacementCase, Region, ScenarioFile, SphereScenario};
pub use sweep::{OffsetAxis, SweepConfig, SweepSummary};
