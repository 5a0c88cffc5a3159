//! Complex-argument special functions behind every eigenfunction.

mod bessel;
mod legendre;

pub use bessel::{
    spherical_bessel, wronskian_check, RadialEval, RadialKind, RadialTable, ScaledRadial,
    DEFAULT_MAX_ORDER, ORDER_CEILING,
};
pub use legendre::{assoc_legendre, LegendreEval, LegendreTable};
