//! Independent references for testing: fixed-point special functions,
//! closed-form free-space fields, finite-difference stencils and a dense
//! interface solve. Production paths never call into this module.

pub mod bigfixed;
mod bessel;
mod closed_form;
mod fd;
mod interface;
mod legendre;

pub use bessel::{
    rayleigh_hankel1, rayleigh_hankel1_derivative, series_bessel, series_bessel_derivative,
};
pub use closed_form::{
    cartesian_to_bases, free_space_dyadic, free_space_scalar, free_space_stencil,
    hertzian_dipole_field,
};
pub use fd::{
    cartesian_view, curl, curl_curl, divergence, gradient, hessian, laplacian, partial,
    second_partial, to_spherical, FDStencil,
};
pub use interface::{
    dense_interface_solve, interface_residual, interface_samples, DenseCoefficients,
    InterfaceResidual,
};
pub use legendre::rodrigues_legendre;
