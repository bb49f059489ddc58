//! Fixed-point data of Hamiltonian torus spaces and the localization and
//! Kirwan-map integrals computed from it.

mod circle;
mod integrals;
mod space;

pub use circle::{int_det, is_generic, AdaptedBasis, CircleDirection, GenericityCertificate};
pub(crate) use circle::require_generic;
pub use integrals::{
    abbv_sum, kappa_s_integral, kappa_t_integral, localized_integrand, pairing_matrix,
    AbbvReport, KappaS, Pairing, ResidueFrame,
};
pub use space::{FixedComponent, Generator, HamiltonianSpace, RestrictedClass};
