//! Residue formulas for Kirwan maps of Hamiltonian torus actions, computed
//! exactly from fixed-point data.

pub mod dataset;
pub mod error;
pub mod kernels;
pub mod linalg;
pub mod localization;
pub mod residue;
pub mod symcore;
pub mod weyl;

pub use error::{Error, Result};
