//! Transverse conductivity and permittivity of a degenerate electron plasma
//! with relaxation-time collisions.
//!
//! Three response models are provided: the collisional quantum (Mermin-type)
//! model, the Lindhard function with the substitution `ω → ω + iν`, and the
//! classical degenerate-plasma conductivity. Everything past [`scales`] works
//! in dimensionless variables, see [`scales::DimensionlessQuery`].

pub mod cli;
pub mod error;
pub mod kernels;
pub mod quadrature;
pub mod response;
pub mod scales;
pub mod validation;

pub use error::{Error, Result};
pub use response::{Model, ResponseSample};
pub use scales::{DimensionlessQuery, FermiScales};
