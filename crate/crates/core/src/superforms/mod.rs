//! Polynomial superforms, piecewise-linear functions, piecewise forms and
//! exact integration.

pub mod form;
pub mod integrate;
pub mod json;
pub mod pl;
pub mod poly;

pub use form::SuperForm;
pub use integrate::{boundary_integral, integrate_top, polytope_integral, simplex_integral, stokes_check, triangulate, Side, StokesCheck};
pub use pl::{Affine, PLFunction, PiecewiseForm};
pub use poly::Poly;
