//! Exact computations with Lagerberg superforms and tropical delta-forms on
//! ℝⁿ: weighted rational polyhedral complexes, balancing, the derivatives
//! `d'`, `d''` and their boundary parts, products, push-forward and
//! pull-back, and tropical intersection products.

pub mod delta;
pub mod error;
pub mod exact;
pub mod intersection;
pub mod polyhedra;
pub mod superforms;

pub use error::{Error, Result};
