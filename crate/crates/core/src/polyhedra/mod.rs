//! Rational polyhedra, weights, normal vectors and polyhedral complexes.

pub mod polyhedron;

pub use polyhedron::{Chart, Constraint, Polyhedron};
pub mod weight;

pub use weight::{
    cell_product, lattice_normal, normal_vector, stable_weight, weight_quotient, weight_wedge, Weight, WeightedCell,
};
pub mod complex;

pub use complex::{common_refinement, Complex};
pub mod json;
