//! Exact arithmetic: rationals, ℚ[ε], matrices, lattices and linear programs.

pub mod affine;
pub mod eps;
pub mod lattice;
pub mod lp;
pub mod matrix;
pub mod rational;

pub use affine::AffineMap;
pub use eps::EpsRational;
pub use lattice::{integer_kernel, lattice_index, saturate, Lattice, Saturation};
pub use lp::{Extremum, Feasibility, LinearSystem, LpScalar};
pub use matrix::{dot, RatMatrix};
pub use rational::{format_rational, parse_rational, rat, Rational};
