//! Intersection theory: tropical Cartier divisors, the diagonal product
//! and the fan displacement rule.

mod displacement;
mod divisor;
mod product;
mod suite;

pub use displacement::{displacement_product, find_generic_vector, is_generic, transversal_product, Genericity, PairFailure};
pub use divisor::{corner_locus_identity_check, divisor_commutes_check, divisor_intersect, CornerLocusReport, Divisor};
pub use suite::{
    affine_section, exterior_product_check, graded_commutativity_check, leibniz_check, partial_diagonal_check,
    product_property_suite, projection_formula_check, tropical_hyperplane, wedge_diagonal_ascending, Derivation, SuiteReport,
    Verdict,
};
pub use product::{diagonal_function, graph, pullback_general, wedge_diagonal};

#[cfg(test)]
mod tests;
