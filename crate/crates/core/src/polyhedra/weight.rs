//! Weights as multipliers of canonical lattice weights, normal vectors and
//! the weight calculus of short exact sequences.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::polyhedron::Polyhedron;
use crate::error::{Error, Result};
use crate::exact::lattice::{integer_kernel, lattice_index, Lattice};
use crate::exact::matrix::dot;
use crate::exact::rational::{to_rationals, Rational};

/// A weight on a rational subspace `N`: the positive multiple `lambda` of
/// the canonical weight of the saturated lattice `N ∩ ℤⁿ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Weight {
    pub span: Lattice,
    pub lambda: Rational,
}

impl Weight {
    pub fn new(span: Lattice, lambda: Rational) -> Result<Self> {
        if !lambda.is_positive() {
            return Err(Error::Invalid(format!("weight multiplier must be positive, got {lambda}")));
        }
        Ok(Weight { span, lambda })
    }

    pub fn canonical(span: Lattice) -> Self {
        Weight { span, lambda: Rational::one() }
    }

    pub fn scaled(&self, q: &Rational) -> Self {
        Weight { span: self.span.clone(), lambda: &self.lambda * q }
    }
}

/// A polyhedron together with a weight on its linear span.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightedCell {
    pub cell: Polyhedron,
    pub weight: Rational,
}

impl WeightedCell {
    pub fn new(cell: Polyhedron, weight: Rational) -> Result<Self> {
        if !weight.is_positive() {
            return Err(Error::Invalid(format!("weight multiplier must be positive, got {weight}")));
        }
        Ok(WeightedCell { cell, weight })
    }

    pub fn canonical(cell: Polyhedron) -> Self {
        WeightedCell { cell, weight: Rational::one() }
    }

    pub fn weight(&self) -> Weight {
        Weight { span: self.cell.lattice().clone(), lambda: self.weight.clone() }
    }
}

/// Primitive lattice normal of the facet `tau` of `sigma`: the generator of
/// `(N_σ ∩ ℤⁿ)/(N_τ ∩ ℤⁿ)` pointing into `sigma`, with the representative
/// reduced against the Hermite basis of `N_τ ∩ ℤⁿ`.
pub fn lattice_normal(tau: &Polyhedron, sigma: &Polyhedron) -> Result<Vec<Rational>> {
    if !tau.is_facet_of(sigma) {
        return Err(Error::Precondition(format!("{tau} is not a facet of {sigma}")));
    }
    let sch = sigma.chart();
    let d = sigma.dim();
    // τ's lattice in σ's chart coordinates: integral since both are saturated.
    let rows: Vec<Vec<BigInt>> = tau
        .lattice()
        .basis_rational()
        .iter()
        .map(|b| primitive_or_int(&sch.vector_to_chart(b)))
        .collect();
    let w = integer_kernel(&rows, d);
    debug_assert_eq!(w.len(), 1);
    let w = &w[0];
    let u = bezout(w);
    let mut n = sch.vector_to_ambient(&to_rationals(&u));
    let probe: Vec<Rational> = sigma.interior_point().iter().zip(tau.interior_point()).map(|(a, b)| a - b).collect();
    let side: Rational = dot(&to_rationals(w), &sch.vector_to_chart(&probe));
    if side.is_negative() {
        n = n.into_iter().map(|x| -x).collect();
    }
    Ok(reduce_mod_lattice(&n, tau.lattice()))
}

/// `n_{σ,τ}` for weighted cells: `λ_σ/λ_τ` times the primitive normal.
pub fn normal_vector(tau: &WeightedCell, sigma: &WeightedCell) -> Result<Vec<Rational>> {
    let n = lattice_normal(&tau.cell, &sigma.cell)?;
    let s = &sigma.weight / &tau.weight;
    Ok(n.into_iter().map(|x| x * &s).collect())
}

/// Reduce `v` modulo the lattice so that each pivot entry lies in `[0, pivot)`.
pub fn reduce_mod_lattice(v: &[Rational], lattice: &Lattice) -> Vec<Rational> {
    let mut v = v.to_vec();
    for (row, p) in lattice.basis().iter().zip(lattice.pivots()) {
        let piv = Rational::from_integer(row[p].clone());
        let q = (&v[p] / &piv).floor();
        if !q.is_zero() {
            for (x, r) in v.iter_mut().zip(row) {
                *x -= &q * Rational::from_integer(r.clone());
            }
        }
    }
    v
}

fn primitive_or_int(v: &[Rational]) -> Vec<BigInt> {
    debug_assert!(v.iter().all(|x| x.is_integer()));
    v.iter().map(|x| x.to_integer()).collect()
}

/// An integer vector `u` with `w · u = gcd(w)`.
fn bezout(w: &[BigInt]) -> Vec<BigInt> {
    let mut u = vec![BigInt::zero(); w.len()];
    let Some(first) = w.iter().position(|x| !x.is_zero()) else { return u };
    let mut g = w[first].clone();
    u[first] = BigInt::one();
    for k in first + 1..w.len() {
        if w[k].is_zero() {
            continue;
        }
        let e = g.extended_gcd(&w[k]);
        for x in u.iter_mut() {
            *x *= &e.x;
        }
        u[k] = e.y.clone();
        g = e.gcd;
    }
    if g.is_negative() {
        for x in u.iter_mut() {
            *x = -x.clone();
        }
    }
    u
}

fn check_nested(n1: &Lattice, n2: &Lattice) -> Result<()> {
    if n1.ambient_dim() != n2.ambient_dim() || n1.basis_rational().iter().any(|b| n2.coordinates(b).is_none()) {
        return Err(Error::Precondition("subspaces are not nested".into()));
    }
    Ok(())
}

/// `μ₂ = μ₁ ∧ μ₃` for `N₁ ⊆ N₂`, where `μ₃` is given by its multiplier
/// relative to the canonical weight of the image of `N₂ ∩ ℤⁿ` in `N₂/N₁`.
pub fn weight_wedge(mu1: &Weight, n2: &Lattice, lambda3: &Rational) -> Result<Weight> {
    check_nested(&mu1.span, n2)?;
    Weight::new(n2.clone(), &mu1.lambda * lambda3)
}

/// The quotient multiplier `λ₃` with `μ₂ = μ₁ ∧ μ₃`.
pub fn weight_quotient(mu2: &Weight, mu1: &Weight) -> Result<Rational> {
    check_nested(&mu1.span, &mu2.span)?;
    Ok(&mu2.lambda / &mu1.lambda)
}

/// The saturated lattice of `N₁ ∩ N₂`.
pub fn lattice_intersection(a: &Lattice, b: &Lattice) -> Lattice {
    let n = a.ambient_dim();
    let mut perp = integer_kernel(a.basis(), n);
    perp.extend(integer_kernel(b.basis(), n));
    Lattice::generated_by(n, &integer_kernel(&perp, n))
}

/// `[ℤⁿ : Λ₁ + Λ₂]` for transversal saturated lattices.
pub fn transversal_index(a: &Lattice, b: &Lattice) -> Result<Rational> {
    let n = a.ambient_dim();
    let mut gens = a.basis().to_vec();
    gens.extend(b.basis().iter().cloned());
    let sum = Lattice::generated_by(n, &gens);
    if sum.rank() != n {
        return Err(Error::Precondition("spans do not add up to the ambient space".into()));
    }
    lattice_index(&sum, &Lattice::full(n))
}

/// The weight `μ₁ ∩ μ₂` on `N₁ ∩ N₂` with `(μ₁ ∩ μ₂) ∧ μ_std = μ₁ ∧ μ₂`.
pub fn stable_weight(mu1: &Weight, mu2: &Weight) -> Result<Weight> {
    if mu1.span.ambient_dim() != mu2.span.ambient_dim() {
        return Err(Error::Dimension("weights live in different ambient spaces".into()));
    }
    let idx = transversal_index(&mu1.span, &mu2.span)?;
    Weight::new(lattice_intersection(&mu1.span, &mu2.span), &mu1.lambda * &mu2.lambda * idx)
}

/// `[σ₁ × σ₂, μ₁ ∧ μ₂]`.
pub fn cell_product(c1: &WeightedCell, c2: &WeightedCell) -> WeightedCell {
    WeightedCell { cell: c1.cell.product(&c2.cell), weight: &c1.weight * &c2.weight }
}

/// Saturated lattice spanned by rational vectors.
pub fn span_lattice(n: usize, vectors: &[Vec<Rational>]) -> Lattice {
    Lattice::saturated_span(n, vectors)
}
