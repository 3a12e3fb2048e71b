//! Polyhedral currents `Σ α_σ ∧ [σ, μ_σ]` and δ-forms.
//!
//! A [`DeltaForm`] is stored canonically: every cell carries its canonical
//! lattice weight (multiplier 1, any multiplier is folded into the
//! coefficient), coefficients live in the cell's chart coordinates, zero
//! coefficients are dropped and terms on identical cells are merged.

mod balance;
mod boundary;
mod json;
mod ops;
#[cfg(test)]
mod tests;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::One;

pub use balance::{BalanceFailure, BalanceReport};

use crate::error::{Error, Result};
use crate::exact::rational::Rational;
use crate::polyhedra::complex::{by_dimension, subdivide};
use crate::polyhedra::{Complex, Polyhedron, WeightedCell};
use crate::superforms::SuperForm;

/// Tridegree `(p, q, r)`: coefficient bidegree `(p, q)` on a cell of
/// codimension `r`.
pub type Tridegree = (usize, usize, usize);

/// A finite polyhedral current on `ℝⁿ` in canonical form.
#[derive(Clone)]
pub struct DeltaForm {
    n: usize,
    terms: BTreeMap<Polyhedron, SuperForm>,
    /// The cells of each dimension are known to form a complex.
    refined: bool,
}

impl PartialEq for DeltaForm {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.terms == other.terms
    }
}

impl Eq for DeltaForm {}

impl std::hash::Hash for DeltaForm {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.terms.hash(state);
    }
}

/// Transport a chart form on `from` to the chart of `to ⊆ aff(from)`.
pub(crate) fn transfer(form: &SuperForm, from: &Polyhedron, to: &Polyhedron) -> SuperForm {
    if from == to {
        return form.clone();
    }
    form.pullback(&from.chart().transition_from(to.chart()))
}

impl DeltaForm {
    pub fn zero(n: usize) -> Self {
        DeltaForm { n, terms: BTreeMap::new(), refined: true }
    }

    /// `α ∧ [σ, λ μ_σ]` with `α` in the chart coordinates of `σ`, or in
    /// ambient coordinates when it has `n` variables.
    pub fn term(cell: &WeightedCell, alpha: &SuperForm) -> Result<Self> {
        let mut t = Self::zero(cell.cell.ambient_dim());
        t.add_term(cell, alpha)?;
        Ok(t)
    }

    /// The tropical cycle `Σ [σ, λ_σ μ_σ]` with constant coefficient 1.
    pub fn cycle(n: usize, cells: &[WeightedCell]) -> Result<Self> {
        let mut t = Self::zero(n);
        for c in cells {
            t.add_term(c, &SuperForm::one(c.cell.dim()))?;
        }
        Ok(t)
    }

    /// `α ∧ [ℝⁿ, μ_std]` for an ambient form `α`.
    pub fn from_form(alpha: &SuperForm) -> Self {
        let n = alpha.nvars();
        let mut t = Self::zero(n);
        t.add_chart_term(Polyhedron::whole(n), alpha.clone());
        t
    }

    /// Add `α ∧ [σ, λ μ_σ]`, folding `λ` into the coefficient.
    pub fn add_term(&mut self, cell: &WeightedCell, alpha: &SuperForm) -> Result<()> {
        if cell.cell.ambient_dim() != self.n {
            return Err(Error::Dimension(format!("cell in ℝ^{} added to a current on ℝ^{}", cell.cell.ambient_dim(), self.n)));
        }
        let local = alpha.chart_form(&cell.cell)?;
        let local = if cell.weight.is_one() { local } else { local.scale(&cell.weight) };
        self.add_chart_term(cell.cell.clone(), local);
        Ok(())
    }

    /// Add a coefficient already in chart coordinates and canonical weight.
    pub(crate) fn add_chart_term(&mut self, cell: Polyhedron, alpha: SuperForm) {
        debug_assert_eq!(alpha.nvars(), cell.dim());
        if alpha.is_zero() {
            return;
        }
        let merged = match self.terms.remove(&cell) {
            Some(old) => old + alpha,
            None => {
                self.refined = false;
                alpha
            }
        };
        if !merged.is_zero() {
            self.terms.insert(cell, merged);
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms `(σ, α_σ)` with `α_σ` in chart coordinates and weight 1.
    pub fn terms(&self) -> impl Iterator<Item = (&Polyhedron, &SuperForm)> {
        self.terms.iter()
    }

    /// The face closure of the cells carrying terms (not validated).
    pub fn complex(&self) -> Complex {
        Complex::closure(self.n, self.terms.keys().cloned().collect())
    }

    /// Already canonical by construction; provided as the explicit
    /// normalization step and a fixed point.
    pub fn canonicalize(&self) -> DeltaForm {
        let mut out = Self::zero(self.n);
        for (c, a) in &self.terms {
            out.add_chart_term(c.clone(), a.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> DeltaForm {
        let mut out = Self::zero(self.n);
        for (cell, a) in &self.terms {
            out.add_chart_term(cell.clone(), a.scale(c));
        }
        out.refined = self.refined;
        out
    }

    /// Record that the cells of each dimension form a complex, as they do
    /// for outputs built from a refined current by operations that keep
    /// cells meeting in common faces.
    pub(crate) fn assume_refined(mut self, refined: bool) -> Self {
        self.refined |= refined;
        self
    }

    /// Tridegrees of the nonzero components.
    pub fn tridegrees(&self) -> Vec<Tridegree> {
        let mut v: Vec<Tridegree> = self
            .terms
            .iter()
            .flat_map(|(c, a)| a.bidegrees().into_iter().map(move |(p, q)| (p, q, self.n - c.dim())))
            .collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn tridegree(&self) -> Option<Tridegree> {
        let t = self.tridegrees();
        (t.len() == 1).then(|| t[0])
    }

    /// The decomposition into trihomogeneous parts.
    pub fn tridegree_components(&self) -> BTreeMap<Tridegree, DeltaForm> {
        let mut out: BTreeMap<Tridegree, DeltaForm> = BTreeMap::new();
        for (c, a) in &self.terms {
            let r = self.n - c.dim();
            for (p, q) in a.bidegrees() {
                out.entry((p, q, r)).or_insert_with(|| Self::zero(self.n)).add_chart_term(c.clone(), a.component(p, q));
            }
        }
        out.into_iter().map(|(k, t)| (k, t.assume_refined(self.refined))).collect()
    }

    /// The same current with the cells of each dimension subdivided into a
    /// polyhedral complex. Pieces keep their parent's chart, so coefficients
    /// carry over unchanged.
    pub fn refined(&self) -> DeltaForm {
        if self.refined {
            return self.clone();
        }
        let mut out = Self::zero(self.n);
        for cells in by_dimension(self.terms.keys()).values() {
            for (cell, pieces) in cells.iter().zip(subdivide(cells)) {
                let a = &self.terms[cell];
                for p in pieces {
                    out.add_chart_term(p, a.clone());
                }
            }
        }
        out.refined = true;
        out
    }

    /// Equality as currents: the difference vanishes after refinement.
    pub fn equals(&self, other: &DeltaForm) -> bool {
        self.n == other.n && (self.clone() - other.clone()).refined().is_zero()
    }

    fn check_same(&self, other: &DeltaForm) {
        assert_eq!(self.n, other.n, "currents on different ambient spaces");
    }
}

impl Add for DeltaForm {
    type Output = DeltaForm;
    fn add(mut self, rhs: DeltaForm) -> DeltaForm {
        self.check_same(&rhs);
        for (c, a) in rhs.terms {
            self.add_chart_term(c, a);
        }
        self
    }
}

impl Sub for DeltaForm {
    type Output = DeltaForm;
    fn sub(self, rhs: DeltaForm) -> DeltaForm {
        self + (-rhs)
    }
}

impl Neg for DeltaForm {
    type Output = DeltaForm;
    fn neg(self) -> DeltaForm {
        DeltaForm { n: self.n, terms: self.terms.into_iter().map(|(c, a)| (c, -a)).collect(), refined: self.refined }
    }
}

impl fmt::Debug for DeltaForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for DeltaForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(c, a)| format!("[{a}] ∧ [{c}]")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl DeltaForm {
    /// `Σ λ [σ]` over the given complex's maximal cells with weight one.
    pub fn from_complex(c: &Complex) -> DeltaForm {
        let mut t = Self::zero(c.ambient_dim());
        for m in c.maximal() {
            let d = m.dim();
            t.add_chart_term(m, SuperForm::constant(d, Rational::one()));
        }
        t
    }
}
