//! Polyhedral derivatives, boundary operators and the derivatives `d'`,
//! `d''` of δ-forms.
//!
//! Near a facet `τ` of `σ` the chart of `σ` is reparametrized as
//! `(s, t) ↦ A s + c + t u` with `A s + c` the chart of `τ` and `u` the
//! primitive lattice normal shifted along `τ` into a complement shared by all
//! cells containing `τ`, so that `z = t` has `∂z/∂n_{σ,τ} = 1`. With
//! `α_σ = α₁ + d'z ∧ α₂ + d''z ∧ α₃ + d'z ∧ d''z ∧ α₄` the boundary
//! coefficients are `β'_τ = -Σ α₃|_τ` and `β''_τ = Σ α₂|_τ`.

use num_traits::{One, Zero};
use rayon::prelude::*;

use super::balance::facet_stars;
use super::{transfer, DeltaForm};
use crate::error::Result;
use crate::exact::rational::Rational;
use crate::exact::{AffineMap, RatMatrix};
use crate::polyhedra::{lattice_normal, Polyhedron};
use crate::superforms::{Poly, Side, SuperForm};

/// Chart of `σ` near its facet `τ`: `(s, t) ↦ A s + c + t u`. The normal
/// `u` is taken in the kernel of the chart projection of `τ`, so the `s`
/// coordinates restrict the same ambient functions on every `σ ⊃ τ`.
fn collar(tau: &Polyhedron, sigma: &Polyhedron) -> AffineMap {
    let tr = sigma.chart().transition_from(tau.chart());
    let nrm = lattice_normal(tau, sigma).expect("facet of its cell");
    let along = tau.chart().vector_to_ambient(&tau.chart().vector_to_chart(&nrm));
    let nrm: Vec<Rational> = nrm.iter().zip(along).map(|(x, y)| x - y).collect();
    let u = sigma.chart().vector_to_chart(&nrm);
    let d = sigma.dim();
    let mut cols: Vec<Vec<Rational>> = (0..tau.dim()).map(|j| tr.matrix().column(j)).collect();
    cols.push(u);
    AffineMap::new(RatMatrix::from_columns(&cols, d), tr.offset().to_vec()).expect("square collar")
}

/// The `d''z`-part (`side = First`) or `d'z`-part (`side = Second`) of a
/// form in collar coordinates, moved to the front and restricted to `t = 0`.
fn normal_part(alpha: &SuperForm, side: Side) -> SuperForm {
    let m = alpha.nvars() - 1;
    let tbit = 1u64 << m;
    let mut embed = RatMatrix::zeros(m + 1, m);
    for k in 0..m {
        embed.set(k, k, Rational::one());
    }
    let slice = AffineMap::linear(embed);
    let mut out = SuperForm::zero(m);
    for (&(i, j), p) in alpha.raw_terms() {
        let (hit, other) = match side {
            Side::First => (j, i),
            Side::Second => (i, j),
        };
        if hit & tbit == 0 || other & tbit != 0 {
            continue;
        }
        let passes = match side {
            Side::First => i.count_ones() + j.count_ones() - 1,
            Side::Second => i.count_ones() - 1,
        };
        let q: Poly = p.compose(&slice);
        let q = if passes % 2 == 1 { -q } else { q };
        let (ni, nj) = match side {
            Side::First => (i, j & !tbit),
            Side::Second => (i & !tbit, j),
        };
        out.add_term(ni, nj, q);
    }
    out
}

impl DeltaForm {
    /// `d'_P T = Σ d'α_σ ∧ [σ, μ_σ]`.
    pub fn dp_prime(&self) -> DeltaForm {
        let mut out = DeltaForm::zero(self.n);
        for (c, a) in &self.terms {
            out.add_chart_term(c.clone(), a.dprime());
        }
        out.assume_refined(self.refined)
    }

    /// `d''_P T = Σ d''α_σ ∧ [σ, μ_σ]`.
    pub fn dp_second(&self) -> DeltaForm {
        let mut out = DeltaForm::zero(self.n);
        for (c, a) in &self.terms {
            out.add_chart_term(c.clone(), a.dsecond());
        }
        out.assume_refined(self.refined)
    }

    /// Boundary term without the balancing check.
    pub(crate) fn boundary_unchecked(&self, side: Side) -> DeltaForm {
        let refined = self.refined();
        let parts: Vec<(Polyhedron, SuperForm)> = refined
            .terms
            .par_iter()
            .filter(|(sigma, _)| sigma.dim() > 0)
            .flat_map_iter(|(sigma, alpha)| {
                sigma.facets().iter().map(move |tau| {
                    let local = alpha.pullback(&collar(tau, sigma));
                    let beta = normal_part(&local, side);
                    let beta = match side {
                        Side::First => -beta,
                        Side::Second => beta,
                    };
                    (tau.clone(), beta)
                })
            })
            .collect();
        let mut out = DeltaForm::zero(self.n);
        for (tau, beta) in parts {
            out.add_chart_term(tau, beta);
        }
        // Facets of the cells of a complex form a complex.
        out.assume_refined(true)
    }

    /// Boundary term computed from the balancing residue: writing
    /// `Σ_σ α_σ|_τ ⊗ n_{σ,τ} = Σ_j γ_j ⊗ b_j` over the chart basis `b_j` of
    /// `τ`, `β'_τ = Σ_j (γ_j, b_j'') - Σ_σ (α_σ, n''_{σ,τ})|_τ`, and `β''_τ`
    /// is the same expression with single primes and the opposite sign.
    /// An independent route to the same operator, used for cross-checks.
    pub fn boundary_via_residue(&self, side: Side) -> Result<DeltaForm> {
        self.require_balanced()?;
        let refined = self.refined();
        let contract = |a: &SuperForm, v: &[Rational]| match side {
            Side::First => a.contract_second(v),
            Side::Second => a.contract_prime(v),
        };
        let mut out = DeltaForm::zero(self.n);
        for (tau, star) in facet_stars(&refined) {
            let d = tau.dim();
            let ch = tau.chart();
            let mut beta = SuperForm::zero(d);
            for j in 0..d {
                let mut gamma = SuperForm::zero(d);
                for k in 0..self.n {
                    let mut e = vec![Rational::zero(); self.n];
                    e[k] = Rational::one();
                    let c = ch.vector_to_chart(&e)[j].clone();
                    if c.is_zero() {
                        continue;
                    }
                    for (_, restricted, nrm) in &star {
                        let w = &nrm[k] * &c;
                        if !w.is_zero() {
                            gamma = gamma + restricted.scale(&w);
                        }
                    }
                }
                let mut bj = vec![Rational::zero(); d];
                bj[j] = Rational::one();
                beta = beta + contract(&gamma, &bj);
            }
            for (sigma, _, nrm) in &star {
                let alpha = &refined.terms[sigma];
                let local = contract(alpha, &sigma.chart().vector_to_chart(nrm));
                beta = beta - transfer(&local, sigma, &tau);
            }
            let beta = match side {
                Side::First => beta,
                Side::Second => -beta,
            };
            out.add_chart_term(tau, beta);
        }
        Ok(out)
    }

    /// `∂'T`, defined for balanced `T`.
    pub fn boundary_prime(&self) -> Result<DeltaForm> {
        self.require_balanced()?;
        Ok(self.boundary_unchecked(Side::First))
    }

    /// `∂''T`, defined for balanced `T`.
    pub fn boundary_second(&self) -> Result<DeltaForm> {
        self.require_balanced()?;
        Ok(self.boundary_unchecked(Side::Second))
    }

    /// `d'T = d'_P T - ∂'T` for a δ-form `T`.
    pub fn d_prime(&self) -> Result<DeltaForm> {
        Ok(self.dp_prime() - self.boundary_prime()?)
    }

    /// `d''T = d''_P T - ∂''T` for a δ-form `T`.
    pub fn d_second(&self) -> Result<DeltaForm> {
        Ok(self.dp_second() - self.boundary_second()?)
    }
}
