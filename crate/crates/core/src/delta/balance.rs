//! The balancing condition: for every codimension-one face `τ` of a
//! trihomogeneous stratum, `Σ_σ α_σ|_τ ⊗ n_{σ,τ}` lies in `A(τ) ⊗ N_τ`.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use super::{transfer, DeltaForm, Tridegree};
use crate::exact::lattice::{hnf_rows, integer_kernel};
use crate::exact::rational::{self, to_rationals, Rational};
use crate::exact::dot;
use crate::polyhedra::{lattice_normal, Polyhedron};
use crate::superforms::SuperForm;

/// A face at which the balancing condition fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BalanceFailure {
    pub tridegree: Tridegree,
    pub tau: Polyhedron,
    /// Integer functionals spanning the annihilator of `N_τ`.
    #[serde(with = "rational::mat_as_str")]
    pub functionals: Vec<Vec<Rational>>,
    /// `Σ_σ (w · n_{σ,τ}) α_σ|_τ` for each functional `w`, in the chart of `τ`.
    pub residue: Vec<SuperForm>,
    /// `Σ_σ n_{σ,τ}[k] α_σ|_τ` for each ambient coordinate `k`.
    pub vector: Vec<SuperForm>,
}

/// Verdict of the balancing test with a certificate for each failing face.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BalanceReport {
    pub balanced: bool,
    pub failures: Vec<BalanceFailure>,
}

/// Facets `τ` of the top cells of a trihomogeneous current, each with the
/// contributions `(σ, α_σ|_τ, n_{σ,τ})`. The current must already be refined.
pub(crate) fn facet_stars(t: &DeltaForm) -> BTreeMap<Polyhedron, Vec<(Polyhedron, SuperForm, Vec<Rational>)>> {
    let mut stars: BTreeMap<Polyhedron, Vec<(Polyhedron, SuperForm, Vec<Rational>)>> = BTreeMap::new();
    for (sigma, alpha) in t.terms() {
        if sigma.dim() == 0 {
            continue;
        }
        for tau in sigma.facets() {
            let n = lattice_normal(tau, sigma).expect("facet of its cell");
            let restricted = transfer(alpha, sigma, tau);
            stars.entry(tau.clone()).or_default().push((sigma.clone(), restricted, n));
        }
    }
    stars
}

/// Integer basis of the functionals vanishing on `N_τ`, in Hermite form.
pub(crate) fn annihilator(tau: &Polyhedron) -> Vec<Vec<Rational>> {
    let n = tau.ambient_dim();
    let k = integer_kernel(tau.lattice().basis(), n);
    hnf_rows(&k, n).iter().map(|r| to_rationals(r)).collect()
}

fn weighted_sum(star: &[(Polyhedron, SuperForm, Vec<Rational>)], d: usize, coef: impl Fn(&[Rational]) -> Rational) -> SuperForm {
    star.iter().fold(SuperForm::zero(d), |acc, (_, beta, n)| {
        let c = coef(n);
        if c.is_zero() {
            acc
        } else {
            acc + beta.scale(&c)
        }
    })
}

impl DeltaForm {
    /// Test the balancing condition on every trihomogeneous component.
    pub fn is_balanced(&self) -> BalanceReport {
        let mut failures = Vec::new();
        for (tri, comp) in self.tridegree_components() {
            let refined = comp.refined();
            for (tau, star) in facet_stars(&refined) {
                let d = tau.dim();
                let functionals = annihilator(&tau);
                let residue: Vec<SuperForm> =
                    functionals.iter().map(|w| weighted_sum(&star, d, |n| dot(w, n))).collect();
                if residue.iter().all(|r| r.is_zero()) {
                    continue;
                }
                let vector = (0..self.ambient_dim()).map(|k| weighted_sum(&star, d, |n| n[k].clone())).collect();
                failures.push(BalanceFailure { tridegree: tri, tau, functionals, residue, vector });
            }
        }
        BalanceReport { balanced: failures.is_empty(), failures }
    }

    /// `Ok` when balanced, otherwise the report as an error.
    pub fn require_balanced(&self) -> crate::Result<()> {
        let report = self.is_balanced();
        if report.balanced {
            Ok(())
        } else {
            Err(crate::Error::Unbalanced(Box::new(report)))
        }
    }
}
