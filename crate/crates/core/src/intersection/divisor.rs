//! Intersection with the corner locus of a piecewise-linear function.

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::delta::DeltaForm;
use crate::error::{Error, Result};
use crate::exact::{dot, RatMatrix};
use crate::exact::rational::Rational;
use crate::polyhedra::complex::{cut_by_hyperplanes, hyperplanes};
use crate::polyhedra::{lattice_normal, Polyhedron};
use crate::superforms::{PLFunction, SuperForm};

/// A divisor `D = d'd''φ`, presented by the piecewise-linear function `φ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Divisor {
    phi: PLFunction,
}

impl Divisor {
    pub fn new(phi: PLFunction) -> Self {
        Divisor { phi }
    }

    pub fn phi(&self) -> &PLFunction {
        &self.phi
    }

    /// `D · [ℝⁿ, μ_std]`, a closed δ-form of tridegree `(0, 0, 1)`.
    pub fn materialize(&self) -> Result<DeltaForm> {
        let n = self.phi.ambient_dim();
        divisor_intersect(&self.phi, &DeltaForm::cycle(n, &[crate::polyhedra::WeightedCell::canonical(Polyhedron::whole(n))])?)
    }

    /// `D · T`.
    pub fn intersect(&self, t: &DeltaForm) -> Result<DeltaForm> {
        divisor_intersect(&self.phi, t)
    }
}

/// Subdivide the cells of `t` along the domains of linearity of `phi`.
fn subordinate(phi: &PLFunction, t: &DeltaForm) -> Result<DeltaForm> {
    let planes = hyperplanes(phi.pieces().map(|(c, _)| c));
    let mut out = DeltaForm::zero(t.ambient_dim());
    // Cutting a complex by one hyperplane arrangement leaves a complex.
    for (sigma, alpha) in t.refined().terms() {
        for piece in cut_by_hyperplanes(sigma, &planes) {
            if phi.eval(piece.interior_point()).is_none() {
                return Err(Error::Precondition(format!("piecewise-linear function is undefined on {piece}")));
            }
            out.add_chart_term(piece, alpha.clone());
        }
    }
    Ok(out.assume_refined(true))
}

/// Linear part of `φ_τ`: agrees with `φ` along `L_τ` and vanishes on the unit
/// vectors off the Hermite pivots of `L_τ ∩ ℤⁿ`.
fn base_slope(phi: &PLFunction, tau: &Polyhedron) -> Vec<Rational> {
    let n = phi.ambient_dim();
    let slope = &phi.piece_on(tau).expect("covered").linear;
    let lattice = tau.lattice();
    let pivots = lattice.pivots();
    let mut rows = lattice.basis_rational();
    let mut rhs: Vec<Rational> = rows.iter().map(|b| dot(b, slope)).collect();
    for j in (0..n).filter(|j| !pivots.contains(j)) {
        let mut e = vec![Rational::zero(); n];
        e[j] = Rational::one();
        rows.push(e);
        rhs.push(Rational::zero());
    }
    RatMatrix::from_rows(rows, n).expect("square system").solve(&rhs).expect("pivots complement the lattice")
}

/// `D · T` for `D = d'd''φ` and a δ-form `T`: on each codimension-one face
/// `τ`, `β_τ = Σ_σ ∂(φ|_σ - φ_τ)/∂n_{σ,τ} α_σ|_τ` where `φ_τ` is the affine
/// affine function matching `φ` along `τ`.
pub fn divisor_intersect(phi: &PLFunction, t: &DeltaForm) -> Result<DeltaForm> {
    let n = t.ambient_dim();
    if phi.ambient_dim() != n {
        return Err(Error::Dimension("divisor and current live on different spaces".into()));
    }
    t.require_balanced()?;
    let mut out = DeltaForm::zero(n);
    for refined in subordinate(phi, t)?.tridegree_components().into_values() {
        let terms: Vec<(&Polyhedron, &SuperForm)> = refined.terms().filter(|(s, _)| s.dim() > 0).collect();
        let parts: Vec<(Polyhedron, SuperForm)> = terms
            .par_iter()
            .flat_map_iter(|&(sigma, alpha)| {
                let slope = &phi.piece_on(sigma).expect("covered").linear;
                sigma.facets().iter().filter_map(move |tau| {
                    let base = base_slope(phi, tau);
                    let nrm = lattice_normal(tau, sigma).expect("facet of its cell");
                    let diff: Vec<Rational> = slope.iter().zip(&base).map(|(a, b)| a - b).collect();
                    let c = dot(&diff, &nrm);
                    (!c.is_zero()).then(|| (tau.clone(), crate::delta::transfer(alpha, sigma, tau).scale(&c)))
                })
            })
            .collect();
        for (tau, beta) in parts {
            out.add_chart_term(tau, beta);
        }
    }
    // All components were cut against one complex, so the facets form one.
    Ok(out.assume_refined(true))
}

/// Compare `D₁ · (D₂ · T)` with `D₂ · (D₁ · T)`.
pub fn divisor_commutes_check(phi1: &PLFunction, phi2: &PLFunction, t: &DeltaForm) -> Result<bool> {
    let a = divisor_intersect(phi1, &divisor_intersect(phi2, t)?)?;
    let b = divisor_intersect(phi2, &divisor_intersect(phi1, t)?)?;
    Ok(a.equals(&b))
}

/// The three expressions for `D · T` and, for closed `T`, `d'd''(φT)`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct CornerLocusReport {
    /// `D · T = d'(d''φ ∧ T) + d''φ ∧ d'T`.
    pub via_derivatives: bool,
    /// `D · T = -∂'(d''φ ∧ T) - d''φ ∧ ∂'T`.
    pub via_boundaries: bool,
    /// `D · T = d'd''(φT)`, checked when `d'T = d''T = 0`.
    pub closed_collapse: Option<bool>,
}

impl CornerLocusReport {
    pub fn all_hold(&self) -> bool {
        self.via_derivatives && self.via_boundaries && self.closed_collapse.unwrap_or(true)
    }
}

pub fn corner_locus_identity_check(phi: &PLFunction, t: &DeltaForm) -> Result<CornerLocusReport> {
    let direct = divisor_intersect(phi, t)?;
    let dsphi = phi.dsecond();
    let dst = t.ps_multiply(&dsphi)?;
    let via_d = dst.d_prime()? + t.d_prime()?.ps_multiply(&dsphi)?;
    let via_b = -(dst.boundary_prime()? + t.boundary_prime()?.ps_multiply(&dsphi)?);
    let closed = t.d_prime()?.refined().is_zero() && t.d_second()?.refined().is_zero();
    let closed_collapse = if closed {
        let phit = t.ps_multiply(&phi.to_piecewise())?;
        Some(phit.d_second()?.d_prime()?.equals(&direct))
    } else {
        None
    };
    Ok(CornerLocusReport { via_derivatives: via_d.equals(&direct), via_boundaries: via_b.equals(&direct), closed_collapse })
}
