//! Products, push-forward, pull-back and pairings of polyhedral currents.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::DeltaForm;
use crate::error::{Error, Result};
use crate::exact::lattice::Lattice;
use crate::exact::rational::{common_denominator, Rational};
use crate::exact::{AffineMap, RatMatrix};
use crate::polyhedra::complex::{cut_by_hyperplanes, hyperplanes};
use crate::polyhedra::{Complex, Polyhedron, WeightedCell};
use crate::superforms::{integrate_top, PiecewiseForm, SuperForm};

/// Covolume of the lattice generated by the columns of `m` relative to
/// `ℤ^{rows}`; the columns must span.
pub(crate) fn image_index(m: &RatMatrix) -> Rational {
    let rows = m.nrows();
    if rows == 0 {
        return Rational::one();
    }
    let den = common_denominator(m.rows().iter().flatten());
    let cols: Vec<Vec<BigInt>> = (0..m.ncols())
        .map(|j| m.column(j).iter().map(|x| (x * Rational::from_integer(den.clone())).to_integer()).collect())
        .collect();
    let lat = Lattice::generated_by(rows, &cols);
    assert_eq!(lat.rank(), rows, "image lattice must have full rank");
    let det = RatMatrix::from_rows(lat.basis_rational(), rows).expect("square basis").det().abs();
    det / Rational::from_integer(den).pow(rows as i32)
}

/// Map between chart coordinates induced by `f : cell → image`.
fn chart_map(f: &AffineMap, cell: &Polyhedron, image: &Polyhedron) -> AffineMap {
    image.chart().projection().compose(&f.compose(&cell.chart().embedding()))
}

impl DeltaForm {
    /// `α T` for a piecewise form `α`: refine against its cells and multiply
    /// cellwise, `α|_ρ ∧ β_ρ`.
    pub fn ps_multiply(&self, alpha: &PiecewiseForm) -> Result<DeltaForm> {
        if alpha.complex().ambient_dim() != self.n {
            return Err(Error::Dimension("piecewise form and current live on different spaces".into()));
        }
        let mut out = DeltaForm::zero(self.n);
        for (sigma, beta) in &self.terms {
            for (m, a) in alpha.pieces() {
                let Some(piece) = sigma.intersect(m) else { continue };
                if piece.dim() != sigma.dim() {
                    continue;
                }
                let coef = a.restrict(&piece)?.wedge(beta);
                out.add_chart_term(piece, coef);
            }
        }
        Ok(out.assume_refined(self.refined))
    }

    /// `S ⊠ T` on `ℝⁿ × ℝᵐ`: `α₁ ∧ α₂ ∧ [σ₁ × σ₂, μ₁ ∧ μ₂]`.
    pub fn exterior_product(&self, other: &DeltaForm) -> DeltaForm {
        let (n, m) = (self.n, other.n);
        let left = AffineMap::coordinate_projection(n + m, &(0..n).collect::<Vec<_>>());
        let right = AffineMap::coordinate_projection(n + m, &(n..n + m).collect::<Vec<_>>());
        let pairs: Vec<(&Polyhedron, &SuperForm, &Polyhedron, &SuperForm)> = self
            .terms
            .iter()
            .flat_map(|(s1, a1)| other.terms.iter().map(move |(s2, a2)| (s1, a1, s2, a2)))
            .collect();
        let parts: Vec<(Polyhedron, SuperForm)> = pairs
            .par_iter()
            .map(|(s1, a1, s2, a2)| {
                let cell = s1.product(s2);
                let emb = cell.chart().embedding();
                let to1 = s1.chart().projection().compose(&left.compose(&emb));
                let to2 = s2.chart().projection().compose(&right.compose(&emb));
                (cell, a1.pullback(&to1).wedge(&a2.pullback(&to2)))
            })
            .collect();
        let mut out = DeltaForm::zero(n + m);
        for (c, a) in parts {
            out.add_chart_term(c, a);
        }
        let pure = |t: &DeltaForm| t.refined && t.terms.keys().map(|c| c.dim()).collect::<std::collections::BTreeSet<_>>().len() <= 1;
        out.assume_refined(pure(self) && pure(other))
    }

    /// `f_* T` for an affine map proper on the support of `T`.
    pub fn pushforward(&self, f: &AffineMap) -> Result<DeltaForm> {
        if f.source_dim() != self.n {
            return Err(Error::Dimension(format!("map from ℝ^{} applied to a current on ℝ^{}", f.source_dim(), self.n)));
        }
        let m = f.target_dim();
        let kernel_eqs: Vec<(Vec<Rational>, Rational)> =
            (0..m).map(|i| (f.matrix().row(i).to_vec(), Rational::zero())).collect();
        let mut out = DeltaForm::zero(m);
        for (sigma, alpha) in &self.terms {
            let rc = sigma.recession_cone();
            if rc.restrict(&kernel_eqs, &[]).is_some_and(|c| c.dim() > 0) {
                return Err(Error::NonProper(sigma.to_string()));
            }
            let h = f.compose(&sigma.chart().embedding());
            if !h.is_injective() {
                let drop = sigma.dim() - h.rank();
                if alpha.bidegrees().iter().all(|&(p, q)| p.min(q) < drop) {
                    continue;
                }
                return Err(Error::NonInjective(sigma.to_string()));
            }
            let image = sigma.image(f)?;
            let g = chart_map(f, sigma, &image);
            let k = g.matrix().det().abs();
            let ginv = g.inverse().expect("injective between equal dimensions");
            out.add_chart_term(image, alpha.pullback(&ginv).scale(&k));
        }
        Ok(out.assume_refined(self.refined && f.is_injective()))
    }

    /// `f^* S` for a surjective affine map `f : ℝⁿ → ℝᵐ`.
    pub fn pullback_surjective(&self, f: &AffineMap) -> Result<DeltaForm> {
        if f.target_dim() != self.n {
            return Err(Error::Dimension(format!("map into ℝ^{} pulls back a current on ℝ^{}", f.target_dim(), self.n)));
        }
        if !f.is_surjective() {
            return Err(Error::Precondition("pull-back along a map that is not surjective".into()));
        }
        let n = f.source_dim();
        let cf = image_index(f.matrix());
        let mut out = DeltaForm::zero(n);
        for (sigma, alpha) in &self.terms {
            let pre = sigma.preimage(f).expect("surjective maps have nonempty preimages");
            let h = chart_map(f, &pre, sigma);
            let j = image_index(h.matrix());
            out.add_chart_term(pre, alpha.pullback(&h).scale(&(&cf / j)));
        }
        Ok(out.assume_refined(self.refined))
    }

    /// `T(η) = Σ ∫_{σ ∩ W} α_σ ∧ η` over a bounded window `W`.
    pub fn eval_pairing(&self, eta: &SuperForm, window: &Polyhedron) -> Result<Rational> {
        if eta.nvars() != self.n || window.ambient_dim() != self.n {
            return Err(Error::Dimension("test form, window and current disagree on dimension".into()));
        }
        if !window.is_bounded() {
            return Err(Error::Precondition(format!("pairing window {window} is unbounded")));
        }
        let eta_bideg = eta.bidegree();
        let parts: Vec<Result<Rational>> = self
            .terms
            .par_iter()
            .map(|(sigma, alpha)| {
                let d = sigma.dim();
                if let Some((a, b)) = eta_bideg {
                    if let Some(&(p, q)) = alpha.bidegrees().iter().find(|&&(p, q)| p + a != d || q + b != d) {
                        return Err(Error::Precondition(format!(
                            "coefficient of bidegree ({p},{q}) on a {d}-cell cannot pair with a form of bidegree ({a},{b})"
                        )));
                    }
                }
                let Some(piece) = sigma.intersect(window) else { return Ok(Rational::zero()) };
                if piece.dim() < d {
                    return Ok(Rational::zero());
                }
                let top = alpha.wedge(&eta.restrict(&piece)?).component(d, d);
                integrate_top(&top, &WeightedCell::canonical(piece))
            })
            .collect();
        parts.into_iter().sum()
    }

    /// The piecewise form `α` with `T = α ∧ [ℝⁿ, μ_std]`, for a balanced
    /// current supported in codimension zero.
    pub fn as_piecewise_form(&self) -> Result<PiecewiseForm> {
        if self.terms.keys().any(|c| c.dim() != self.n) {
            return Err(Error::Precondition("piecewise forms live on full-dimensional cells only".into()));
        }
        self.require_balanced()?;
        let planes = hyperplanes(self.terms.keys());
        let pieces = cut_by_hyperplanes(&Polyhedron::whole(self.n), &planes);
        let complex = Complex::from_maximal(self.n, pieces)?;
        let forms = complex
            .maximal()
            .iter()
            .map(|m| {
                self.terms
                    .iter()
                    .filter(|(s, _)| s.contains(m))
                    .fold(SuperForm::zero(self.n), |acc, (_, a)| acc + a.clone())
            })
            .collect();
        PiecewiseForm::new(complex, forms).map_err(|e| match e {
            Error::Invalid(msg) => Error::Incompatible(msg),
            other => other,
        })
    }

    /// `α ∧ [ℝⁿ, μ_std]` for a piecewise form.
    pub fn from_piecewise(alpha: &PiecewiseForm) -> DeltaForm {
        let n = alpha.complex().ambient_dim();
        let mut out = DeltaForm::zero(n);
        for (m, a) in alpha.pieces() {
            out.add_chart_term(m.clone(), a.restrict(m).expect("ambient form"));
        }
        out
    }
}

