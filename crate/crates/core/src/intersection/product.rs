//! The ∧-product by restriction to the diagonal and the general pull-back.

use num_traits::{One, Zero};

use super::divisor::divisor_intersect;
use crate::delta::DeltaForm;
use crate::error::{Error, Result};
use crate::exact::rational::Rational;
use crate::exact::AffineMap;
use crate::polyhedra::{Polyhedron, WeightedCell};
use crate::superforms::{Affine, PLFunction};

fn unit(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[i] = Rational::one();
    v
}

/// `max{x_i, y_i}` on `ℝⁿ × ℝⁿ`.
pub fn diagonal_function(n: usize, i: usize) -> PLFunction {
    let fns = [Affine::new(unit(2 * n, i), Rational::zero()), Affine::new(unit(2 * n, n + i), Rational::zero())];
    PLFunction::max_of(2 * n, &fns).expect("two distinct linear functions")
}

fn first_factor(n: usize, m: usize) -> AffineMap {
    AffineMap::coordinate_projection(n + m, &(0..n).collect::<Vec<_>>())
}

/// `S ∧ T := p_{1,*}(D_1 ⋯ D_n · (S × T))` with `D_i` the corner locus of
/// `max{x_i, y_i}`, applied for `i = n, …, 1`.
pub fn wedge_diagonal(s: &DeltaForm, t: &DeltaForm) -> Result<DeltaForm> {
    let n = s.ambient_dim();
    if t.ambient_dim() != n {
        return Err(Error::Dimension("factors live on different spaces".into()));
    }
    s.require_balanced()?;
    t.require_balanced()?;
    let mut p = s.exterior_product(t);
    for i in (0..n).rev() {
        p = divisor_intersect(&diagonal_function(n, i), &p)?;
    }
    p.pushforward(&first_factor(n, n))
}

/// `f^*S := p_{1,*}(Γ_f ∧ p₂^*S)` for an affine map `f : ℝⁿ → ℝᵐ`, computed
/// as `p_{1,*}(D_1 ⋯ D_m · (ℝⁿ × S))` with `D_j` the corner locus of
/// `max{y_j, f_j(x)}`, applied for `j = m, …, 1`.
pub fn pullback_general(f: &AffineMap, s: &DeltaForm) -> Result<DeltaForm> {
    let (n, m) = (f.source_dim(), f.target_dim());
    if s.ambient_dim() != m {
        return Err(Error::Dimension(format!("map into ℝ^{m} pulls back a current on ℝ^{}", s.ambient_dim())));
    }
    s.require_balanced()?;
    let whole = DeltaForm::cycle(n, &[WeightedCell::canonical(Polyhedron::whole(n))])?;
    let mut p = whole.exterior_product(s);
    for j in (0..m).rev() {
        let mut fx: Vec<Rational> = f.matrix().row(j).to_vec();
        fx.extend(std::iter::repeat_n(Rational::zero(), m));
        let fns = [Affine::new(unit(n + m, n + j), Rational::zero()), Affine::new(fx, f.offset()[j].clone())];
        let phi = PLFunction::max_of(n + m, &fns)?;
        p = divisor_intersect(&phi, &p)?;
    }
    p.pushforward(&first_factor(n, m))
}

/// `Γ_f = (id, f)_*[ℝⁿ, μ_std]` on `ℝⁿ × ℝᵐ`.
pub fn graph(f: &AffineMap) -> Result<DeltaForm> {
    let n = f.source_dim();
    let g = AffineMap::identity(n).stack(f);
    DeltaForm::cycle(n, &[WeightedCell::canonical(Polyhedron::whole(n))])?.pushforward(&g)
}
