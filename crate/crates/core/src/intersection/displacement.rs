//! Transversal products and the fan displacement rule.
//!
//! Displacement is decided exactly over `ℚ[ε]`: a pair `(σ₁, σ₂)` survives
//! when `σ₁ ∩ (εv + σ₂)` is nonempty for all small `ε > 0`, which is an LP
//! over the ordered ring with `ε` in the right-hand side only.

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::delta::{transfer, DeltaForm};
use crate::error::{Error, Result};
use crate::exact::lattice::Lattice;
use crate::exact::rational::{self, Rational};
use crate::exact::{dot, EpsRational, Extremum, LinearSystem};
use crate::polyhedra::{stable_weight, Polyhedron, Weight};
use crate::superforms::SuperForm;

/// Cells of one codimension with their chart coefficients.
type Stratum = Vec<(Polyhedron, SuperForm)>;

/// Pure-codimension strata of a current, each refined into a complex.
fn strata(t: &DeltaForm) -> Vec<Stratum> {
    let refined = t.refined();
    let mut by_dim: std::collections::BTreeMap<usize, Stratum> = Default::default();
    for (c, a) in refined.terms() {
        by_dim.entry(c.dim()).or_default().push((c.clone(), a.clone()));
    }
    by_dim.into_values().collect()
}

fn spans_add_up(a: &Polyhedron, b: &Polyhedron) -> bool {
    let n = a.ambient_dim();
    let mut gens = a.lattice().basis().to_vec();
    gens.extend(b.lattice().basis().iter().cloned());
    Lattice::generated_by(n, &gens).rank() == n
}

/// Expected dimension of a transversal intersection, if nonnegative.
fn expected_dim(a: &Polyhedron, b: &Polyhedron) -> Option<usize> {
    (a.dim() + b.dim()).checked_sub(a.ambient_dim())
}

/// `α₁ ∧ α₂ ∧ [σ₁ ∩ σ₂, μ₁ ∩ μ₂]` on `x = σ₁ ∩ σ₂`.
fn pair_term(s1: &Polyhedron, a1: &SuperForm, s2: &Polyhedron, a2: &SuperForm, x: &Polyhedron) -> Result<SuperForm> {
    let w = stable_weight(&Weight::canonical(s1.lattice().clone()), &Weight::canonical(s2.lattice().clone()))?;
    debug_assert_eq!(&w.span, x.lattice());
    Ok(transfer(a1, s1, x).wedge(&transfer(a2, s2, x)).scale(&w.lambda))
}

/// Why a pair of cells fails transversality or genericity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairFailure {
    pub first: Polyhedron,
    pub second: Polyhedron,
    pub reason: String,
}

impl std::fmt::Display for PairFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} and {}: {}", self.first, self.second, self.reason)
    }
}

fn transversal_pair(s1: &Polyhedron, s2: &Polyhedron) -> std::result::Result<Option<Polyhedron>, PairFailure> {
    let Some(x) = s1.intersect(s2) else { return Ok(None) };
    let fail = |reason: &str| PairFailure { first: s1.clone(), second: s2.clone(), reason: reason.into() };
    if !spans_add_up(s1, s2) {
        return Err(fail("linear spans do not add up to the ambient space"));
    }
    if Some(x.dim()) != expected_dim(s1, s2) {
        return Err(fail("intersection has the wrong codimension"));
    }
    let p = x.interior_point();
    if !s1.contains_point_in_relative_interior(p) || !s2.contains_point_in_relative_interior(p) {
        return Err(fail("intersection lies in the boundary of a cell"));
    }
    Ok(Some(x))
}

/// `S ∧ T` for transversally intersecting complexes:
/// `Σ α_{σ₁} ∧ β_{σ₂} ∧ [σ₁ ∩ σ₂, μ_{σ₁} ∩ ν_{σ₂}]`.
pub fn transversal_product(s: &DeltaForm, t: &DeltaForm) -> Result<DeltaForm> {
    let n = s.ambient_dim();
    if t.ambient_dim() != n {
        return Err(Error::Dimension("factors live on different spaces".into()));
    }
    let mut out = DeltaForm::zero(n);
    for st1 in strata(s) {
        for st2 in strata(t) {
            let pairs: Vec<(&(Polyhedron, SuperForm), &(Polyhedron, SuperForm))> =
                st1.iter().flat_map(|a| st2.iter().map(move |b| (a, b))).collect();
            let parts: Vec<Result<Option<(Polyhedron, SuperForm)>>> = pairs
                .par_iter()
                .map(|((s1, a1), (s2, a2))| match transversal_pair(s1, s2) {
                    Err(f) => Err(Error::NotTransversal(Box::new(f))),
                    Ok(None) => Ok(None),
                    Ok(Some(x)) => pair_term(s1, a1, s2, a2, &x).map(|c| Some((x, c))),
                })
                .collect();
            for p in parts {
                if let Some((x, c)) = p? {
                    out.add_chart_term(x, c);
                }
            }
        }
    }
    Ok(out)
}

/// The system `σ₁ ∩ (εv + σ₂)` over `ℚ[ε]`, optionally with a slack
/// variable `t` subtracted from every inequality and bounded by 1.
fn displaced_system(s1: &Polyhedron, s2: &Polyhedron, v: &[Rational], slack: bool) -> LinearSystem<EpsRational> {
    let n = s1.ambient_dim();
    let width = if slack { n + 1 } else { n };
    let widen = |a: &[Rational], t: Rational| {
        let mut row = a.to_vec();
        if slack {
            row.push(t);
        }
        row
    };
    let mut sys = LinearSystem::new(width);
    for (a, b) in s1.equalities() {
        sys.eqs.push((widen(a, Rational::zero()), EpsRational::constant(b.clone())));
    }
    for (a, b) in s2.equalities() {
        sys.eqs.push((widen(a, Rational::zero()), EpsRational::linear(b.clone(), dot(a, v))));
    }
    for (a, b) in s1.inequalities() {
        sys.ineqs.push((widen(a, Rational::one()), EpsRational::constant(b.clone())));
    }
    for (a, b) in s2.inequalities() {
        sys.ineqs.push((widen(a, Rational::one()), EpsRational::linear(b.clone(), dot(a, v))));
    }
    if slack {
        let mut row = vec![Rational::zero(); n];
        row.push(Rational::one());
        sys.ineqs.push((row, EpsRational::constant(Rational::one())));
    }
    sys
}

/// Outcome for one pair under displacement by `εv`.
enum Displaced {
    Empty,
    Transversal,
}

fn displaced_pair(s1: &Polyhedron, s2: &Polyhedron, v: &[Rational]) -> std::result::Result<Displaced, PairFailure> {
    if !displaced_system(s1, s2, v, false).is_feasible() {
        return Ok(Displaced::Empty);
    }
    let fail = |reason: &str| PairFailure { first: s1.clone(), second: s2.clone(), reason: reason.into() };
    if !spans_add_up(s1, s2) {
        return Err(fail("displaced cells meet but their spans do not add up to the ambient space"));
    }
    let n = s1.ambient_dim();
    let mut c = vec![Rational::zero(); n];
    c.push(Rational::one());
    match displaced_system(s1, s2, v, true).extremum(&c, true) {
        Extremum::Optimal { value, .. } if value.signum() > 0 => Ok(Displaced::Transversal),
        _ => Err(fail("displaced cells meet only along their boundaries")),
    }
}

/// Result of a genericity test with the first failing pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Genericity {
    pub generic: bool,
    #[serde(with = "rational::vec_as_str")]
    pub vector: Vec<Rational>,
    pub failure: Option<PairFailure>,
}

/// Decide whether `εv + 𝒯₂` meets `𝒯₁` transversally for all small `ε > 0`.
pub fn is_generic(v: &[Rational], s: &DeltaForm, t: &DeltaForm) -> Result<Genericity> {
    let n = s.ambient_dim();
    if t.ambient_dim() != n || v.len() != n {
        return Err(Error::Dimension("displacement vector and factors disagree on dimension".into()));
    }
    for st1 in strata(s) {
        for st2 in strata(t) {
            let pairs: Vec<(&Polyhedron, &Polyhedron)> =
                st1.iter().flat_map(|(a, _)| st2.iter().map(move |(b, _)| (a, b))).collect();
            let failure = pairs.par_iter().map(|(a, b)| displaced_pair(a, b, v).err()).collect::<Vec<_>>();
            if let Some(f) = failure.into_iter().flatten().next() {
                return Ok(Genericity { generic: false, vector: v.to_vec(), failure: Some(f) });
            }
        }
    }
    Ok(Genericity { generic: true, vector: v.to_vec(), failure: None })
}

/// The `v`-displacement product `lim_{ε→0} S ∧ (εv + T)`: surviving pairs
/// contribute `α_{σ₁} ∧ β_{σ₂} ∧ [σ₁ ∩ σ₂, μ_{σ₁} ∩ ν_{σ₂}]`; pairs whose
/// limit intersection has too small a dimension contribute nothing.
pub fn displacement_product(s: &DeltaForm, t: &DeltaForm, v: &[Rational]) -> Result<DeltaForm> {
    let n = s.ambient_dim();
    if t.ambient_dim() != n || v.len() != n {
        return Err(Error::Dimension("displacement vector and factors disagree on dimension".into()));
    }
    let mut out = DeltaForm::zero(n);
    for st1 in strata(s) {
        for st2 in strata(t) {
            let pairs: Vec<(&(Polyhedron, SuperForm), &(Polyhedron, SuperForm))> =
                st1.iter().flat_map(|a| st2.iter().map(move |b| (a, b))).collect();
            let parts: Vec<Result<Option<(Polyhedron, SuperForm)>>> = pairs
                .par_iter()
                .map(|((s1, a1), (s2, a2))| match displaced_pair(s1, s2, v) {
                    Err(f) => Err(Error::NotGeneric(Box::new(f))),
                    Ok(Displaced::Empty) => Ok(None),
                    Ok(Displaced::Transversal) => {
                        let x = s1.intersect(s2).expect("limits of nonempty sets are nonempty");
                        if Some(x.dim()) != expected_dim(s1, s2) {
                            return Ok(None);
                        }
                        pair_term(s1, a1, s2, a2, &x).map(|c| Some((x, c)))
                    }
                })
                .collect();
            for p in parts {
                if let Some((x, c)) = p? {
                    out.add_chart_term(x, c);
                }
            }
        }
    }
    Ok(out)
}


/// Deterministic search for a generic vector among `(1, k, k², …)` for the
/// first ten primes `k`. Returns the last failing verdict if none is generic.
pub fn find_generic_vector(s: &DeltaForm, t: &DeltaForm) -> Result<Genericity> {
    let n = s.ambient_dim();
    let mut last = None;
    for k in [2i64, 3, 5, 7, 11, 13, 17, 19, 23, 29] {
        let v: Vec<Rational> = (0..n as u32).map(|i| Rational::from_integer(k.pow(i).into())).collect();
        let g = is_generic(&v, s, t)?;
        if g.generic {
            return Ok(g);
        }
        last = Some(g);
    }
    Ok(last.expect("at least one candidate"))
}
