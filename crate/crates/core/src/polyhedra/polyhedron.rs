//! Rational polyhedra in H-representation with a canonical irredundant form.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::lattice::{integer_kernel, Lattice};
use crate::exact::lp::{Extremum, Feasibility, LinearSystem};
use crate::exact::matrix::{dot, rref, RatMatrix};
use crate::exact::rational::{primitive_integer, to_rationals, Rational};
use crate::exact::AffineMap;

/// A linear constraint `a · x (≤ or =) b`.
pub type Constraint = (Vec<Rational>, Rational);

/// A nonempty rational polyhedron `{x : E x = e, A x ≤ b}` in canonical form.
///
/// The equalities are the reduced row echelon form of the affine hull. Each
/// inequality is reduced modulo the equalities (zero in every pivot column),
/// scaled so that its normal is a primitive integer vector, irredundant, and
/// the list is sorted. Two polyhedra are equal iff they are the same set.
#[derive(Clone)]
pub struct Polyhedron(Arc<Inner>);

struct Inner {
    n: usize,
    eqs: Vec<Constraint>,
    ineqs: Vec<Constraint>,
    chart: Chart,
    interior: Vec<Rational>,
    facets: OnceLock<Vec<Polyhedron>>,
    bounded: OnceLock<bool>,
}

/// Intrinsic affine coordinates on the affine span `L` of a polyhedron.
///
/// `x = base + Σ u_k basis[k]`, where `basis` is the canonical basis of the
/// saturated lattice `N ∩ ℤⁿ` and `base` is the unique point of `L` whose
/// coordinates vanish at the pivot positions of the basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Chart {
    base: Vec<Rational>,
    lattice: Lattice,
    pivots: Vec<usize>,
    /// Inverse of the basis restricted to the pivot rows.
    pivot_inverse: RatMatrix,
}

impl Chart {
    fn new(base_point: &[Rational], lattice: Lattice) -> Self {
        let pivots = lattice.pivots();
        let d = lattice.rank();
        let basis = lattice.basis_rational();
        let mut bp = RatMatrix::zeros(d, d);
        for (j, &p) in pivots.iter().enumerate() {
            for (k, b) in basis.iter().enumerate() {
                bp.set(j, k, b[p].clone());
            }
        }
        let pivot_inverse = bp.inverse().expect("Hermite basis restricted to pivots is invertible");
        let mut chart = Chart { base: vec![Rational::zero(); base_point.len()], lattice, pivots, pivot_inverse };
        let u = chart.to_chart(base_point);
        let shift = chart.vector_to_ambient(&u);
        chart.base = base_point.iter().zip(shift).map(|(x, s)| x - s).collect();
        chart
    }

    pub fn ambient_dim(&self) -> usize {
        self.base.len()
    }

    pub fn dim(&self) -> usize {
        self.lattice.rank()
    }

    pub fn base(&self) -> &[Rational] {
        &self.base
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn basis(&self) -> Vec<Vec<Rational>> {
        self.lattice.basis_rational()
    }

    pub fn to_ambient(&self, u: &[Rational]) -> Vec<Rational> {
        self.vector_to_ambient(u).into_iter().zip(&self.base).map(|(v, b)| v + b).collect()
    }

    pub fn vector_to_ambient(&self, u: &[Rational]) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); self.ambient_dim()];
        for (uk, b) in u.iter().zip(self.lattice.basis()) {
            if uk.is_zero() {
                continue;
            }
            for (xi, bi) in x.iter_mut().zip(b) {
                if !bi.is_zero() {
                    *xi += uk * Rational::from_integer(bi.clone());
                }
            }
        }
        x
    }

    /// Chart coordinates of a point of the affine span.
    pub fn to_chart(&self, x: &[Rational]) -> Vec<Rational> {
        let xp: Vec<Rational> = self.pivots.iter().map(|&p| &x[p] - &self.base[p]).collect();
        self.pivot_inverse.mul_vec(&xp)
    }

    /// Chart coordinates of a direction vector in `N`.
    pub fn vector_to_chart(&self, v: &[Rational]) -> Vec<Rational> {
        let vp: Vec<Rational> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        self.pivot_inverse.mul_vec(&vp)
    }

    /// The parametrization `u ↦ x` as an affine map `ℝ^d → ℝⁿ`.
    pub fn embedding(&self) -> AffineMap {
        let m = RatMatrix::from_columns(&self.basis(), self.ambient_dim());
        AffineMap::new(m, self.base.clone()).expect("shapes agree")
    }

    /// An affine map `ℝⁿ → ℝ^d` restricting to the inverse of the
    /// parametrization on the affine span.
    pub fn projection(&self) -> AffineMap {
        let d = self.dim();
        let n = self.ambient_dim();
        let mut m = RatMatrix::zeros(d, n);
        for i in 0..d {
            for (j, &p) in self.pivots.iter().enumerate() {
                m.set(i, p, self.pivot_inverse.get(i, j).clone());
            }
        }
        let off: Vec<Rational> = m.mul_vec(&self.base).into_iter().map(|x| -x).collect();
        AffineMap::new(m, off).expect("shapes agree")
    }

    /// The affine map from `other`'s chart coordinates to this chart's,
    /// valid when `other`'s affine span lies inside this one.
    pub fn transition_from(&self, other: &Chart) -> AffineMap {
        self.projection().compose(&other.embedding())
    }
}

impl Polyhedron {
    /// Canonical polyhedron of a constraint system, or `None` when empty.
    pub fn new(n: usize, eqs: Vec<Constraint>, ineqs: Vec<Constraint>) -> Result<Option<Polyhedron>> {
        for (a, _) in eqs.iter().chain(ineqs.iter()) {
            if a.len() != n {
                return Err(Error::Dimension(format!("constraint of length {} in ambient dimension {n}", a.len())));
            }
        }
        Ok(canonicalize(n, eqs, ineqs).map(|inner| Polyhedron(Arc::new(inner))))
    }

    pub fn from_ineqs(n: usize, ineqs: Vec<Constraint>) -> Result<Option<Polyhedron>> {
        Self::new(n, vec![], ineqs)
    }

    /// Like [`Polyhedron::new`] but treats emptiness as an error.
    pub fn nonempty(n: usize, eqs: Vec<Constraint>, ineqs: Vec<Constraint>) -> Result<Polyhedron> {
        Self::new(n, eqs, ineqs)?.ok_or_else(|| Error::Degenerate("empty polyhedron".into()))
    }

    pub fn whole(n: usize) -> Polyhedron {
        Self::nonempty(n, vec![], vec![]).expect("ℝⁿ is nonempty")
    }

    pub fn point(p: &[Rational]) -> Polyhedron {
        let n = p.len();
        let eqs = (0..n).map(|i| (unit(n, i), p[i].clone())).collect();
        Self::nonempty(n, eqs, vec![]).expect("a point is nonempty")
    }

    /// Axis-parallel box `∏ [lo_i, hi_i]`.
    pub fn cube(lo: &[Rational], hi: &[Rational]) -> Result<Polyhedron> {
        let n = lo.len();
        let mut ineqs = Vec::new();
        for i in 0..n {
            ineqs.push((unit(n, i), hi[i].clone()));
            ineqs.push((unit(n, i).into_iter().map(|x| -x).collect(), -lo[i].clone()));
        }
        Self::nonempty(n, vec![], ineqs)
    }

    /// Convex hull of `d + 1` affinely independent points spanning `ℝ^d`.
    pub fn simplex(vertices: &[Vec<Rational>]) -> Result<Polyhedron> {
        let d = vertices.len().saturating_sub(1);
        if vertices.iter().any(|v| v.len() != d) || vertices.is_empty() {
            return Err(Error::Dimension("simplex needs d + 1 points in ℝ^d".into()));
        }
        // Barycentric coordinates: λ_i(x) ≥ 0 for every vertex i.
        let cols: Vec<Vec<Rational>> = vertices[1..].iter().map(|v| sub(v, &vertices[0])).collect();
        let m = RatMatrix::from_columns(&cols, d);
        let inv = m.inverse().ok_or_else(|| Error::Degenerate("simplex vertices are affinely dependent".into()))?;
        let mut ineqs = Vec::new();
        let mut sum = vec![Rational::zero(); d];
        for i in 0..d {
            let row = inv.row(i).to_vec();
            let c = dot(&row, &vertices[0]);
            for (s, r) in sum.iter_mut().zip(&row) {
                *s += r;
            }
            ineqs.push((row.iter().map(|x| -x.clone()).collect(), -c));
        }
        let c = dot(&sum, &vertices[0]);
        ineqs.push((sum, Rational::one() + c));
        Self::nonempty(d, vec![], ineqs)
    }

    pub fn ambient_dim(&self) -> usize {
        self.0.n
    }

    pub fn dim(&self) -> usize {
        self.0.n - self.0.eqs.len()
    }

    pub fn codim(&self) -> usize {
        self.0.eqs.len()
    }

    pub fn equalities(&self) -> &[Constraint] {
        &self.0.eqs
    }

    pub fn inequalities(&self) -> &[Constraint] {
        &self.0.ineqs
    }

    pub fn chart(&self) -> &Chart {
        &self.0.chart
    }

    /// A point in the relative interior.
    pub fn interior_point(&self) -> &[Rational] {
        &self.0.interior
    }

    /// The saturated lattice `N ∩ ℤⁿ` of the linear span of differences.
    pub fn lattice(&self) -> &Lattice {
        self.0.chart.lattice()
    }

    /// The whole system with every equality written as two inequalities.
    pub fn as_inequalities(&self) -> Vec<Constraint> {
        let mut out = Vec::new();
        for (a, b) in &self.0.eqs {
            out.push((a.clone(), b.clone()));
            out.push((a.iter().map(|x| -x.clone()).collect(), -b.clone()));
        }
        out.extend(self.0.ineqs.iter().cloned());
        out
    }

    pub fn system(&self) -> LinearSystem<Rational> {
        LinearSystem { n: self.0.n, eqs: self.0.eqs.clone(), ineqs: self.0.ineqs.clone() }
    }

    pub fn contains_point(&self, x: &[Rational]) -> bool {
        self.0.eqs.iter().all(|(a, b)| dot(a, x) == *b) && self.0.ineqs.iter().all(|(a, b)| dot(a, x) <= *b)
    }

    pub fn contains_point_in_relative_interior(&self, x: &[Rational]) -> bool {
        self.0.eqs.iter().all(|(a, b)| dot(a, x) == *b) && self.0.ineqs.iter().all(|(a, b)| dot(a, x) < *b)
    }

    /// Set inclusion `other ⊆ self`.
    pub fn contains(&self, other: &Polyhedron) -> bool {
        if self.0.n != other.0.n {
            return false;
        }
        let sys = other.system();
        let within = |a: &[Rational], b: &Rational, maximize: bool| match sys.extremum(a, maximize) {
            Extremum::Optimal { value, .. } => {
                if maximize {
                    value <= *b
                } else {
                    value >= *b
                }
            }
            _ => false,
        };
        self.0.eqs.iter().all(|(a, b)| within(a, b, true) && within(a, b, false))
            && self.0.ineqs.iter().all(|(a, b)| within(a, b, true))
    }

    pub fn intersect(&self, other: &Polyhedron) -> Option<Polyhedron> {
        assert_eq!(self.0.n, other.0.n, "intersecting polyhedra of different ambient dimension");
        let mut eqs = self.0.eqs.clone();
        eqs.extend(other.0.eqs.iter().cloned());
        let mut ineqs = self.0.ineqs.clone();
        ineqs.extend(other.0.ineqs.iter().cloned());
        Polyhedron::new(self.0.n, eqs, ineqs).expect("dimensions agree")
    }

    /// Intersection with an extra system of constraints.
    pub fn restrict(&self, eqs: &[Constraint], ineqs: &[Constraint]) -> Option<Polyhedron> {
        let mut e = self.0.eqs.clone();
        e.extend(eqs.iter().cloned());
        let mut i = self.0.ineqs.clone();
        i.extend(ineqs.iter().cloned());
        Polyhedron::new(self.0.n, e, i).expect("dimensions agree")
    }

    /// Facets, one per irredundant inequality, in canonical order.
    pub fn facets(&self) -> &[Polyhedron] {
        self.0.facets.get_or_init(|| {
            let mut out: Vec<Polyhedron> = self
                .0
                .ineqs
                .iter()
                .map(|c| self.restrict(std::slice::from_ref(c), &[]).expect("facets of a nonempty polyhedron are nonempty"))
                .collect();
            out.sort();
            out.dedup();
            out
        })
    }

    /// All nonempty faces, including the polyhedron itself, sorted.
    pub fn faces(&self) -> Vec<Polyhedron> {
        let mut seen: BTreeSet<Polyhedron> = BTreeSet::new();
        let mut stack = vec![self.clone()];
        while let Some(p) = stack.pop() {
            if seen.insert(p.clone()) {
                stack.extend(p.facets().iter().cloned());
            }
        }
        seen.into_iter().collect()
    }

    pub fn is_face_of(&self, other: &Polyhedron) -> bool {
        if self == other {
            return true;
        }
        if self.dim() >= other.dim() || !other.contains(self) {
            return false;
        }
        other.facets().iter().any(|f| self.is_face_of(f))
    }

    pub fn is_facet_of(&self, other: &Polyhedron) -> bool {
        self.dim() + 1 == other.dim() && other.facets().contains(self)
    }

    pub fn is_bounded(&self) -> bool {
        *self.0.bounded.get_or_init(|| self.recession_cone().dim() == 0)
    }

    /// `{v : a·v ≤ 0, e·v = 0}`.
    pub fn recession_cone(&self) -> Polyhedron {
        let z = |c: &Constraint| (c.0.clone(), Rational::zero());
        Polyhedron::nonempty(self.0.n, self.0.eqs.iter().map(z).collect(), self.0.ineqs.iter().map(z).collect())
            .expect("cones contain the origin")
    }

    /// The polyhedron expressed in its own chart coordinates, full
    /// dimensional in `ℝ^{dim}`.
    pub fn in_chart(&self) -> Polyhedron {
        let ch = self.chart();
        let basis = ch.basis();
        let ineqs = self
            .0
            .ineqs
            .iter()
            .map(|(a, b)| (basis.iter().map(|v| dot(a, v)).collect(), b - dot(a, ch.base())))
            .collect();
        Polyhedron::nonempty(self.dim(), vec![], ineqs).expect("chart image of a nonempty polyhedron")
    }

    /// `{x : f(x) ∈ self}` for an affine map `f` into this ambient space.
    pub fn preimage(&self, f: &AffineMap) -> Option<Polyhedron> {
        assert_eq!(f.target_dim(), self.0.n, "preimage along a map with the wrong target");
        let pull = |(a, b): &Constraint| {
            let at: Vec<Rational> = (0..f.source_dim())
                .map(|j| (0..self.0.n).map(|i| &a[i] * f.matrix().get(i, j)).sum())
                .collect();
            (at, b - dot(a, f.offset()))
        };
        Polyhedron::new(
            f.source_dim(),
            self.0.eqs.iter().map(pull).collect(),
            self.0.ineqs.iter().map(pull).collect(),
        )
        .expect("dimensions agree")
    }

    /// Image under an affine map that is injective on the affine span.
    pub fn image(&self, f: &AffineMap) -> Result<Polyhedron> {
        assert_eq!(f.source_dim(), self.0.n, "image along a map with the wrong source");
        let h = f.compose(&self.chart().embedding());
        if !h.is_injective() {
            return Err(Error::NonInjective(self.to_string()));
        }
        image_of_full(&self.in_chart(), &h)
    }

    pub fn translate(&self, v: &[Rational]) -> Polyhedron {
        let shift = |(a, b): &Constraint| (a.clone(), b + dot(a, v));
        Polyhedron::nonempty(self.0.n, self.0.eqs.iter().map(shift).collect(), self.0.ineqs.iter().map(shift).collect())
            .expect("translation preserves nonemptiness")
    }

    /// Cartesian product `self × other ⊂ ℝ^{n+m}`.
    pub fn product(&self, other: &Polyhedron) -> Polyhedron {
        let (n, m) = (self.0.n, other.0.n);
        let left = |(a, b): &Constraint| {
            let mut v = a.clone();
            v.extend(std::iter::repeat_n(Rational::zero(), m));
            (v, b.clone())
        };
        let right = |(a, b): &Constraint| {
            let mut v = vec![Rational::zero(); n];
            v.extend(a.iter().cloned());
            (v, b.clone())
        };
        let eqs = self.0.eqs.iter().map(left).chain(other.0.eqs.iter().map(right)).collect();
        let ineqs = self.0.ineqs.iter().map(left).chain(other.0.ineqs.iter().map(right)).collect();
        Polyhedron::nonempty(n + m, eqs, ineqs).expect("products of nonempty sets are nonempty")
    }

    /// Vertices of a pointed polyhedron (empty when there is a lineality space).
    pub fn vertices(&self) -> Vec<Vec<Rational>> {
        self.faces().into_iter().filter(|f| f.dim() == 0).map(|f| f.interior_point().to_vec()).collect()
    }

    /// Maximum or minimum of a linear functional, `None` when unbounded.
    pub fn extremum(&self, c: &[Rational], maximize: bool) -> Option<Rational> {
        match self.system().extremum(c, maximize) {
            Extremum::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }

    fn key(&self) -> (usize, &[Constraint], &[Constraint]) {
        (self.0.n, &self.0.eqs, &self.0.ineqs)
    }
}

/// Image of a full-dimensional polyhedron `p ⊂ ℝ^d` under an injective
/// affine map `h : ℝ^d → ℝᵐ`.
pub(crate) fn image_of_full(p: &Polyhedron, h: &AffineMap) -> Result<Polyhedron> {
    let d = p.ambient_dim();
    let m = h.target_dim();
    let hm = h.matrix();
    // Left kernel of H gives the affine span.
    let ht = hm.transpose();
    let eqs: Vec<Constraint> = ht.kernel().into_iter().map(|k| {
        let b = dot(&k, h.offset());
        (k, b)
    }).collect();
    // Invert H on a set of pivot rows.
    let rows: Vec<Vec<Rational>> = hm.rows().to_vec();
    let piv = rref(RatMatrix::from_rows(rows.clone(), d)?.transpose().rows().to_vec(), m).pivots;
    let sel: Vec<Vec<Rational>> = piv.iter().map(|&i| rows[i].clone()).collect();
    let hq_inv = RatMatrix::from_rows(sel, d)?.inverse().ok_or_else(|| Error::NonInjective("affine map".into()))?;
    let off_q: Vec<Rational> = piv.iter().map(|&i| h.offset()[i].clone()).collect();
    let mut ineqs = Vec::new();
    for (a, b) in p.inequalities() {
        // a · Hq⁻¹ (x_Q − off_Q) ≤ b
        let w: Vec<Rational> = (0..d).map(|j| (0..d).map(|k| &a[k] * hq_inv.get(k, j)).sum()).collect();
        let mut full = vec![Rational::zero(); m];
        for (j, &i) in piv.iter().enumerate() {
            full[i] = w[j].clone();
        }
        ineqs.push((full, b + dot(&w, &off_q)));
    }
    Polyhedron::nonempty(m, eqs, ineqs)
}

fn unit(n: usize, i: usize) -> Vec<Rational> {
    (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect()
}

fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn canonicalize(n: usize, eqs: Vec<Constraint>, mut ineqs: Vec<Constraint>) -> Option<Inner> {
    let mut eqs = eqs;
    let sys = LinearSystem { n, eqs: eqs.clone(), ineqs: ineqs.clone() };
    if let Feasibility::Infeasible(_) = sys.feasibility() {
        return None;
    }
    // Implicit equalities: inequalities that are tight on the whole set.
    if !ineqs.is_empty() && strict_slack(n, &eqs, &ineqs).is_none() {
        let mut i = 0;
        while i < ineqs.len() {
            let sys = LinearSystem { n, eqs: eqs.clone(), ineqs: ineqs.clone() };
            let tight = match sys.extremum(&ineqs[i].0, false) {
                Extremum::Optimal { value, .. } => value == ineqs[i].1,
                _ => false,
            };
            if tight {
                eqs.push(ineqs.remove(i));
            } else {
                i += 1;
            }
        }
    }
    // Affine hull in reduced row echelon form.
    let aug: Vec<Vec<Rational>> = eqs
        .iter()
        .map(|(a, b)| {
            let mut r = a.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let red = rref(aug, n + 1);
    debug_assert!(red.pivots.last() != Some(&n), "feasible system has consistent equalities");
    let eqs: Vec<Constraint> = red.rows.iter().map(|r| (r[..n].to_vec(), r[n].clone())).collect();
    // Reduce, normalize and deduplicate the inequalities.
    let mut reduced: std::collections::BTreeMap<Vec<Rational>, Rational> = Default::default();
    for (mut a, mut b) in ineqs {
        for (r, &p) in red.pivots.iter().enumerate() {
            if a[p].is_zero() {
                continue;
            }
            let f = a[p].clone();
            for k in 0..n {
                let t = &f * &red.rows[r][k];
                a[k] -= t;
            }
            b -= &f * &red.rows[r][n];
        }
        if a.iter().all(Zero::is_zero) {
            continue;
        }
        let ints = primitive_integer(&a);
        let scale = &Rational::from_integer(ints.iter().find(|x| !x.is_zero()).unwrap().clone())
            / a.iter().find(|x| !x.is_zero()).unwrap();
        debug_assert!(scale.is_positive());
        let a = to_rationals(&ints);
        let b = b * scale;
        reduced.entry(a).and_modify(|old| {
            if b < *old {
                *old = b.clone();
            }
        }).or_insert(b);
    }
    let mut ineqs: Vec<Constraint> = reduced.into_iter().collect();
    // Remove redundant inequalities one at a time.
    let mut i = 0;
    while i < ineqs.len() {
        let mut rest = ineqs.clone();
        let (a, b) = rest.remove(i);
        let sys = LinearSystem { n, eqs: eqs.clone(), ineqs: rest };
        let redundant = match sys.extremum(&a, true) {
            Extremum::Optimal { value, .. } => value <= b,
            _ => false,
        };
        if redundant {
            ineqs.remove(i);
        } else {
            i += 1;
        }
    }
    ineqs.sort();
    let interior = match strict_slack(n, &eqs, &ineqs) {
        Some(x) => x,
        None => {
            let sys = LinearSystem { n, eqs: eqs.clone(), ineqs: ineqs.clone() };
            match sys.feasibility() {
                Feasibility::Feasible(x) => x,
                Feasibility::Infeasible(_) => unreachable!("feasibility was established"),
            }
        }
    };
    let ints: Vec<Vec<BigInt>> = eqs.iter().map(|(a, _)| primitive_integer(a)).collect();
    let lattice = Lattice::generated_by(n, &integer_kernel(&ints, n));
    let chart = Chart::new(&interior, lattice);
    Some(Inner { n, eqs, ineqs, chart, interior, facets: OnceLock::new(), bounded: OnceLock::new() })
}

/// A point satisfying every inequality strictly, if one exists.
fn strict_slack(n: usize, eqs: &[Constraint], ineqs: &[Constraint]) -> Option<Vec<Rational>> {
    if ineqs.is_empty() {
        return None;
    }
    let lift = |(a, b): &Constraint, t: Rational| {
        let mut v = a.clone();
        v.push(t);
        (v, b.clone())
    };
    let mut sys = LinearSystem::<Rational>::new(n + 1);
    sys.eqs = eqs.iter().map(|c| lift(c, Rational::zero())).collect();
    sys.ineqs = ineqs.iter().map(|c| lift(c, Rational::one())).collect();
    let mut cap = vec![Rational::zero(); n + 1];
    cap[n] = Rational::one();
    sys.ineqs.push((cap.clone(), Rational::one()));
    match sys.extremum(&cap, true) {
        Extremum::Optimal { value, point } if value.is_positive() => Some(point[..n].to_vec()),
        _ => None,
    }
}

impl PartialEq for Polyhedron {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.key() == other.key()
    }
}

impl Eq for Polyhedron {}

impl PartialOrd for Polyhedron {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Polyhedron {
    /// Lower-dimensional cells first, then lexicographic on the system.
    fn cmp(&self, other: &Self) -> Ordering {
        self.dim().cmp(&other.dim()).then_with(|| self.key().cmp(&other.key()))
    }
}

impl Hash for Polyhedron {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key().hash(state);
    }
}

impl fmt::Debug for Polyhedron {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polyhedron({self})")
    }
}

impl fmt::Display for Polyhedron {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let term = |a: &[Rational]| {
            let parts: Vec<String> = a
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| if c.is_one() { format!("x{i}") } else { format!("{c}*x{i}") })
                .collect();
            parts.join(" + ")
        };
        let mut parts: Vec<String> = self.0.eqs.iter().map(|(a, b)| format!("{} = {}", term(a), b)).collect();
        parts.extend(self.0.ineqs.iter().map(|(a, b)| format!("{} <= {}", term(a), b)));
        if parts.is_empty() {
            write!(f, "R^{}", self.0.n)
        } else {
            write!(f, "{{{}}}", parts.join(", "))
        }
    }
}
