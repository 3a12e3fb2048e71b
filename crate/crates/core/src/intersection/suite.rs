//! Executable checks of the characterizing properties of the ∧-product.

use num_traits::{One, Zero};
use serde::Serialize;

use super::divisor::divisor_intersect;
use super::product::{diagonal_function, pullback_general, wedge_diagonal};
use crate::delta::{DeltaForm, Tridegree};
use crate::error::{Error, Result};
use crate::exact::rational::Rational;
use crate::exact::{AffineMap, RatMatrix};
use crate::polyhedra::{Polyhedron, WeightedCell};
use crate::superforms::{Affine, PLFunction};

/// One named identity and whether it holds exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub name: String,
    pub holds: bool,
}

/// Per-identity verdicts of [`product_property_suite`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub checks: Vec<Verdict>,
}

impl SuiteReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn verdict(&self, name: &str) -> Option<bool> {
        self.checks.iter().find(|c| c.name == name).map(|c| c.holds)
    }

    fn push(&mut self, name: &str, holds: bool) {
        self.checks.push(Verdict { name: name.into(), holds });
    }
}

fn parity((p, q, _): Tridegree) -> bool {
    (p + q) % 2 == 1
}

fn whole(n: usize) -> DeltaForm {
    DeltaForm::cycle(n, &[WeightedCell::canonical(Polyhedron::whole(n))]).expect("the whole space is a cell")
}

/// `S ∧ T = (-1)^{deg S deg T} T ∧ S`, summed over tridegree components.
pub fn graded_commutativity_check(s: &DeltaForm, t: &DeltaForm) -> Result<bool> {
    let lhs = wedge_diagonal(s, t)?;
    let mut rhs = DeltaForm::zero(s.ambient_dim());
    for (ds, sc) in s.tridegree_components() {
        for (dt, tc) in t.tridegree_components() {
            let x = wedge_diagonal(&tc, &sc)?;
            rhs = rhs + if parity(ds) && parity(dt) { -x } else { x };
        }
    }
    Ok(lhs.equals(&rhs))
}

/// The six derivations of δ-forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Derivation {
    DPrime,
    DSecond,
    PolyhedralPrime,
    PolyhedralSecond,
    BoundaryPrime,
    BoundarySecond,
}

impl Derivation {
    pub const ALL: [Derivation; 6] = [
        Derivation::DPrime,
        Derivation::DSecond,
        Derivation::PolyhedralPrime,
        Derivation::PolyhedralSecond,
        Derivation::BoundaryPrime,
        Derivation::BoundarySecond,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Derivation::DPrime => "d'",
            Derivation::DSecond => "d''",
            Derivation::PolyhedralPrime => "d'_P",
            Derivation::PolyhedralSecond => "d''_P",
            Derivation::BoundaryPrime => "∂'",
            Derivation::BoundarySecond => "∂''",
        }
    }

    pub fn apply(self, t: &DeltaForm) -> Result<DeltaForm> {
        match self {
            Derivation::DPrime => t.d_prime(),
            Derivation::DSecond => t.d_second(),
            Derivation::PolyhedralPrime => Ok(t.dp_prime()),
            Derivation::PolyhedralSecond => Ok(t.dp_second()),
            Derivation::BoundaryPrime => t.boundary_prime(),
            Derivation::BoundarySecond => t.boundary_second(),
        }
    }
}

/// `D(S ∧ T) = DS ∧ T + (-1)^{deg S} S ∧ DT`, summed over the components of `S`.
pub fn leibniz_check(op: Derivation, s: &DeltaForm, t: &DeltaForm) -> Result<bool> {
    let lhs = op.apply(&wedge_diagonal(s, t)?)?;
    let dt = op.apply(t)?;
    let mut rhs = DeltaForm::zero(s.ambient_dim());
    for (ds, sc) in s.tridegree_components() {
        let x = wedge_diagonal(&sc, &dt)?;
        rhs = rhs + wedge_diagonal(&op.apply(&sc)?, t)? + if parity(ds) { -x } else { x };
    }
    Ok(lhs.equals(&rhs))
}

/// An affine section `s` of a surjective affine map, `f ∘ s = id`.
pub fn affine_section(f: &AffineMap) -> Result<AffineMap> {
    if !f.is_surjective() {
        return Err(Error::Precondition("map is not surjective".into()));
    }
    let a = f.matrix();
    let at = a.transpose();
    let inv = a.mul(&at).inverse().expect("surjective maps have invertible Gram matrices");
    let lin = at.mul(&inv);
    let offset: Vec<Rational> = lin.mul_vec(f.offset()).into_iter().map(|x| -x).collect();
    AffineMap::new(lin, offset)
}

/// `f_*(X ∧ f^*S) = f_*X ∧ S` with `X = s_*T` for a section `s` of `f`.
pub fn projection_formula_check(f: &AffineMap, s: &DeltaForm, t: &DeltaForm) -> Result<bool> {
    let x = t.pushforward(&affine_section(f)?)?;
    let lhs = wedge_diagonal(&x, &s.pullback_surjective(f)?)?.pushforward(f)?;
    let rhs = wedge_diagonal(&x.pushforward(f)?, s)?;
    Ok(lhs.equals(&rhs))
}

fn coordinate_projection(n: usize, range: std::ops::Range<usize>) -> AffineMap {
    AffineMap::coordinate_projection(n, &range.collect::<Vec<_>>())
}

/// `S × T = p₁^*S ∧ p₂^*T`.
pub fn exterior_product_check(s: &DeltaForm, t: &DeltaForm) -> Result<bool> {
    let (n, m) = (s.ambient_dim(), t.ambient_dim());
    let p1 = coordinate_projection(n + m, 0..n);
    let p2 = coordinate_projection(n + m, n..n + m);
    let rhs = wedge_diagonal(&s.pullback_surjective(&p1)?, &t.pullback_surjective(&p2)?)?;
    Ok(s.exterior_product(t).equals(&rhs))
}

/// `D₁ ⋯ D_c · (ℝᶜ × T) = g_*T` for `T` on `ℝᵐ × ℝᶜ`, the divisors
/// `D_i = d'd'' max{x_i, z_i}` on `ℝᶜ × ℝᵐ × ℝᶜ` and the partial diagonal
/// `g(y, z) = (z, y, z)`.
pub fn partial_diagonal_check(c: usize, t: &DeltaForm) -> Result<bool> {
    let n = t.ambient_dim();
    if c == 0 || c > n {
        return Err(Error::Dimension(format!("partial diagonal of width {c} on ℝ^{n}")));
    }
    let m = n - c;
    let total = c + n;
    let mut lhs = whole(c).exterior_product(t);
    for i in (0..c).rev() {
        let mut x = vec![Rational::zero(); total];
        x[i] = Rational::one();
        let mut z = vec![Rational::zero(); total];
        z[c + m + i] = Rational::one();
        let phi = PLFunction::max_of(total, &[Affine::new(x, Rational::zero()), Affine::new(z, Rational::zero())])?;
        lhs = divisor_intersect(&phi, &lhs)?;
    }
    let mut rows = vec![vec![Rational::zero(); n]; total];
    for i in 0..c {
        rows[i][m + i] = Rational::one();
    }
    for j in 0..n {
        rows[c + j][j] = Rational::one();
    }
    let g = AffineMap::linear(RatMatrix::from_rows(rows, n)?);
    Ok(lhs.equals(&t.pushforward(&g)?))
}

/// `S ∧ T` with the diagonal divisors applied in increasing order.
pub fn wedge_diagonal_ascending(s: &DeltaForm, t: &DeltaForm) -> Result<DeltaForm> {
    let n = s.ambient_dim();
    s.require_balanced()?;
    t.require_balanced()?;
    let mut p = s.exterior_product(t);
    for i in 0..n {
        p = divisor_intersect(&diagonal_function(n, i), &p)?;
    }
    p.pushforward(&coordinate_projection(2 * n, 0..n))
}

/// The tropical hyperplane `max{0, x_1, …, x_n}`.
pub fn tropical_hyperplane(n: usize) -> PLFunction {
    let mut fns = vec![Affine::new(vec![Rational::zero(); n], Rational::zero())];
    for i in 0..n {
        let mut a = vec![Rational::zero(); n];
        a[i] = Rational::one();
        fns.push(Affine::new(a, Rational::zero()));
    }
    PLFunction::max_of(n, &fns).expect("distinct affine functions")
}

fn check(report: &mut SuiteReport, name: &str, r: Result<bool>) -> Result<()> {
    match r {
        Ok(b) => {
            report.push(name, b);
            Ok(())
        }
        Err(e) if e.is_precondition() => {
            report.push(name, false);
            Ok(())
        }
        Err(e) => Err(e),
    }
}

fn tridegree_sum(a: &DeltaForm, b: &DeltaForm, prod: &DeltaForm) -> bool {
    match (a.tridegree(), b.tridegree()) {
        (Some((p, q, r)), Some((s, t, u))) => prod.is_zero() || prod.tridegree() == Some((p + s, q + t, r + u)),
        _ => true,
    }
}

/// Evaluate the characterizing identities of the ∧-product on `S, T, U` on
/// `ℝⁿ` and a surjective affine map `f : ℝᵏ → ℝⁿ`.
pub fn product_property_suite(s: &DeltaForm, t: &DeltaForm, u: &DeltaForm, f: &AffineMap) -> Result<SuiteReport> {
    let n = s.ambient_dim();
    if t.ambient_dim() != n || u.ambient_dim() != n || f.target_dim() != n {
        return Err(Error::Dimension("suite inputs live on different spaces".into()));
    }
    if !f.is_surjective() {
        return Err(Error::Precondition("suite map must be surjective".into()));
    }
    for x in [s, t, u] {
        x.require_balanced()?;
    }
    let mut report = SuiteReport { checks: vec![] };
    let st = wedge_diagonal(s, t)?;
    report.push("trihomogeneity", tridegree_sum(s, t, &st));
    check(&mut report, "graded commutativity", graded_commutativity_check(s, t))?;
    check(&mut report, "associativity", (|| Ok(wedge_diagonal(&st, u)?.equals(&wedge_diagonal(s, &wedge_diagonal(t, u)?)?)))())?;
    for op in Derivation::ALL {
        check(&mut report, &format!("leibniz {}", op.name()), leibniz_check(op, s, t))?;
    }
    check(&mut report, "diagonal order independence", wedge_diagonal_ascending(s, t).map(|x| x.equals(&st)))?;
    check(&mut report, "exterior product via pull-backs", exterior_product_check(s, t))?;
    check(&mut report, "partial diagonal", partial_diagonal_check(1, t))?;
    check(&mut report, "full diagonal", partial_diagonal_check(n, t))?;
    check(&mut report, "projection formula", projection_formula_check(f, s, u))?;
    check(
        &mut report,
        "pull-back multiplicativity",
        (|| Ok(st.pullback_surjective(f)?.equals(&wedge_diagonal(&s.pullback_surjective(f)?, &t.pullback_surjective(f)?)?)))(),
    )?;
    check(&mut report, "pull-back agreement", (|| Ok(pullback_general(f, s)?.equals(&s.pullback_surjective(f)?)))())?;
    let phi = tropical_hyperplane(n);
    check(
        &mut report,
        "divisor product",
        (|| {
            let c = divisor_intersect(&phi, &whole(n))?;
            Ok(wedge_diagonal(&c, t)?.equals(&divisor_intersect(&phi, t)?))
        })(),
    )?;
    check(
        &mut report,
        "divisor associativity",
        (|| Ok(divisor_intersect(&phi, &st)?.equals(&wedge_diagonal(&divisor_intersect(&phi, s)?, t)?)))(),
    )?;
    Ok(report)
}
