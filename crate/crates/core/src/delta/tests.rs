use super::*;
use crate::exact::rational::{int, rat};
use crate::exact::AffineMap;
use crate::superforms::{Poly, Side};

fn v(xs: &[i64]) -> Vec<Rational> {
    xs.iter().map(|&x| int(x)).collect()
}

fn cell(n: usize, ineqs: &[(&[i64], i64)]) -> Polyhedron {
    Polyhedron::from_ineqs(n, ineqs.iter().map(|(a, b)| (v(a), int(*b))).collect()).unwrap().unwrap()
}

fn ray(dir: &[i64]) -> Polyhedron {
    // {t · dir : t ≥ 0} for a primitive direction in ℝ².
    let n = dir.len();
    let perp: Vec<i64> = if n == 1 { vec![] } else { vec![-dir[1], dir[0]] };
    let mut eqs = vec![];
    if n == 2 {
        eqs.push((v(&perp), int(0)));
    }
    let neg: Vec<i64> = dir.iter().map(|x| -x).collect();
    Polyhedron::nonempty(n, eqs, vec![(v(&neg), int(0))]).unwrap()
}

fn wc(c: Polyhedron, w: i64) -> WeightedCell {
    WeightedCell::new(c, int(w)).unwrap()
}

fn tropical_line(weights: [i64; 3]) -> DeltaForm {
    let cells = [wc(ray(&[-1, 0]), weights[0]), wc(ray(&[0, -1]), weights[1]), wc(ray(&[1, 1]), weights[2])];
    DeltaForm::cycle(2, &cells).unwrap()
}

fn window(n: usize) -> Polyhedron {
    Polyhedron::cube(&vec![rat(-5, 2); n], &vec![rat(7, 3); n]).unwrap()
}

/// The product of the window's slack functionals, so that test forms
/// multiplied by it vanish on the window boundary.
fn bump(w: &Polyhedron) -> Poly {
    let n = w.ambient_dim();
    w.inequalities().iter().fold(Poly::one(n), |acc, (a, b)| {
        let neg: Vec<Rational> = a.iter().map(|x| -x).collect();
        &acc * &Poly::affine(&neg, b)
    })
}

/// `(dT)(η) = (-1)^{deg T + 1} T(dη)` on a window, for `d = d'` or `d''`.
fn duality(t: &DeltaForm, eta: &SuperForm, side: Side) -> (Rational, Rational) {
    let w = window(t.ambient_dim());
    let eta = eta.mul_poly(&bump(&w));
    let (dt, deta) = match side {
        Side::First => (t.d_prime().unwrap(), eta.dprime()),
        Side::Second => (t.d_second().unwrap(), eta.dsecond()),
    };
    let (p, q, _) = t.tridegree().unwrap();
    let sign = if (p + q) % 2 == 0 { int(-1) } else { int(1) };
    (dt.eval_pairing(&eta, &w).unwrap(), sign * t.eval_pairing(&deta, &w).unwrap())
}

#[test]
fn canonical_weights_fold() {
    let s = cell(1, &[(&[-1], 0)]);
    let a = SuperForm::function(Poly::var(1, 0));
    let t = DeltaForm::term(&wc(s.clone(), 2), &a).unwrap();
    let u = DeltaForm::term(&WeightedCell::canonical(s.clone()), &a.scale(&int(2))).unwrap();
    assert_eq!(t, u);
    assert_eq!(t.canonicalize(), t);
    let z = DeltaForm::term(&WeightedCell::canonical(s.clone()), &SuperForm::zero(1)).unwrap();
    assert!(z.is_zero());
    let m = DeltaForm::term(&WeightedCell::canonical(s.clone()), &a).unwrap() + DeltaForm::term(&WeightedCell::canonical(s), &a).unwrap();
    assert_eq!(m.len(), 1);
    assert_eq!(m, t);
}

#[test]
fn equality_up_to_subdivision() {
    let line = DeltaForm::cycle(1, &[WeightedCell::canonical(Polyhedron::whole(1))]).unwrap();
    let halves =
        DeltaForm::cycle(1, &[WeightedCell::canonical(ray(&[1])), WeightedCell::canonical(ray(&[-1]))]).unwrap();
    assert!(line.equals(&halves));
    assert!(!line.equals(&line.scale(&int(2))));
    assert!(DeltaForm::zero(2).equals(&DeltaForm::zero(2)));
}

#[test]
fn tridegree_split() {
    let l = Polyhedron::whole(1);
    let t = DeltaForm::cycle(1, &[WeightedCell::canonical(l.clone())]).unwrap()
        + DeltaForm::term(&WeightedCell::canonical(l), &SuperForm::monomial(Poly::var(1, 0), &[0], &[]).unwrap()).unwrap();
    let comps = t.tridegree_components();
    assert_eq!(comps.keys().cloned().collect::<Vec<_>>(), vec![(0, 0, 0), (1, 0, 0)]);
    let sum = comps.values().cloned().fold(DeltaForm::zero(1), |a, b| a + b);
    assert_eq!(sum, t);
}

#[test]
fn tropical_line_balancing() {
    assert!(tropical_line([1, 1, 1]).is_balanced().balanced);
    let r = tropical_line([1, 1, 2]).is_balanced();
    assert!(!r.balanced);
    assert_eq!(r.failures.len(), 1);
    let f = &r.failures[0];
    assert_eq!(f.tau, Polyhedron::point(&v(&[0, 0])));
    assert_eq!(f.residue, vec![SuperForm::one(0), SuperForm::one(0)]);
}

#[test]
fn continuity_is_balancing() {
    let plus = WeightedCell::canonical(ray(&[1]));
    let minus = WeightedCell::canonical(ray(&[-1]));
    let x = Poly::var(1, 0);
    let f_plus = SuperForm::function(x.clone() + Poly::one(1));
    let f_minus = SuperForm::function(Poly::one(1) - x.clone());
    let t = DeltaForm::term(&plus, &f_plus).unwrap() + DeltaForm::term(&minus, &f_minus).unwrap();
    assert!(t.is_balanced().balanced);
    let bad = DeltaForm::term(&plus, &f_plus).unwrap()
        + DeltaForm::term(&minus, &SuperForm::function(x - Poly::one(1))).unwrap();
    assert!(!bad.is_balanced().balanced);
    let err = bad.as_piecewise_form().unwrap_err();
    assert!(err.is_precondition());
}

#[test]
fn half_line_boundaries() {
    let plus = WeightedCell::canonical(ray(&[1]));
    let origin = WeightedCell::canonical(Polyhedron::point(&v(&[0])));
    let dsx = SuperForm::dsecond_x(1, 0);
    let t = DeltaForm::term(&plus, &dsx).unwrap();
    assert_eq!(t.boundary_prime().unwrap(), DeltaForm::cycle(1, &[origin.clone()]).unwrap().scale(&int(-1)));
    let dpx = SuperForm::dprime_x(1, 0);
    let s = DeltaForm::term(&plus, &dpx).unwrap();
    assert_eq!(s.boundary_second().unwrap(), DeltaForm::cycle(1, &[origin]).unwrap());
    let whole = t.clone() + DeltaForm::term(&WeightedCell::canonical(ray(&[-1])), &dsx).unwrap();
    assert!(whole.boundary_prime().unwrap().is_zero());
}

#[test]
fn unbalanced_boundary_is_refused() {
    let e = tropical_line([1, 1, 2]).boundary_prime().unwrap_err();
    assert!(matches!(e, Error::Unbalanced(_)));
}

#[test]
fn duality_in_one_dimension() {
    let x = Poly::var(1, 0);
    let x2 = &x * &x;
    let cases = [
        DeltaForm::term(&WeightedCell::canonical(ray(&[1])), &SuperForm::monomial(x2.clone(), &[], &[0]).unwrap()).unwrap(),
        DeltaForm::term(&WeightedCell::canonical(ray(&[-1])), &SuperForm::monomial(x.clone(), &[], &[0]).unwrap()).unwrap(),
        DeltaForm::term(&WeightedCell::canonical(ray(&[1])), &SuperForm::monomial(x.clone(), &[0], &[]).unwrap()).unwrap(),
        DeltaForm::term(&wc(ray(&[-1]), 3), &SuperForm::monomial(x2.clone(), &[0], &[]).unwrap()).unwrap(),
    ];
    let etas = [SuperForm::function(x.clone() + Poly::one(1)), SuperForm::function(x2.clone())];
    for t in &cases {
        for eta in &etas {
            for side in [Side::First, Side::Second] {
                let (p, q, _) = t.tridegree().unwrap();
                // Only pair where the bidegrees are complementary after d.
                let needed = match side {
                    Side::First => (p + 1 + 0 == 1) && q == 1,
                    Side::Second => p == 1 && (q + 1 == 1),
                };
                if !needed {
                    continue;
                }
                let (l, r) = duality(t, eta, side);
        assert_eq!(t.boundary_via_residue(side).unwrap(), t.boundary_unchecked(side));
                assert_eq!(l, r, "{t} {eta} {side:?}");
            }
        }
    }
}

#[test]
fn duality_in_two_dimensions() {
    let x = Poly::var(2, 0);
    let y = Poly::var(2, 1);
    let quad = cell(2, &[(&[-1, 0], 0), (&[0, -1], 0)]);
    let wedge_cell = cell(2, &[(&[1, -2], 1), (&[-1, -1], 1)]);
    let poly = (&x * &y) + x.clone() + Poly::constant(2, int(3));
    let forms: Vec<(Polyhedron, SuperForm)> = vec![
        (quad.clone(), SuperForm::monomial(poly.clone(), &[0], &[0, 1]).unwrap()),
        (wedge_cell.clone(), SuperForm::monomial(poly.clone(), &[1], &[0, 1]).unwrap()),
        (quad.clone(), SuperForm::monomial(&x * &x, &[0, 1], &[1]).unwrap()),
        (wedge_cell.clone(), SuperForm::monomial(y.clone(), &[0, 1], &[0]).unwrap()),
    ];
    let etas = [SuperForm::function(x.clone() - y.clone()), SuperForm::function(&y * &y + Poly::one(2))];
    for (c, a) in &forms {
        let t = DeltaForm::term(&WeightedCell::canonical(c.clone()), a).unwrap();
        assert!(t.is_balanced().balanced);
        let (p, q, _) = t.tridegree().unwrap();
        let side = if q == 2 { Side::First } else { Side::Second };
        assert!(p == 2 || q == 2);
        for eta in &etas {
            let (l, r) = duality(&t, eta, side);
            assert_eq!(l, r, "{t} {eta} {side:?}");
            assert_eq!(t.boundary_via_residue(side).unwrap(), t.boundary_unchecked(side));
        }
    }
}

#[test]
fn duality_on_lines_in_the_plane() {
    let x = Poly::var(2, 0);
    let y = Poly::var(2, 1);
    let diag_seg = Polyhedron::nonempty(2, vec![(v(&[1, -1]), int(0))], vec![(v(&[-1, 0]), int(0)), (v(&[1, 0]), int(1))]).unwrap();
    let slanted = Polyhedron::nonempty(2, vec![(v(&[2, -1]), int(1))], vec![(v(&[-1, 0]), int(0))]).unwrap();
    for c in [diag_seg, slanted] {
        let d = c.dim();
        assert_eq!(d, 1);
        let u = Poly::var(1, 0);
        for (dp, ds, side) in [(vec![], vec![0], Side::First), (vec![0], vec![], Side::Second)] {
            let a = SuperForm::monomial(&u * &u + Poly::one(1), &dp, &ds).unwrap();
            let t = DeltaForm::term(&wc(c.clone(), 2), &a).unwrap();
            let eta = match side {
                Side::First => SuperForm::function(&x * &y + Poly::one(2)),
                Side::Second => SuperForm::function(x.clone() + y.clone()),
            };
            let (l, r) = duality(&t, &eta, side);
            assert_eq!(l, r, "{t} {side:?}");
            assert_eq!(t.boundary_via_residue(side).unwrap(), t.boundary_unchecked(side));
        }
    }
}

#[test]
fn pushforward_examples() {
    let line = WeightedCell::canonical(Polyhedron::whole(1));
    let t = DeltaForm::term(&line, &SuperForm::function(Poly::var(1, 0))).unwrap();
    let f = AffineMap::linear(crate::exact::RatMatrix::from_rows(vec![v(&[2])], 1).unwrap());
    assert_eq!(t.pushforward(&f).unwrap(), t);
    let g = AffineMap::linear(crate::exact::RatMatrix::from_rows(vec![v(&[1]), v(&[1])], 1).unwrap());
    let diag = DeltaForm::cycle(1, &[line]).unwrap().pushforward(&g).unwrap();
    let expected = Polyhedron::nonempty(2, vec![(v(&[1, -1]), int(0))], vec![]).unwrap();
    assert_eq!(diag, DeltaForm::cycle(2, &[WeightedCell::canonical(expected)]).unwrap());
    let vertical = Polyhedron::nonempty(2, vec![(v(&[1, 0]), int(1))], vec![]).unwrap();
    let p1 = AffineMap::coordinate_projection(2, &[0]);
    let e = DeltaForm::cycle(2, &[WeightedCell::canonical(vertical)]).unwrap().pushforward(&p1).unwrap_err();
    assert!(matches!(e, Error::NonProper(_)));
}

#[test]
fn pullback_examples() {
    let p1 = AffineMap::coordinate_projection(2, &[0]);
    let pt = DeltaForm::cycle(1, &[WeightedCell::canonical(Polyhedron::point(&v(&[0])))]).unwrap();
    let vertical = Polyhedron::nonempty(2, vec![(v(&[1, 0]), int(0))], vec![]).unwrap();
    assert_eq!(pt.pullback_surjective(&p1).unwrap(), DeltaForm::cycle(2, &[WeightedCell::canonical(vertical)]).unwrap());
    let f = AffineMap::new(crate::exact::RatMatrix::from_rows(vec![v(&[2])], 1).unwrap(), v(&[1])).unwrap();
    let a = SuperForm::monomial(Poly::var(1, 0), &[0], &[]).unwrap();
    let t = DeltaForm::from_form(&a);
    assert_eq!(t.pullback_surjective(&f).unwrap(), DeltaForm::from_form(&a.pullback(&f)));
    let id = AffineMap::identity(2);
    let tl = tropical_line([1, 1, 1]);
    assert_eq!(tl.pullback_surjective(&id).unwrap(), tl);
}

#[test]
fn pairing_examples() {
    let w = Polyhedron::cube(&v(&[-1]), &v(&[1])).unwrap();
    let pt = DeltaForm::cycle(1, &[WeightedCell::canonical(Polyhedron::point(&v(&[0])))]).unwrap();
    let x = Poly::var(1, 0);
    let eta = SuperForm::function(&x * &x + Poly::constant(1, int(3)));
    assert_eq!(pt.eval_pairing(&eta, &w).unwrap(), int(3));
    let line = DeltaForm::cycle(1, &[WeightedCell::canonical(Polyhedron::whole(1))]).unwrap();
    let unit = Polyhedron::cube(&v(&[0]), &v(&[1])).unwrap();
    let e2 = SuperForm::monomial(x, &[0], &[0]).unwrap();
    assert_eq!(line.eval_pairing(&e2, &unit).unwrap(), rat(1, 2));
    assert_eq!(line.scale(&int(2)).eval_pairing(&e2, &unit).unwrap(), int(1));
}

#[test]
fn piecewise_round_trip() {
    let f = crate::superforms::PLFunction::max_of(1, &[
        crate::superforms::Affine::new(v(&[1]), int(0)),
        crate::superforms::Affine::new(v(&[0]), int(0)),
    ])
    .unwrap();
    let forms = f.pieces().map(|(_, a)| SuperForm::function(a.as_poly())).collect();
    let pw = PiecewiseForm::new(f.complex().clone(), forms).unwrap();
    let t = DeltaForm::from_piecewise(&pw);
    assert!(t.is_balanced().balanced);
    assert_eq!(t.as_piecewise_form().unwrap(), pw);
}

#[test]
fn json_round_trip_with_chart() {
    let diag = Polyhedron::nonempty(2, vec![(v(&[1, -1]), int(0))], vec![]).unwrap();
    let t = DeltaForm::term(&wc(diag, 3), &SuperForm::monomial(Poly::var(1, 0), &[0], &[]).unwrap()).unwrap();
    let s = serde_json::to_string(&t).unwrap();
    assert_eq!(DeltaForm::from_json_str(&s).unwrap(), t);
    // The same current described in the chart u ↦ (2u, 2u).
    let alt = r#"{"n":2,"terms":[{"cell":{"n":2,"ineqs":[{"a":["1","-1"],"b":"0"},{"a":["-1","1"],"b":"0"}]},
        "weight":"3","form":{"terms":[{"poly":[{"exps":[1],"c":"4"}],"dp":[0]}]},"chart":{"base":["0","0"],"basis":[["2","2"]]}}]}"#;
    assert_eq!(DeltaForm::from_json_str(alt).unwrap(), t);
}

use crate::superforms::PiecewiseForm;

#[test]
fn duality_on_tropical_line_with_coefficients() {
    let x = Poly::var(2, 0);
    let y = Poly::var(2, 1);
    let line = tropical_line([1, 1, 1]);
    let whole = Complex::from_maximal(2, vec![Polyhedron::whole(2)]).unwrap();
    for (a, side) in [
        (SuperForm::monomial(&x * &y + Poly::one(2), &[], &[0]).unwrap(), Side::First),
        (SuperForm::monomial(x.clone() - y.clone(), &[1], &[]).unwrap(), Side::Second),
    ] {
        let pw = PiecewiseForm::constant(whole.clone(), a).unwrap();
        let t = line.ps_multiply(&pw).unwrap();
        assert!(t.is_balanced().balanced);
        let b = match side {
            Side::First => t.boundary_prime().unwrap(),
            Side::Second => t.boundary_second().unwrap(),
        };
        // A global form commutes with the boundary of a cycle.
        assert!(b.is_zero());
        for eta in [SuperForm::function(x.clone() + Poly::one(2)), SuperForm::function(&y * &y)] {
            let (l, r) = duality(&t, &eta, side);
            assert_eq!(l, r, "{t} {side:?}");
            assert_eq!(t.boundary_via_residue(side).unwrap(), t.boundary_unchecked(side));
        }
        let dt = match side {
            Side::First => t.d_prime().unwrap(),
            Side::Second => t.d_second().unwrap(),
        };
        assert!(dt.is_balanced().balanced);
    }
}

#[test]
fn duality_on_tropical_line_with_varying_coefficients() {
    let x = Poly::var(2, 0);
    let u = Poly::var(1, 0);
    let rays = [ray(&[-1, 0]), ray(&[0, -1]), ray(&[1, 1])];
    for side in [Side::First, Side::Second] {
        let mut t = DeltaForm::zero(2);
        for (k, r) in rays.iter().enumerate() {
            let c = Poly::constant(1, int(k as i64 + 2)) + u.scale(&int(k as i64));
            let a = match side {
                Side::First => SuperForm::monomial(c, &[], &[0]).unwrap(),
                Side::Second => SuperForm::monomial(c, &[0], &[]).unwrap(),
            };
            t = t + DeltaForm::term(&WeightedCell::canonical(r.clone()), &a).unwrap();
        }
        assert!(t.is_balanced().balanced);
        let b = match side {
            Side::First => t.boundary_prime().unwrap(),
            Side::Second => t.boundary_second().unwrap(),
        };
        assert!(!b.is_zero());
        for eta in [SuperForm::function(x.clone() + Poly::one(2)), SuperForm::function(&x * &x)] {
            let (l, r) = duality(&t, &eta, side);
            assert_eq!(l, r, "{t} {side:?}");
            assert_eq!(t.boundary_via_residue(side).unwrap(), t.boundary_unchecked(side));
        }
    }
}
