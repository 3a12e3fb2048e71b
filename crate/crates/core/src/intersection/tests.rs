use super::*;
use crate::delta::DeltaForm;
use crate::exact::rational::{int, Rational};
use crate::exact::{AffineMap, RatMatrix};
use crate::polyhedra::{Polyhedron, WeightedCell};
use crate::superforms::{Affine, PLFunction, Poly, SuperForm};

fn v(xs: &[i64]) -> Vec<Rational> {
    xs.iter().map(|&x| int(x)).collect()
}

fn ray(dir: &[i64]) -> Polyhedron {
    let neg: Vec<i64> = dir.iter().map(|x| -x).collect();
    let eqs = if dir.len() == 2 { vec![(v(&[-dir[1], dir[0]]), int(0))] } else { vec![] };
    Polyhedron::nonempty(dir.len(), eqs, vec![(v(&neg), int(0))]).unwrap()
}

fn line_through(dir: &[i64]) -> Polyhedron {
    Polyhedron::nonempty(2, vec![(v(&[-dir[1], dir[0]]), int(0))], vec![]).unwrap()
}

fn cycle(n: usize, cells: &[(Polyhedron, i64)]) -> DeltaForm {
    let wc: Vec<WeightedCell> = cells.iter().map(|(c, w)| WeightedCell::new(c.clone(), int(*w)).unwrap()).collect();
    DeltaForm::cycle(n, &wc).unwrap()
}

fn tropical_line() -> DeltaForm {
    cycle(2, &[(ray(&[-1, 0]), 1), (ray(&[0, -1]), 1), (ray(&[1, 1]), 1)])
}

fn point(p: &[i64], w: i64) -> DeltaForm {
    cycle(p.len(), &[(Polyhedron::point(&v(p)), w)])
}

fn whole(n: usize) -> DeltaForm {
    cycle(n, &[(Polyhedron::whole(n), 1)])
}

fn max_of(n: usize, fns: &[(&[i64], i64)]) -> PLFunction {
    let fs: Vec<Affine> = fns.iter().map(|(a, b)| Affine::new(v(a), int(*b))).collect();
    PLFunction::max_of(n, &fs).unwrap()
}

fn translate(t: &DeltaForm, by: &[i64]) -> DeltaForm {
    t.pushforward(&AffineMap::translation(v(by))).unwrap()
}

fn map(rows: &[&[i64]], offset: &[i64]) -> AffineMap {
    let cols = rows[0].len();
    AffineMap::new(RatMatrix::from_rows(rows.iter().map(|r| v(r)).collect(), cols).unwrap(), v(offset)).unwrap()
}

#[test]
fn corner_of_max_on_the_line() {
    let d = divisor_intersect(&max_of(1, &[(&[1], 0), (&[0], 0)]), &whole(1)).unwrap();
    assert!(d.equals(&point(&[0], 1)));
    let d = divisor_intersect(&max_of(1, &[(&[2], 0), (&[-1], 0)]), &whole(1)).unwrap();
    assert!(d.equals(&point(&[0], 3)));
}

#[test]
fn corner_of_max_in_the_plane_is_the_diagonal() {
    let d = divisor_intersect(&max_of(2, &[(&[1, 0], 0), (&[0, 1], 0)]), &whole(2)).unwrap();
    assert!(d.equals(&cycle(2, &[(line_through(&[1, 1]), 1)])));
    let l = Divisor::new(max_of(2, &[(&[1, 0], 0), (&[0, 1], 0), (&[0, 0], 0)])).materialize().unwrap();
    assert!(l.equals(&tropical_line()));
    assert!(l.is_balanced().balanced);
}

#[test]
fn divisor_commutes_on_the_plane() {
    let a = max_of(2, &[(&[1, 0], 0), (&[0, 0], 0)]);
    let b = max_of(2, &[(&[0, 1], 0), (&[1, 1], -1)]);
    assert!(divisor_commutes_check(&a, &b, &whole(2)).unwrap());
    assert!(divisor_commutes_check(&a, &b, &tropical_line()).unwrap());
}

#[test]
fn corner_locus_identities_hold() {
    let phi = max_of(2, &[(&[1, 0], 0), (&[0, 1], 1)]);
    let t = DeltaForm::term(&WeightedCell::canonical(Polyhedron::whole(2)), &SuperForm::function(Poly::var(2, 0))).unwrap();
    let r = corner_locus_identity_check(&phi, &t).unwrap();
    assert!(r.all_hold(), "{r:?}");
    let r = corner_locus_identity_check(&phi, &tropical_line()).unwrap();
    assert_eq!(r.closed_collapse, Some(true));
    assert!(r.all_hold(), "{r:?}");
}

#[test]
fn line_squared_is_a_point() {
    let l = tropical_line();
    assert!(wedge_diagonal(&l, &l).unwrap().equals(&point(&[0, 0], 1)));
    let moved = translate(&l, &[3, 1]);
    assert!(wedge_diagonal(&l, &moved).unwrap().equals(&point(&[1, 1], 1)));
    assert!(transversal_product(&l, &moved).unwrap().equals(&point(&[1, 1], 1)));
    let disp = displacement_product(&l, &l, &v(&[1, 2])).unwrap();
    assert!(disp.equals(&point(&[0, 0], 1)));
}

#[test]
fn diagonal_displacement_vector_is_not_generic() {
    let l = tropical_line();
    let g = is_generic(&v(&[1, 1]), &l, &l).unwrap();
    assert!(!g.generic);
    assert!(g.failure.is_some());
    assert!(is_generic(&v(&[1, 2]), &l, &l).unwrap().generic);
    assert!(matches!(displacement_product(&l, &l, &v(&[1, 1])), Err(crate::error::Error::NotGeneric(_))));
}

#[test]
fn classical_lines_meet_with_index() {
    let x = cycle(2, &[(line_through(&[1, 0]), 1)]);
    let y = cycle(2, &[(line_through(&[0, 1]), 1)]);
    let s = cycle(2, &[(line_through(&[1, 2]), 1)]);
    assert!(transversal_product(&x, &y).unwrap().equals(&point(&[0, 0], 1)));
    assert!(transversal_product(&x, &s).unwrap().equals(&point(&[0, 0], 2)));
    assert!(wedge_diagonal(&x, &s).unwrap().equals(&point(&[0, 0], 2)));
    assert!(transversal_product(&x, &x).is_err());
}

#[test]
fn general_pullback_matches_surjective() {
    let l = tropical_line();
    let f = map(&[&[1, 0, 0], &[0, 1, 0]], &[0, 0]);
    let a = pullback_general(&f, &l).unwrap();
    let b = l.pullback_surjective(&f).unwrap();
    assert!(a.equals(&b));
    let inc = map(&[&[1], &[0]], &[0, -1]);
    let p = pullback_general(&inc, &l).unwrap();
    assert!(p.equals(&point(&[0], 1)));
}

#[test]
fn suite_on_lines_and_a_point() {
    let p1 = map(&[&[1, 0, 0, 0], &[0, 1, 0, 0]], &[0, 0]);
    let r = product_property_suite(&tropical_line(), &tropical_line(), &point(&[0, 0], 1), &p1).unwrap();
    assert!(r.all_hold(), "{:?}", r.checks);
}
