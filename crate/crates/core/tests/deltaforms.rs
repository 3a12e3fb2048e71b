mod support;

use deltaform::delta::DeltaForm;
use deltaform::error::Error;
use deltaform::exact::Rational;
use deltaform::intersection::Divisor;
use deltaform::polyhedra::{Complex, Polyhedron};
use deltaform::superforms::{PiecewiseForm, Side, SuperForm};
use support::*;

fn half_plane(sign: i64) -> Polyhedron {
    Polyhedron::nonempty(2, vec![], vec![(v(&[sign, 0]), int(0))]).unwrap()
}

#[test]
fn tropical_line_and_hyperplane_fan_are_balanced() {
    assert!(tropical_line().is_balanced().balanced);
    let fan = Divisor::new(max_of(2, &[(&[1, 0], 0), (&[0, 1], 0), (&[0, 0], 0)])).materialize().unwrap();
    assert!(fan.is_balanced().balanced);
    assert!(fan.equals(&tropical_line()));
}

#[test]
fn unbalanced_line_reports_its_residue() {
    let report = tropical_line_at(&[0, 0], [1, 1, 2]).is_balanced();
    assert!(!report.balanced);
    assert_eq!(report.failures.len(), 1);
    let f = &report.failures[0];
    assert_eq!(f.tau, Polyhedron::point(&v(&[0, 0])));
    let vector: Vec<Rational> = f.vector.iter().map(|a| a.coefficient(&[], &[]).constant_term()).collect();
    assert_eq!(vector, v(&[1, 1]));
}

#[test]
fn piecewise_forms_round_trip() {
    let mut r = rng(5);
    for n in [1, 2, 3] {
        for _ in 0..8 {
            let alpha = random_piecewise(&mut r, n);
            let t = DeltaForm::from_piecewise(&alpha);
            assert!(t.is_balanced().balanced, "{t}");
            let back = t.as_piecewise_form().unwrap();
            assert!(DeltaForm::from_piecewise(&back).equals(&t), "{t}");
            for (cell, form) in alpha.pieces() {
                let x = cell.interior_point();
                let there = back.pieces().find(|(c, _)| c.contains_point(x)).unwrap().1;
                assert_eq!(there.restrict(cell).unwrap(), form.restrict(cell).unwrap());
            }
        }
    }
}

#[test]
fn incompatible_pieces_are_reported_with_the_face() {
    let complex = Complex::from_maximal(2, vec![half_plane(1), half_plane(-1)]).unwrap();
    let forms = vec![SuperForm::dsecond_x(2, 1), SuperForm::zero(2)];
    match PiecewiseForm::new(complex, forms) {
        Err(Error::Invalid(msg)) => assert!(msg.contains("x0 = 0"), "{msg}"),
        other => panic!("expected a witness, got {other:?}"),
    }
    let mut t = DeltaForm::zero(2);
    t.add_term(&deltaform::polyhedra::WeightedCell::canonical(half_plane(1)), &SuperForm::dsecond_x(2, 1)).unwrap();
    match t.as_piecewise_form() {
        Err(Error::Unbalanced(report)) => {
            assert_eq!(report.failures[0].tau, Polyhedron::nonempty(2, vec![(v(&[1, 0]), int(0))], vec![]).unwrap());
        }
        other => panic!("expected an unbalanced face, got {other:?}"),
    }
    assert!(matches!(tropical_line().as_piecewise_form(), Err(Error::Precondition(_))));
}

#[test]
fn derivatives_on_the_line_are_dual() {
    let mut r = rng(6);
    for _ in 0..20 {
        let t = random_delta(&mut r, 1);
        assert!(t.boundary_via_residue(Side::First).unwrap().equals(&t.boundary_prime().unwrap()));
        assert!(t.boundary_via_residue(Side::Second).unwrap().equals(&t.boundary_second().unwrap()));
        let Some((p, q, rr)) = t.tridegree() else { continue };
        for side in [Side::First, Side::Second] {
            let (ep, eq) = match side {
                Side::First => ((1 - p - rr).checked_sub(1), (1 - q).checked_sub(rr)),
                Side::Second => ((1 - p).checked_sub(rr), (1 - q - rr).checked_sub(1)),
            };
            let (Some(ep), Some(eq)) = (ep, eq) else { continue };
            let g = random_poly(&mut r, 1, 2);
            let eta = SuperForm::monomial(g, &(0..ep).collect::<Vec<_>>(), &(0..eq).collect::<Vec<_>>()).unwrap();
            let (lhs, rhs) = duality(&t, &eta, side);
            assert_eq!(lhs, rhs, "{t} against {eta}");
        }
    }
}

#[test]
fn push_forward_and_pull_back_commute_with_derivatives() {
    let mut r = rng(7);
    let inject = map(&[&[1, 0], &[1, 1], &[0, 2]], &[1, 0, -1]);
    let project = map(&[&[1, 0, 1], &[0, 1, -1]], &[0, 1]);
    for _ in 0..10 {
        let t = random_delta(&mut r, 2);
        let f_t = t.pushforward(&inject).unwrap();
        assert!(f_t.d_prime().unwrap().equals(&t.d_prime().unwrap().pushforward(&inject).unwrap()));
        assert!(f_t.d_second().unwrap().equals(&t.d_second().unwrap().pushforward(&inject).unwrap()));
        let g_t = t.pullback_surjective(&project).unwrap();
        assert!(g_t.is_balanced().balanced);
        assert!(g_t.d_prime().unwrap().equals(&t.d_prime().unwrap().pullback_surjective(&project).unwrap()));
        assert!(g_t.d_second().unwrap().equals(&t.d_second().unwrap().pullback_surjective(&project).unwrap()));
    }
}
