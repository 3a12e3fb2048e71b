mod support;

use deltaform::delta::DeltaForm;
use deltaform::superforms::Side;
use rand::Rng;
use support::*;

fn zero(t: &DeltaForm) -> bool {
    t.refined().is_zero()
}

#[test]
fn random_delta_forms_are_balanced() {
    let mut r = rng(1);
    for n in [2, 3] {
        for _ in 0..12 {
            let t = random_delta(&mut r, n);
            assert!(t.is_balanced().balanced, "{t}");
        }
    }
}

#[test]
fn boundary_operators_anticommute() {
    let mut r = rng(2);
    for n in [2, 3] {
        for _ in 0..20 {
            let t = random_delta(&mut r, n);
            let (b1, b2) = (t.boundary_prime().unwrap(), t.boundary_second().unwrap());
            let (p1, p2) = (t.dp_prime(), t.dp_second());
            assert!(zero(&b1.boundary_prime().unwrap()), "{t}");
            assert!(zero(&b2.boundary_second().unwrap()), "{t}");
            assert!(zero(&(b2.boundary_prime().unwrap() + b1.boundary_second().unwrap())), "{t}");
            assert!(zero(&(p1.boundary_prime().unwrap() + b1.dp_prime())), "{t}");
            assert!(zero(&(p2.boundary_second().unwrap() + b2.dp_second())), "{t}");
            let four = p2.boundary_prime().unwrap() + b1.dp_second() + p1.boundary_second().unwrap() + b2.dp_prime();
            assert!(zero(&four), "{t}");
        }
    }
}

#[test]
fn boundary_agrees_with_the_residue_formula() {
    let mut r = rng(3);
    for n in [2, 3] {
        for _ in 0..15 {
            let t = random_delta(&mut r, n);
            assert!(t.boundary_via_residue(Side::First).unwrap().equals(&t.boundary_prime().unwrap()), "{t}");
            assert!(t.boundary_via_residue(Side::Second).unwrap().equals(&t.boundary_second().unwrap()), "{t}");
        }
    }
}

#[test]
fn derivatives_are_dual_to_smooth_derivatives() {
    let mut r = rng(4);
    for _ in 0..12 {
        let t = random_delta(&mut r, 2);
        let Some((p, q, rr)) = t.tridegree() else { continue };
        let (tp, tq) = (2 - p - rr, 2 - q - rr);
        for side in [Side::First, Side::Second] {
            let (ep, eq) = match side {
                Side::First => (tp.checked_sub(1), Some(tq)),
                Side::Second => (Some(tp), tq.checked_sub(1)),
            };
            let (Some(ep), Some(eq)) = (ep, eq) else { continue };
            let deg = r.gen_range(0..=2);
            let eta = random_form(&mut r, 2, ep, eq, deg);
            let (lhs, rhs) = duality(&t, &eta, side);
            assert_eq!(lhs, rhs, "{t} against {eta}");
        }
    }
}
