//! Seeded generators and independent oracles shared by the integration tests.
#![allow(dead_code)]

use deltaform::delta::DeltaForm;
use deltaform::exact::{rat, AffineMap, RatMatrix, Rational};
use deltaform::intersection::Divisor;
use deltaform::polyhedra::{Complex, Polyhedron, WeightedCell};
use deltaform::superforms::{Affine, PLFunction, PiecewiseForm, Poly, Side, SuperForm};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn int(x: i64) -> Rational {
    Rational::from_integer(x.into())
}

pub fn v(xs: &[i64]) -> Vec<Rational> {
    xs.iter().map(|&x| int(x)).collect()
}

pub fn ray(dir: &[i64], at: &[i64]) -> Polyhedron {
    // {at + t · dir : t ≥ 0} in the plane.
    let perp = v(&[-dir[1], dir[0]]);
    let neg = v(&[-dir[0], -dir[1]]);
    let dot = |a: &[Rational]| a.iter().zip(at).fold(int(0), |s, (x, &y)| s + x * int(y));
    let (pb, nb) = (dot(&perp), dot(&neg));
    Polyhedron::nonempty(2, vec![(perp, pb)], vec![(neg, nb)]).unwrap()
}

pub fn line_through(dir: &[i64]) -> Polyhedron {
    Polyhedron::nonempty(2, vec![(v(&[-dir[1], dir[0]]), int(0))], vec![]).unwrap()
}

pub fn cycle(n: usize, cells: &[(Polyhedron, i64)]) -> DeltaForm {
    let wc: Vec<WeightedCell> = cells.iter().map(|(c, w)| WeightedCell::new(c.clone(), int(*w)).unwrap()).collect();
    DeltaForm::cycle(n, &wc).unwrap()
}

pub fn tropical_line_at(at: &[i64], weights: [i64; 3]) -> DeltaForm {
    let dirs: [&[i64]; 3] = [&[-1, 0], &[0, -1], &[1, 1]];
    let cells: Vec<(Polyhedron, i64)> = dirs.iter().zip(weights).map(|(d, w)| (ray(d, at), w)).collect();
    cycle(2, &cells)
}

pub fn tropical_line() -> DeltaForm {
    tropical_line_at(&[0, 0], [1, 1, 1])
}

pub fn point(p: &[i64], w: i64) -> DeltaForm {
    cycle(p.len(), &[(Polyhedron::point(&v(p)), w)])
}

pub fn whole(n: usize) -> DeltaForm {
    cycle(n, &[(Polyhedron::whole(n), 1)])
}

pub fn affine(a: &[i64], b: i64) -> Affine {
    Affine::new(v(a), int(b))
}

pub fn max_of(n: usize, fns: &[(&[i64], i64)]) -> PLFunction {
    let fs: Vec<Affine> = fns.iter().map(|(a, b)| affine(a, *b)).collect();
    PLFunction::max_of(n, &fs).unwrap()
}

pub fn map(rows: &[&[i64]], offset: &[i64]) -> AffineMap {
    let cols = rows.first().map_or(0, |r| r.len());
    AffineMap::new(RatMatrix::from_rows(rows.iter().map(|r| v(r)).collect(), cols).unwrap(), v(offset)).unwrap()
}

/// Tropical plane curve of degree `d` with generic coefficients: the corner
/// locus of `max_{i+j ≤ d} (c_ij + i x + j y)` with `c_ij = -(i² + j² + ij)`.
pub fn plane_curve(d: i64, shift: &[i64]) -> DeltaForm {
    let mut fns = vec![];
    for i in 0..=d {
        for j in 0..=d - i {
            let c = -(i * i + j * j + i * j);
            fns.push(Affine::new(v(&[i, j]), int(c - i * shift[0] - j * shift[1])));
        }
    }
    Divisor::new(PLFunction::max_of(2, &fns).unwrap()).materialize().unwrap()
}

/// Total mass of a zero-dimensional cycle with constant coefficients.
pub fn degree(t: &DeltaForm) -> Rational {
    t.terms().map(|(c, a)| {
        assert_eq!(c.dim(), 0, "degree of a zero-dimensional cycle");
        a.coefficient(&[], &[]).constant_term()
    })
    .fold(int(0), |s, x| s + x)
}

pub fn small(rng: &mut TestRng, lo: i64, hi: i64) -> Rational {
    int(rng.gen_range(lo..=hi))
}

/// A polynomial in `n` variables with up to three monomials of degree `≤ deg`.
pub fn random_poly(rng: &mut TestRng, n: usize, deg: u32) -> Poly {
    let mut p = Poly::zero(n);
    for _ in 0..rng.gen_range(1..=3) {
        let mut exps = vec![0u32; n];
        let mut left = rng.gen_range(0..=deg);
        while left > 0 && n > 0 {
            exps[rng.gen_range(0..n)] += 1;
            left -= 1;
        }
        let c = rat(rng.gen_range(-4..=4), rng.gen_range(1..=3));
        p.add_term(exps, c);
    }
    p
}

/// A bihomogeneous superform of bidegree `(p, q)` with one or two terms.
pub fn random_form(rng: &mut TestRng, n: usize, p: usize, q: usize, deg: u32) -> SuperForm {
    let idx: Vec<usize> = (0..n).collect();
    let mut out = SuperForm::zero(n);
    for _ in 0..rng.gen_range(1..=2) {
        let mut i: Vec<usize> = idx.choose_multiple(rng, p).copied().collect();
        let mut j: Vec<usize> = idx.choose_multiple(rng, q).copied().collect();
        i.sort();
        j.sort();
        out = out + SuperForm::monomial(random_poly(rng, n, deg), &i, &j).unwrap();
    }
    out
}

/// `max` of two or three affine functions with small integer data.
pub fn random_pl(rng: &mut TestRng, n: usize) -> PLFunction {
    loop {
        let k = rng.gen_range(2..=3);
        let fns: Vec<Affine> =
            (0..k).map(|_| Affine::new((0..n).map(|_| small(rng, -2, 2)).collect(), small(rng, -2, 2))).collect();
        if let Ok(phi) = PLFunction::max_of(n, &fns) {
            if phi.pieces().count() > 1 {
                return phi;
            }
        }
    }
}

pub fn whole_complex(n: usize) -> Complex {
    Complex::from_maximal(n, vec![Polyhedron::whole(n)]).unwrap()
}

/// A compatible piecewise form `φ α` or `d'φ ∧ α` or `d''φ ∧ α` on the
/// domains of linearity of a random `φ`, with `α` global.
pub fn random_piecewise(rng: &mut TestRng, n: usize) -> PiecewiseForm {
    let phi = random_pl(rng, n);
    let kind = rng.gen_range(0..3);
    let (p, q) = match kind {
        0 => (rng.gen_range(0..=1.min(n)), rng.gen_range(0..=1.min(n))),
        _ => (rng.gen_range(0..n), rng.gen_range(0..n)),
    };
    let alpha = random_form(rng, n, p, q, 2);
    let forms: Vec<SuperForm> = phi
        .pieces()
        .map(|(_, f)| {
            let lin = SuperForm::function(f.as_poly());
            match kind {
                0 => alpha.mul_poly(&f.as_poly()),
                1 => lin.dprime().wedge(&alpha),
                _ => lin.dsecond().wedge(&alpha),
            }
        })
        .collect();
    PiecewiseForm::new(phi.complex().clone(), forms).unwrap()
}

/// A random tropical cycle in `ℝⁿ`: the whole space, a corner locus, or for
/// `n = 3` the intersection of two corner loci.
pub fn random_cycle(rng: &mut TestRng, n: usize) -> DeltaForm {
    match rng.gen_range(0..4) {
        0 => whole(n),
        1 | 2 => Divisor::new(random_pl(rng, n)).materialize().unwrap(),
        _ => {
            let d = Divisor::new(random_pl(rng, n)).materialize().unwrap();
            if n == 3 {
                Divisor::new(random_pl(rng, n)).intersect(&d).unwrap()
            } else {
                d
            }
        }
    }
}

/// A balanced δ-form with polynomial coefficients: a random cycle times a
/// random global or piecewise form.
pub fn random_delta(rng: &mut TestRng, n: usize) -> DeltaForm {
    let c = random_cycle(rng, n);
    let alpha = if rng.gen_bool(0.5) {
        let p = rng.gen_range(0..=1);
        let q = rng.gen_range(0..=1);
        PiecewiseForm::constant(whole_complex(n), random_form(rng, n, p, q, 2)).unwrap()
    } else {
        random_piecewise(rng, n)
    };
    c.ps_multiply(&alpha).unwrap()
}

/// A random cell of dimension `d` in `ℝⁿ`: the image of a simplex with small
/// integer vertices under an injective integer map, or for `d = n` sometimes
/// a box.
pub fn random_cell(rng: &mut TestRng, n: usize, d: usize) -> Polyhedron {
    if d == n && rng.gen_bool(0.3) {
        let lo: Vec<Rational> = (0..n).map(|_| small(rng, -2, 1)).collect();
        let hi: Vec<Rational> = lo.iter().map(|x| x + rat(rng.gen_range(1..=5), rng.gen_range(1..=2))).collect();
        return Polyhedron::cube(&lo, &hi).unwrap();
    }
    let simplex = loop {
        let verts: Vec<Vec<Rational>> = (0..=d).map(|_| (0..d).map(|_| small(rng, -3, 3)).collect()).collect();
        if let Ok(s) = Polyhedron::simplex(&verts) {
            if s.dim() == d {
                break s;
            }
        }
    };
    if d == n {
        return simplex;
    }
    loop {
        let rows = (0..n).map(|_| (0..d).map(|_| small(rng, -2, 2)).collect()).collect();
        let offset = (0..n).map(|_| small(rng, -2, 2)).collect();
        let f = AffineMap::new(RatMatrix::from_rows(rows, d).unwrap(), offset).unwrap();
        if f.is_injective() {
            return simplex.image(&f).unwrap();
        }
    }
}

/// The product of a window's slack functionals: test forms multiplied by it
/// vanish on the window boundary.
pub fn bump(w: &Polyhedron) -> Poly {
    let n = w.ambient_dim();
    w.inequalities().iter().fold(Poly::one(n), |acc, (a, b)| {
        let neg: Vec<Rational> = a.iter().map(|x| -x).collect();
        &acc * &Poly::affine(&neg, b)
    })
}

pub fn window(n: usize) -> Polyhedron {
    Polyhedron::cube(&vec![rat(-5, 2); n], &vec![rat(7, 3); n]).unwrap()
}

/// Both sides of `(dT)(η) = (-1)^{deg T + 1} T(dη)` on a bounded window,
/// computed through integration only.
pub fn duality(t: &DeltaForm, eta: &SuperForm, side: Side) -> (Rational, Rational) {
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
