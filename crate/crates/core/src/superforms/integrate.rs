//! Exact integration of top-degree superforms over weighted cells and the
//! boundary integrals of Stokes' theorem.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::form::SuperForm;
use super::poly::Poly;
use crate::error::{Error, Result};
use crate::exact::rational::Rational;
use crate::exact::{AffineMap, RatMatrix};
use crate::polyhedra::{lattice_normal, Polyhedron, WeightedCell};

/// Which boundary operator a boundary integral refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    /// `∂'`, paired with `d'`; integrates `-(α, n'')`.
    First,
    /// `∂''`, paired with `d''`; integrates `(α, n')`.
    Second,
}

impl FromStr for Side {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "first" | "prime" => Ok(Side::First),
            "second" | "double-prime" => Ok(Side::Second),
            _ => Err(Error::Parse(format!("expected first or second, got {s}"))),
        }
    }
}

/// Outcome of comparing both sides of Stokes' theorem.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StokesCheck {
    pub lhs: Rational,
    pub rhs: Rational,
    pub equal: bool,
}

fn factorial(k: u32) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// `∫_Δ p` over the standard simplex `{t ≥ 0, Σ t ≤ 1}` in `ℝ^d`.
fn standard_simplex_integral(p: &Poly) -> Rational {
    let d = p.nvars() as u32;
    p.terms()
        .map(|(e, c)| {
            let num: BigInt = e.iter().map(|&a| factorial(a)).product();
            let total: u32 = e.iter().sum();
            c * Rational::new(num, factorial(total + d))
        })
        .sum()
}

/// `∫ p` over the simplex with the given `d + 1` vertices in `ℝ^d`.
pub fn simplex_integral(p: &Poly, vertices: &[Vec<Rational>]) -> Rational {
    let d = p.nvars();
    assert_eq!(vertices.len(), d + 1, "a d-simplex has d + 1 vertices");
    let v0 = &vertices[0];
    let cols: Vec<Vec<Rational>> =
        vertices[1..].iter().map(|v| v.iter().zip(v0).map(|(a, b)| a - b).collect()).collect();
    let m = RatMatrix::from_columns(&cols, d);
    let jac = m.det().abs();
    if jac.is_zero() {
        return Rational::zero();
    }
    let f = AffineMap::new(m, v0.clone()).expect("square map");
    standard_simplex_integral(&p.compose(&f)) * jac
}

/// Pulling triangulation of a bounded polytope from its lexicographically
/// smallest vertex. Simplices are listed by their vertices in ambient
/// coordinates and have the dimension of the polytope.
pub fn triangulate(p: &Polyhedron) -> Result<Vec<Vec<Vec<Rational>>>> {
    if !p.is_bounded() {
        return Err(Error::Precondition(format!("cannot triangulate the unbounded polyhedron {p}")));
    }
    let mut verts = p.vertices();
    verts.sort();
    Ok(pulling(p, &verts))
}

fn pulling(p: &Polyhedron, verts: &[Vec<Rational>]) -> Vec<Vec<Vec<Rational>>> {
    if p.dim() == 0 {
        return vec![vec![p.interior_point().to_vec()]];
    }
    let apex = &verts[0];
    let mut out = Vec::new();
    for f in p.facets() {
        if f.contains_point(apex) {
            continue;
        }
        let fv: Vec<Vec<Rational>> = verts.iter().filter(|v| f.contains_point(v)).cloned().collect();
        for mut s in pulling(f, &fv) {
            s.insert(0, apex.clone());
            out.push(s);
        }
    }
    out
}

/// `∫ p` over a bounded full-dimensional polytope in `ℝ^d`.
pub fn polytope_integral(p: &Poly, polytope: &Polyhedron) -> Result<Rational> {
    if polytope.dim() != p.nvars() || polytope.ambient_dim() != p.nvars() {
        return Err(Error::Dimension("polytope and integrand disagree on dimension".into()));
    }
    let simplices = triangulate(polytope)?;
    let parts: Vec<Rational> = simplices.par_iter().map(|s| simplex_integral(p, s)).collect();
    Ok(parts.into_iter().sum())
}

fn sign_for_dim(d: usize) -> Rational {
    if (d * d.saturating_sub(1) / 2) % 2 == 1 {
        -Rational::one()
    } else {
        Rational::one()
    }
}

/// `∫_{[σ,μ]} η` for a form of bidegree `(d, d)` on a bounded
/// `d`-dimensional weighted cell. The form is given in ambient or chart
/// coordinates.
pub fn integrate_top(eta: &SuperForm, cell: &WeightedCell) -> Result<Rational> {
    let sigma = &cell.cell;
    let d = sigma.dim();
    if !sigma.is_bounded() {
        return Err(Error::Precondition(format!("integration over the unbounded cell {sigma}")));
    }
    if let Some(&(p, q)) = eta.bidegrees().iter().find(|&&b| b != (d, d)) {
        return Err(Error::Precondition(format!(
            "integrand of bidegree ({p},{q}) on a {d}-dimensional cell"
        )));
    }
    let local = eta.chart_form(sigma)?;
    let phi = local.top_coefficient();
    if phi.is_zero() {
        return Ok(Rational::zero());
    }
    let raw = if d == 0 { phi.eval(&[]) } else { polytope_integral(&phi, &sigma.in_chart())? };
    Ok(raw * sign_for_dim(d) * &cell.weight)
}

fn boundary_with(alpha: &SuperForm, lambda: &Rational, q: &Polyhedron, side: Side, rescaled: Option<usize>) -> Result<Rational> {
    let mut total = Rational::zero();
    for (k, tau) in q.facets().iter().enumerate() {
        let nu = if rescaled == Some(k) { Rational::from_integer(2.into()) } else { Rational::one() };
        let n: Vec<Rational> = lattice_normal(tau, q)?.into_iter().map(|x| x * lambda / &nu).collect();
        let beta = match side {
            Side::First => -alpha.contract_second(&n),
            Side::Second => alpha.contract_prime(&n),
        };
        total += integrate_top(&beta, &WeightedCell::new(tau.clone(), nu)?)?;
    }
    Ok(total)
}

/// `∫_{∂'[σ,μ]} α` or `∫_{∂''[σ,μ]} α`, summed over the facets of a bounded
/// weighted cell of dimension `m`.
pub fn boundary_integral(alpha: &SuperForm, cell: &WeightedCell, side: Side) -> Result<Rational> {
    let sigma = &cell.cell;
    let m = sigma.dim();
    if !sigma.is_bounded() {
        return Err(Error::Precondition(format!("boundary integral over the unbounded cell {sigma}")));
    }
    if m == 0 {
        return Err(Error::Precondition("a point has no boundary".into()));
    }
    let want = match side {
        Side::First => (m - 1, m),
        Side::Second => (m, m - 1),
    };
    if let Some(&(p, q)) = alpha.bidegrees().iter().find(|&&b| b != want) {
        return Err(Error::Precondition(format!(
            "boundary integrand of bidegree ({p},{q}), expected ({},{})",
            want.0, want.1
        )));
    }
    let local = alpha.chart_form(sigma)?;
    let q = sigma.in_chart();
    let value = boundary_with(&local, &cell.weight, &q, side, None)?;
    // The facet weights are auxiliary: changing one must not change the sum.
    let check = boundary_with(&local, &cell.weight, &q, side, Some(0))?;
    if check != value {
        return Err(Error::Invalid("boundary integral depends on the facet weights".into()));
    }
    Ok(value)
}

/// Compare `∫ dα` with the boundary integral, `d = d'` for the first
/// boundary and `d = d''` for the second.
pub fn stokes_check(alpha: &SuperForm, cell: &WeightedCell, side: Side) -> Result<StokesCheck> {
    let rhs = boundary_integral(alpha, cell, side)?;
    let local = alpha.chart_form(&cell.cell)?;
    let da = match side {
        Side::First => local.dprime(),
        Side::Second => local.dsecond(),
    };
    let lhs = integrate_top(&da, cell)?;
    let equal = lhs == rhs;
    Ok(StokesCheck { lhs, rhs, equal })
}
