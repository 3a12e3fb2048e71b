//! Finite polyhedral complexes and refinements.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{Signed, Zero};
use rayon::prelude::*;

use super::polyhedron::{Constraint, Polyhedron};
use crate::error::{Error, Result};
use crate::exact::rational::{primitive_integer, to_rationals, Rational};

/// A finite set of polyhedra closed under taking faces in which any two
/// members meet in a common face. Cells are kept sorted (by dimension, then
/// canonical form).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Complex {
    n: usize,
    cells: Vec<Polyhedron>,
}

impl Complex {
    pub fn empty(n: usize) -> Self {
        Complex { n, cells: vec![] }
    }

    /// The face closure of the given cells, validated.
    pub fn from_maximal(n: usize, cells: Vec<Polyhedron>) -> Result<Self> {
        if cells.iter().any(|c| c.ambient_dim() != n) {
            return Err(Error::Dimension(format!("cells must live in ℝ^{n}")));
        }
        let c = Self::closure(n, cells);
        if let Some((a, b)) = c.violation() {
            return Err(Error::Invalid(format!("cells {a} and {b} do not meet in a common face")));
        }
        Ok(c)
    }

    /// The face closure of the given cells without validation.
    pub fn closure(n: usize, cells: Vec<Polyhedron>) -> Self {
        let mut all: BTreeSet<Polyhedron> = BTreeSet::new();
        for c in cells {
            if !all.contains(&c) {
                all.extend(c.faces());
            }
        }
        Complex { n, cells: all.into_iter().collect() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn cells(&self) -> &[Polyhedron] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cells_of_dim(&self, d: usize) -> impl Iterator<Item = &Polyhedron> {
        self.cells.iter().filter(move |c| c.dim() == d)
    }

    /// Cells of codimension `r` in the ambient space.
    pub fn cells_of_codim(&self, r: usize) -> impl Iterator<Item = &Polyhedron> {
        let n = self.n;
        self.cells.iter().filter(move |c| c.dim() + r == n)
    }

    pub fn contains_cell(&self, c: &Polyhedron) -> bool {
        self.cells.binary_search(c).is_ok()
    }

    /// Cells that are not a proper face of another cell.
    pub fn maximal(&self) -> Vec<Polyhedron> {
        let faces: BTreeSet<&Polyhedron> = self.cells.iter().flat_map(|c| c.facets()).collect();
        self.cells.iter().filter(|c| !faces.contains(*c)).cloned().collect()
    }

    /// The cells containing `tau` as a facet.
    pub fn cofacets(&self, tau: &Polyhedron) -> Vec<Polyhedron> {
        self.cells
            .iter()
            .filter(|s| s.dim() == tau.dim() + 1 && s.facets().contains(tau))
            .cloned()
            .collect()
    }

    /// A pair of maximal cells whose intersection is not a common face.
    pub fn violation(&self) -> Option<(Polyhedron, Polyhedron)> {
        let max = self.maximal();
        let faces: Vec<BTreeSet<Polyhedron>> = max.iter().map(|c| c.faces().into_iter().collect()).collect();
        for i in 0..max.len() {
            for j in i + 1..max.len() {
                if let Some(x) = max[i].intersect(&max[j]) {
                    if !faces[i].contains(&x) || !faces[j].contains(&x) {
                        return Some((max[i].clone(), max[j].clone()));
                    }
                }
            }
        }
        None
    }

    pub fn is_valid(&self) -> bool {
        self.violation().is_none()
    }

    /// The smallest cell containing the point, if any.
    pub fn carrier(&self, x: &[Rational]) -> Option<&Polyhedron> {
        self.cells.iter().find(|c| c.contains_point(x))
    }
}

/// All nonempty intersections of a cell of `c1` with a cell of `c2`, closed
/// under faces. The support is the intersection of the supports.
pub fn common_refinement(c1: &Complex, c2: &Complex) -> Result<Complex> {
    if c1.n != c2.n {
        return Err(Error::Dimension("complexes live in different ambient spaces".into()));
    }
    let m1 = c1.maximal();
    let m2 = c2.maximal();
    let pairs: Vec<(usize, usize)> = (0..m1.len()).flat_map(|i| (0..m2.len()).map(move |j| (i, j))).collect();
    let cells: Vec<Polyhedron> = pairs.par_iter().filter_map(|&(i, j)| m1[i].intersect(&m2[j])).collect();
    Ok(Complex::closure(c1.n, cells))
}

/// A hyperplane `a · x = b` normalized so that `a` is a primitive integer
/// vector whose first nonzero entry is positive.
pub fn normalized_hyperplane((a, b): &Constraint) -> Option<Constraint> {
    let first = a.iter().find(|x| !x.is_zero())?;
    let ints = to_rationals(&primitive_integer(a));
    let mut scale = &ints[a.iter().position(|x| !x.is_zero()).unwrap()] / first;
    let mut a = ints;
    if a.iter().find(|x| !x.is_zero()).unwrap().is_negative() {
        a = a.into_iter().map(|x| -x).collect();
        scale = -scale;
    }
    Some((a, b * scale))
}

/// Every hyperplane supporting an equality or a facet of the given cells.
pub fn hyperplanes<'a>(cells: impl IntoIterator<Item = &'a Polyhedron>) -> Vec<Constraint> {
    let mut set: BTreeSet<Constraint> = BTreeSet::new();
    for c in cells {
        for h in c.equalities().iter().chain(c.inequalities()) {
            if let Some(h) = normalized_hyperplane(h) {
                set.insert(h);
            }
        }
    }
    set.into_iter().collect()
}

/// Split a cell along every hyperplane that crosses its relative interior.
/// The pieces have the dimension of the cell and cover it.
pub fn cut_by_hyperplanes(cell: &Polyhedron, planes: &[Constraint]) -> Vec<Polyhedron> {
    let mut pieces = vec![cell.clone()];
    for (a, b) in planes {
        let mut next = Vec::with_capacity(pieces.len());
        for p in pieces {
            let above = p.extremum(a, true).is_none_or(|m| m > *b);
            let crosses = above && p.extremum(a, false).is_none_or(|m| m < *b);
            if !crosses {
                next.push(p);
                continue;
            }
            let neg: Vec<Rational> = a.iter().map(|x| -x.clone()).collect();
            for piece in [p.restrict(&[], &[(a.clone(), b.clone())]), p.restrict(&[], &[(neg, -b.clone())])]
                .into_iter()
                .flatten()
            {
                if piece.dim() == p.dim() {
                    next.push(piece);
                }
            }
        }
        pieces = next;
    }
    pieces.sort();
    pieces
}

/// Subdivide a family of cells of one dimension so that any two pieces meet
/// in a common face. Returns, per input cell, its pieces. Cells that already
/// form a complex are returned unchanged.
pub fn subdivide(cells: &[Polyhedron]) -> Vec<Vec<Polyhedron>> {
    if cells.len() <= 1 {
        return cells.iter().map(|c| vec![c.clone()]).collect();
    }
    let already = Complex::closure(cells[0].ambient_dim(), cells.to_vec());
    let distinct: BTreeSet<&Polyhedron> = cells.iter().collect();
    if distinct.len() == cells.len() && already.is_valid() {
        return cells.iter().map(|c| vec![c.clone()]).collect();
    }
    let planes = hyperplanes(cells);
    cells.par_iter().map(|c| cut_by_hyperplanes(c, &planes)).collect()
}

/// Group cells by dimension.
pub fn by_dimension<'a>(cells: impl IntoIterator<Item = &'a Polyhedron>) -> BTreeMap<usize, Vec<Polyhedron>> {
    let mut out: BTreeMap<usize, Vec<Polyhedron>> = BTreeMap::new();
    for c in cells {
        out.entry(c.dim()).or_default().push(c.clone());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::int;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    fn half(a: &[i64], b: i64) -> Polyhedron {
        Polyhedron::from_ineqs(a.len(), vec![(v(a), int(b))]).unwrap().unwrap()
    }

    fn split_line(at: i64) -> Complex {
        Complex::from_maximal(1, vec![half(&[1], at), half(&[-1], -at)]).unwrap()
    }

    #[test]
    fn refine_breakpoints() {
        let r = common_refinement(&split_line(0), &split_line(1)).unwrap();
        assert_eq!(r.cells_of_dim(1).count(), 3);
        assert_eq!(r.cells_of_dim(0).count(), 2);
        let same = common_refinement(&split_line(0), &split_line(0)).unwrap();
        assert_eq!(same, split_line(0));
    }

    #[test]
    fn refine_fans() {
        let f1 = Complex::from_maximal(2, vec![half(&[1, -1], 0), half(&[-1, 1], 0)]).unwrap();
        let f2 = Complex::from_maximal(2, vec![half(&[1, 0], 0), half(&[-1, 0], 0)]).unwrap();
        let r = common_refinement(&f1, &f2).unwrap();
        assert_eq!(r.cells_of_dim(2).count(), 4);
        assert_eq!(r.cells_of_dim(1).count(), 4);
        assert_eq!(r.cells_of_dim(0).count(), 1);
        assert!(r.is_valid());
    }

    #[test]
    fn invalid_complex_rejected() {
        let a = Polyhedron::cube(&v(&[0]), &v(&[2])).unwrap();
        let b = Polyhedron::cube(&v(&[1]), &v(&[3])).unwrap();
        assert!(Complex::from_maximal(1, vec![a.clone(), b.clone()]).is_err());
        let pieces = subdivide(&[a, b]);
        assert_eq!(pieces[0].len(), 2);
        assert_eq!(pieces[1].len(), 2);
    }
}
