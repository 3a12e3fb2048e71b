//! Integer lattices inside ℚⁿ: Hermite normal form, saturation, indices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::RatMatrix;
use super::rational::{primitive_integer, to_rationals, Rational};
use crate::error::{Error, Result};

/// A lattice in ℤⁿ given by a basis in canonical (row Hermite) form: the
/// leading entry of row `j` sits in column `pivots[j]`, pivot columns
/// increase, pivots are positive and the entries above each pivot are
/// reduced into `[0, pivot)`. Two bases span the same lattice iff their
/// canonical forms agree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lattice {
    n: usize,
    basis: Vec<Vec<BigInt>>,
}

impl Lattice {
    /// Lattice generated by integer vectors (zero vectors allowed).
    pub fn generated_by(n: usize, gens: &[Vec<BigInt>]) -> Self {
        Lattice { n, basis: hnf_rows(gens, n) }
    }

    /// The saturated lattice `span(vectors) ∩ ℤⁿ` of a rational span.
    pub fn saturated_span(n: usize, vectors: &[Vec<Rational>]) -> Self {
        let ints: Vec<Vec<BigInt>> = vectors.iter().map(|v| primitive_integer(v)).collect();
        let perp = integer_kernel(&ints, n);
        let sat = integer_kernel(&perp, n);
        Self::generated_by(n, &sat)
    }

    pub fn full(n: usize) -> Self {
        let id: Vec<Vec<BigInt>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
            .collect();
        Lattice { n, basis: id }
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    pub fn basis_rational(&self) -> Vec<Vec<Rational>> {
        self.basis.iter().map(|b| to_rationals(b)).collect()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.basis
            .iter()
            .map(|r| r.iter().position(|x| !x.is_zero()).expect("basis rows are nonzero"))
            .collect()
    }

    pub fn is_saturated(&self) -> bool {
        *self == Self::saturated_span(self.n, &self.basis_rational())
    }

    /// Coordinates of `v` in this basis, if `v` lies in the rational span.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        let b = RatMatrix::from_columns(&self.basis_rational(), self.n);
        b.solve(v)
    }

    /// True when both lattices span the same rational subspace.
    pub fn same_span(&self, other: &Lattice) -> bool {
        self.n == other.n
            && self.rank() == other.rank()
            && self.basis_rational().iter().all(|v| other.coordinates(v).is_some())
    }
}

/// Result of [`saturate`]: the saturation and the index of the input lattice
/// inside it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Saturation {
    pub lattice: Lattice,
    pub index: BigInt,
}

pub fn saturate(n: usize, vectors: &[Vec<BigInt>]) -> Result<Saturation> {
    if vectors.is_empty() || vectors.iter().all(|v| v.iter().all(Zero::is_zero)) {
        return Err(Error::Degenerate("saturate needs at least one nonzero vector".into()));
    }
    if vectors.iter().any(|v| v.len() != n) {
        return Err(Error::Dimension(format!("vectors must have length {n}")));
    }
    let input = Lattice::generated_by(n, vectors);
    let sat = Lattice::saturated_span(n, &input.basis_rational());
    let idx = lattice_index(&input, &sat)?;
    debug_assert!(idx.is_integer());
    Ok(Saturation { lattice: sat, index: idx.to_integer() })
}

/// `covolume(sub) / covolume(sup)` for lattices spanning the same subspace.
pub fn lattice_index(sub: &Lattice, sup: &Lattice) -> Result<Rational> {
    if !sub.same_span(sup) {
        return Err(Error::Precondition("lattice_index: lattices span different subspaces".into()));
    }
    let cols: Vec<Vec<Rational>> = sub
        .basis_rational()
        .iter()
        .map(|v| sup.coordinates(v).expect("same span"))
        .collect();
    let c = RatMatrix::from_columns(&cols, sup.rank());
    Ok(c.det().abs())
}

/// Row Hermite normal form of the lattice generated by `gens`.
pub fn hnf_rows(gens: &[Vec<BigInt>], n: usize) -> Vec<Vec<BigInt>> {
    let mut a: Vec<Vec<BigInt>> = gens.iter().filter(|g| g.iter().any(|x| !x.is_zero())).cloned().collect();
    let mut r = 0;
    for c in 0..n {
        if r == a.len() {
            break;
        }
        if !eliminate_column(&mut a, r, c) {
            continue;
        }
        if a[r][c].is_negative() {
            for x in a[r].iter_mut() {
                *x = -x.clone();
            }
        }
        let piv = a[r][c].clone();
        for i in 0..r {
            let q = a[i][c].div_floor(&piv);
            if !q.is_zero() {
                for k in 0..n {
                    let t = &q * &a[r][k];
                    a[i][k] -= t;
                }
            }
        }
        r += 1;
    }
    a.truncate(r);
    a
}

/// Unimodular row operations on rows `r..` so that only row `r` has a
/// nonzero entry in column `c`. Returns false when the column is zero.
fn eliminate_column(a: &mut [Vec<BigInt>], r: usize, c: usize) -> bool {
    loop {
        let Some(p) = (r..a.len())
            .filter(|&i| !a[i][c].is_zero())
            .min_by(|&i, &j| a[i][c].abs().cmp(&a[j][c].abs()).then(i.cmp(&j)))
        else {
            return false;
        };
        a.swap(p, r);
        let piv = a[r][c].clone();
        let mut done = true;
        for i in r + 1..a.len() {
            if a[i][c].is_zero() {
                continue;
            }
            let q = a[i][c].div_floor(&piv);
            let width = a[i].len();
            for k in 0..width {
                let t = &q * &a[r][k];
                a[i][k] -= t;
            }
            if !a[i][c].is_zero() {
                done = false;
            }
        }
        if done {
            return true;
        }
    }
}

/// Basis of `{x ∈ ℤⁿ : row · x = 0 for every row}`; always saturated.
pub fn integer_kernel(rows: &[Vec<BigInt>], n: usize) -> Vec<Vec<BigInt>> {
    let m = rows.len();
    // Row j of `w` is column j of the input followed by the unit vector e_j.
    let mut w: Vec<Vec<BigInt>> = (0..n)
        .map(|j| {
            let mut r: Vec<BigInt> = rows.iter().map(|row| row[j].clone()).collect();
            r.extend((0..n).map(|k| if k == j { BigInt::one() } else { BigInt::zero() }));
            r
        })
        .collect();
    let mut r = 0;
    for c in 0..m {
        if r == n {
            break;
        }
        if eliminate_column(&mut w, r, c) {
            r += 1;
        }
    }
    w[r..].iter().map(|row| row[m..].to_vec()).collect()
}
