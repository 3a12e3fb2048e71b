//! Polynomial superforms: the bigraded algebra generated by `d'x_i` and
//! `d''x_j` over polynomials.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::Poly;
use crate::error::{Error, Result};
use crate::exact::rational::Rational;
use crate::exact::AffineMap;
use crate::polyhedra::Polyhedron;

/// A sum of terms `φ_{I,J} d'x_I ∧ d''x_J` with `I`, `J` ascending index
/// sets stored as bit masks. Indices are 0-based.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SuperForm {
    n: usize,
    terms: BTreeMap<(u64, u64), Poly>,
}

/// Sign of concatenating the ascending index sets `a` then `b` and sorting,
/// or `None` when they share an index.
pub(crate) fn merge_sign(a: u64, b: u64) -> Option<bool> {
    if a & b != 0 {
        return None;
    }
    let mut inversions = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        rest &= rest - 1;
        inversions += (a >> (j + 1)).count_ones();
    }
    Some(inversions % 2 == 1)
}

pub(crate) fn indices(mask: u64) -> Vec<usize> {
    (0..64).filter(|i| mask >> i & 1 == 1).collect()
}

fn mask_of(idx: &[usize]) -> u64 {
    idx.iter().fold(0, |m, &i| m | 1 << i)
}

fn sign_poly(p: Poly, negative: bool) -> Poly {
    if negative {
        -p
    } else {
        p
    }
}

impl SuperForm {
    pub fn zero(n: usize) -> Self {
        assert!(n <= 64, "at most 64 coordinates are supported");
        SuperForm { n, terms: BTreeMap::new() }
    }

    pub fn function(p: Poly) -> Self {
        let mut f = Self::zero(p.nvars());
        f.add_term(0, 0, p);
        f
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        Self::function(Poly::constant(n, c))
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, Rational::one())
    }

    /// `d'x_i`
    pub fn dprime_x(n: usize, i: usize) -> Self {
        let mut f = Self::zero(n);
        f.add_term(1 << i, 0, Poly::one(n));
        f
    }

    /// `d''x_i`
    pub fn dsecond_x(n: usize, i: usize) -> Self {
        let mut f = Self::zero(n);
        f.add_term(0, 1 << i, Poly::one(n));
        f
    }

    /// `p · d'x_{dp[0]} ∧ … ∧ d''x_{ds[0]} ∧ …` with indices in any order.
    pub fn monomial(p: Poly, dp: &[usize], ds: &[usize]) -> Result<Self> {
        let n = p.nvars();
        if dp.iter().chain(ds).any(|&i| i >= n) {
            return Err(Error::Dimension(format!("differential index out of range for {n} coordinates")));
        }
        let mut f = Self::function(p);
        for &i in dp {
            f = f.wedge(&Self::dprime_x(n, i));
        }
        for &j in ds {
            f = f.wedge(&Self::dsecond_x(n, j));
        }
        Ok(f)
    }

    /// Top form `d'x_0 ∧ d''x_0 ∧ … ∧ d'x_{n-1} ∧ d''x_{n-1}` times `p`.
    pub fn volume(p: Poly) -> Self {
        let n = p.nvars();
        let mut f = Self::function(p);
        for i in 0..n {
            f = f.wedge(&Self::dprime_x(n, i)).wedge(&Self::dsecond_x(n, i));
        }
        f
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (Vec<usize>, Vec<usize>, &Poly)> {
        self.terms.iter().map(|(&(i, j), p)| (indices(i), indices(j), p))
    }

    pub fn raw_terms(&self) -> &BTreeMap<(u64, u64), Poly> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, i: u64, j: u64, p: Poly) {
        assert_eq!(p.nvars(), self.n, "coefficient in the wrong number of variables");
        if p.is_zero() {
            return;
        }
        let merged = match self.terms.remove(&(i, j)) {
            Some(old) => old + p,
            None => p,
        };
        if !merged.is_zero() {
            self.terms.insert((i, j), merged);
        }
    }

    pub fn coefficient(&self, dp: &[usize], ds: &[usize]) -> Poly {
        self.terms.get(&(mask_of(dp), mask_of(ds))).cloned().unwrap_or_else(|| Poly::zero(self.n))
    }

    /// Bidegrees of all terms.
    pub fn bidegrees(&self) -> Vec<(usize, usize)> {
        let mut v: Vec<(usize, usize)> =
            self.terms.keys().map(|(i, j)| (i.count_ones() as usize, j.count_ones() as usize)).collect();
        v.sort();
        v.dedup();
        v
    }

    /// The bidegree if the form is bihomogeneous and nonzero.
    pub fn bidegree(&self) -> Option<(usize, usize)> {
        let b = self.bidegrees();
        (b.len() == 1).then(|| b[0])
    }

    /// The component of bidegree `(p, q)`.
    pub fn component(&self, p: usize, q: usize) -> Self {
        SuperForm {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|((i, j), _)| i.count_ones() as usize == p && j.count_ones() as usize == q)
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        SuperForm { n: self.n, terms: self.terms.iter().map(|(k, p)| (*k, p.scale(c))).collect() }
    }

    pub fn mul_poly(&self, q: &Poly) -> Self {
        let mut out = Self::zero(self.n);
        for (&(i, j), p) in &self.terms {
            out.add_term(i, j, p * q);
        }
        out
    }

    pub fn wedge(&self, other: &SuperForm) -> SuperForm {
        assert_eq!(self.n, other.n, "wedge of forms in different coordinates");
        let mut out = Self::zero(self.n);
        for (&(i1, j1), p1) in &self.terms {
            for (&(i2, j2), p2) in &other.terms {
                let (Some(si), Some(sj)) = (merge_sign(i1, i2), merge_sign(j1, j2)) else { continue };
                // Move d'x_{I2} past d''x_{J1}.
                let cross = (j1.count_ones() * i2.count_ones()) % 2 == 1;
                out.add_term(i1 | i2, j1 | j2, sign_poly(p1 * p2, si ^ sj ^ cross));
            }
        }
        out
    }

    pub fn dprime(&self) -> SuperForm {
        let mut out = Self::zero(self.n);
        for (&(i, j), p) in &self.terms {
            for k in 0..self.n {
                if i >> k & 1 == 1 {
                    continue;
                }
                let dp = p.derivative(k);
                if dp.is_zero() {
                    continue;
                }
                let neg = (i & ((1 << k) - 1)).count_ones() % 2 == 1;
                out.add_term(i | 1 << k, j, sign_poly(dp, neg));
            }
        }
        out
    }

    pub fn dsecond(&self) -> SuperForm {
        let mut out = Self::zero(self.n);
        for (&(i, j), p) in &self.terms {
            for k in 0..self.n {
                if j >> k & 1 == 1 {
                    continue;
                }
                let dp = p.derivative(k);
                if dp.is_zero() {
                    continue;
                }
                let neg = (i.count_ones() + (j & ((1 << k) - 1)).count_ones()) % 2 == 1;
                out.add_term(i, j | 1 << k, sign_poly(dp, neg));
            }
        }
        out
    }

    /// Interior product with `w = (w1, w2) ∈ ℝⁿ × ℝⁿ` in the first slot.
    pub fn contract(&self, w1: &[Rational], w2: &[Rational]) -> SuperForm {
        assert!(w1.len() == self.n && w2.len() == self.n, "contraction vector length");
        let mut out = Self::zero(self.n);
        for (&(i, j), p) in &self.terms {
            let p_deg = i.count_ones();
            for (pos, k) in indices(i).into_iter().enumerate() {
                if w1[k].is_zero() {
                    continue;
                }
                out.add_term(i & !(1 << k), j, sign_poly(p.scale(&w1[k]), pos % 2 == 1));
            }
            for (pos, k) in indices(j).into_iter().enumerate() {
                if w2[k].is_zero() {
                    continue;
                }
                out.add_term(i, j & !(1 << k), sign_poly(p.scale(&w2[k]), (p_deg as usize + pos) % 2 == 1));
            }
        }
        out
    }

    /// `(α, v')`
    pub fn contract_prime(&self, v: &[Rational]) -> SuperForm {
        self.contract(v, &vec![Rational::zero(); self.n])
    }

    /// `(α, v'')`
    pub fn contract_second(&self, v: &[Rational]) -> SuperForm {
        self.contract(&vec![Rational::zero(); self.n], v)
    }

    /// Pull-back along an affine map `f : ℝᵐ → ℝⁿ`.
    pub fn pullback(&self, f: &AffineMap) -> SuperForm {
        assert_eq!(f.target_dim(), self.n, "pull-back along a map with the wrong target");
        let m = f.source_dim();
        let dprimes: Vec<SuperForm> = (0..self.n)
            .map(|i| {
                let mut s = Self::zero(m);
                for k in 0..m {
                    let c = f.matrix().get(i, k);
                    if !c.is_zero() {
                        s.add_term(1 << k, 0, Poly::constant(m, c.clone()));
                    }
                }
                s
            })
            .collect();
        let dseconds: Vec<SuperForm> = dprimes
            .iter()
            .map(|s| SuperForm { n: m, terms: s.terms.iter().map(|(&(i, _), p)| ((0, i), p.clone())).collect() })
            .collect();
        let mut out = Self::zero(m);
        for (&(i, j), p) in &self.terms {
            let mut t = Self::function(p.compose(f));
            for k in indices(i) {
                t = t.wedge(&dprimes[k]);
                if t.is_zero() {
                    break;
                }
            }
            for k in indices(j) {
                if t.is_zero() {
                    break;
                }
                t = t.wedge(&dseconds[k]);
            }
            out = out + t;
        }
        out
    }

    /// Restriction of an ambient form to the chart coordinates of `cell`.
    pub fn restrict(&self, cell: &Polyhedron) -> Result<SuperForm> {
        if self.n != cell.ambient_dim() {
            return Err(Error::Dimension(format!(
                "form in {} coordinates restricted to a cell in ℝ^{}",
                self.n,
                cell.ambient_dim()
            )));
        }
        Ok(self.pullback(&cell.chart().embedding()))
    }

    /// A form given either in ambient coordinates or already in the chart of
    /// `cell`, expressed in chart coordinates. Ambient reading wins when the
    /// two coincide.
    pub fn chart_form(&self, cell: &Polyhedron) -> Result<SuperForm> {
        if self.n == cell.ambient_dim() {
            self.restrict(cell)
        } else if self.n == cell.dim() {
            Ok(self.clone())
        } else {
            Err(Error::Dimension(format!(
                "form in {} coordinates does not live on a {}-dimensional cell in ℝ^{}",
                self.n,
                cell.dim(),
                cell.ambient_dim()
            )))
        }
    }

    /// Coefficient of the normal-form top term `d'x_{0..n} ∧ d''x_{0..n}`.
    pub fn top_coefficient(&self) -> Poly {
        let all = if self.n == 64 { u64::MAX } else { (1u64 << self.n) - 1 };
        self.terms.get(&(all, all)).cloned().unwrap_or_else(|| Poly::zero(self.n))
    }

    /// Swap the roles of `d'` and `d''`, the symmetry `J` with
    /// `J(d'x_i) = d''x_i`, extended as an algebra automorphism.
    pub fn swap_primes(&self) -> SuperForm {
        let mut out = Self::zero(self.n);
        for (&(i, j), p) in &self.terms {
            let neg = (i.count_ones() * j.count_ones()) % 2 == 1;
            out.add_term(j, i, sign_poly(p.clone(), neg));
        }
        out
    }

    /// Total degree of each term is `p + q`; `None` if mixed.
    pub fn degree(&self) -> Option<usize> {
        let mut d: Vec<usize> = self.bidegrees().into_iter().map(|(p, q)| p + q).collect();
        d.dedup();
        match d.len() {
            0 => Some(0),
            1 => Some(d[0]),
            _ => None,
        }
    }
}

impl Add for SuperForm {
    type Output = SuperForm;
    fn add(mut self, rhs: SuperForm) -> SuperForm {
        assert_eq!(self.n, rhs.n, "adding forms in different coordinates");
        for ((i, j), p) in rhs.terms {
            self.add_term(i, j, p);
        }
        self
    }
}

impl Sub for SuperForm {
    type Output = SuperForm;
    fn sub(self, rhs: SuperForm) -> SuperForm {
        self + (-rhs)
    }
}

impl Neg for SuperForm {
    type Output = SuperForm;
    fn neg(self) -> SuperForm {
        SuperForm { n: self.n, terms: self.terms.into_iter().map(|(k, p)| (k, -p)).collect() }
    }
}

impl fmt::Debug for SuperForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for SuperForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(&(i, j), p)| {
                let mut s = format!("({p})");
                for k in indices(i) {
                    s.push_str(&format!(" d'x{k}"));
                }
                for k in indices(j) {
                    s.push_str(&format!(" d''x{k}"));
                }
                s
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::int;
    use crate::exact::RatMatrix;

    fn dp(n: usize, i: usize) -> SuperForm {
        SuperForm::dprime_x(n, i)
    }
    fn ds(n: usize, i: usize) -> SuperForm {
        SuperForm::dsecond_x(n, i)
    }

    #[test]
    fn graded_commutativity() {
        assert_eq!(dp(1, 0).wedge(&ds(1, 0)), -ds(1, 0).wedge(&dp(1, 0)));
        let x = SuperForm::function(Poly::var(1, 0));
        assert!(x.wedge(&dp(1, 0)).wedge(&dp(1, 0)).is_zero());
        let a = dp(2, 0).wedge(&ds(2, 0));
        let b = dp(2, 1).wedge(&ds(2, 1));
        assert_eq!(a.wedge(&b), b.wedge(&a));
    }

    #[test]
    fn differentials() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let f = SuperForm::function(&x * &x);
        assert_eq!(f.dprime(), SuperForm::function(x.scale(&int(2))).wedge(&dp(2, 0)));
        let g = SuperForm::function(&x * &y);
        assert_eq!(g.dprime().dsecond(), -g.dsecond().dprime());
        assert!(g.dprime().dprime().is_zero());
    }

    #[test]
    fn contraction() {
        let e = vec![int(1)];
        let z = vec![int(0)];
        assert_eq!(dp(1, 0).contract(&e, &z), SuperForm::one(1));
        assert!(dp(1, 0).contract(&z, &e).is_zero());
        assert_eq!(dp(1, 0).wedge(&ds(1, 0)).contract(&z, &e), -dp(1, 0));
        assert!(SuperForm::one(1).contract(&e, &e).is_zero());
    }

    #[test]
    fn pullbacks() {
        let f = AffineMap::linear(RatMatrix::from_rows(vec![vec![int(2)]], 1).unwrap());
        let a = dp(1, 0).wedge(&ds(1, 0));
        assert_eq!(a.pullback(&f), a.scale(&int(4)));
        let proj = AffineMap::coordinate_projection(2, &[0]);
        let b = SuperForm::function(Poly::var(1, 0)).wedge(&dp(1, 0));
        assert_eq!(b.pullback(&proj), SuperForm::function(Poly::var(2, 0)).wedge(&dp(2, 0)));
    }

    #[test]
    fn volume_form_sign() {
        let v = SuperForm::volume(Poly::one(2));
        assert_eq!(v.top_coefficient(), Poly::constant(2, int(-1)));
    }
}
