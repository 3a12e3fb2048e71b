//! Exact linear programming by the simplex method with Bland's rule.
//!
//! Constraint matrices are rational. Right-hand sides may live in any
//! ordered ℚ-vector space (rationals or ℚ[ε]), which is what symbolic
//! perturbation needs.

use std::fmt::Debug;

use num_traits::{Signed, Zero};

use super::eps::EpsRational;
use super::rational::Rational;

/// Scalars allowed on the right-hand side of a linear program.
pub trait LpScalar: Clone + Ord + Debug {
    fn lp_zero() -> Self;
    fn lp_is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn scale(&self, q: &Rational) -> Self;
    fn from_rational(q: Rational) -> Self;
}

impl LpScalar for Rational {
    fn lp_zero() -> Self {
        Zero::zero()
    }
    fn lp_is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn scale(&self, q: &Rational) -> Self {
        self * q
    }
    fn from_rational(q: Rational) -> Self {
        q
    }
}

impl LpScalar for EpsRational {
    fn lp_zero() -> Self {
        EpsRational::new(vec![])
    }
    fn lp_is_zero(&self) -> bool {
        EpsRational::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn scale(&self, q: &Rational) -> Self {
        EpsRational::scale(self, q)
    }
    fn from_rational(q: Rational) -> Self {
        EpsRational::constant(q)
    }
}

/// A system `eqs[i].0 · x = eqs[i].1`, `ineqs[j].0 · x ≤ ineqs[j].1` over
/// free variables `x ∈ ℚⁿ`.
#[derive(Clone, Debug)]
pub struct LinearSystem<T> {
    pub n: usize,
    pub eqs: Vec<(Vec<Rational>, T)>,
    pub ineqs: Vec<(Vec<Rational>, T)>,
}

/// Outcome of a feasibility test.
#[derive(Clone, Debug)]
pub enum Feasibility<T> {
    /// A point satisfying every constraint.
    Feasible(Vec<T>),
    /// Multipliers `y` (one per equality, then one per inequality, the
    /// latter nonnegative) with `yᵀA = 0` and `yᵀb < 0`.
    Infeasible(Vec<Rational>),
}

#[derive(Clone, Debug)]
pub enum Extremum<T> {
    Optimal { value: T, point: Vec<T> },
    Unbounded,
    Infeasible,
}

impl<T: LpScalar> LinearSystem<T> {
    pub fn new(n: usize) -> Self {
        LinearSystem { n, eqs: vec![], ineqs: vec![] }
    }

    pub fn feasibility(&self) -> Feasibility<T> {
        let mut t = Tableau::build(self);
        match t.phase_one() {
            Ok(()) => Feasibility::Feasible(t.point()),
            Err(y) => Feasibility::Infeasible(y),
        }
    }

    pub fn is_feasible(&self) -> bool {
        matches!(self.feasibility(), Feasibility::Feasible(_))
    }

    /// Maximize (or minimize) `c · x` over the system.
    pub fn extremum(&self, c: &[Rational], maximize: bool) -> Extremum<T> {
        let mut t = Tableau::build(self);
        if t.phase_one().is_err() {
            return Extremum::Infeasible;
        }
        let cost: Vec<Rational> = c.iter().map(|x| if maximize { -x.clone() } else { x.clone() }).collect();
        match t.phase_two(&cost) {
            None => Extremum::Unbounded,
            Some(v) => {
                let value = if maximize { v.scale(&-Rational::from_integer(1.into())) } else { v };
                Extremum::Optimal { value, point: t.point() }
            }
        }
    }
}

/// Evaluate a linear functional with rational coefficients on a point.
pub fn eval_linear<T: LpScalar>(a: &[Rational], x: &[T]) -> T {
    a.iter().zip(x).fold(T::lp_zero(), |acc, (ai, xi)| acc.add(&xi.scale(ai)))
}

struct Tableau<T> {
    n: usize,
    m: usize,
    /// Column layout: x⁺ (n), x⁻ (n), slacks (one per inequality), artificials (m).
    a: Vec<Vec<Rational>>,
    rhs: Vec<T>,
    basis: Vec<usize>,
    flip: Vec<bool>,
    n_eq: usize,
    first_art: usize,
}

impl<T: LpScalar> Tableau<T> {
    fn build(sys: &LinearSystem<T>) -> Self {
        let n = sys.n;
        let n_eq = sys.eqs.len();
        let n_in = sys.ineqs.len();
        let m = n_eq + n_in;
        let first_art = 2 * n + n_in;
        let width = first_art + m;
        let mut a = Vec::with_capacity(m);
        let mut rhs = Vec::with_capacity(m);
        let mut flip = Vec::with_capacity(m);
        for (i, (row, b)) in sys.eqs.iter().chain(sys.ineqs.iter()).enumerate() {
            let mut r = vec![Rational::zero(); width];
            for j in 0..n {
                r[j] = row[j].clone();
                r[n + j] = -row[j].clone();
            }
            if i >= n_eq {
                r[2 * n + (i - n_eq)] = Rational::from_integer(1.into());
            }
            let neg = *b < T::lp_zero();
            let b = if neg {
                for x in r.iter_mut() {
                    *x = -x.clone();
                }
                b.scale(&Rational::from_integer((-1).into()))
            } else {
                b.clone()
            };
            r[first_art + i] = Rational::from_integer(1.into());
            a.push(r);
            rhs.push(b);
            flip.push(neg);
        }
        let basis = (0..m).map(|i| first_art + i).collect();
        Tableau { n, m, a, rhs, basis, flip, n_eq, first_art }
    }

    fn width(&self) -> usize {
        self.first_art + self.m
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.a[r][c].clone();
        let inv = p.recip();
        for x in self.a[r].iter_mut() {
            *x *= &inv;
        }
        self.rhs[r] = self.rhs[r].scale(&inv);
        let prow = self.a[r].clone();
        let prhs = self.rhs[r].clone();
        for i in 0..self.m {
            if i == r || self.a[i][c].is_zero() {
                continue;
            }
            let f = self.a[i][c].clone();
            for (x, y) in self.a[i].iter_mut().zip(&prow) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            self.rhs[i] = self.rhs[i].sub(&prhs.scale(&f));
        }
        self.basis[r] = c;
    }

    /// Minimize `cost · column` with columns `>= limit` frozen out. Returns
    /// false when unbounded.
    fn run(&mut self, cost: &[Rational], limit: usize) -> bool {
        loop {
            let mut entering = None;
            for j in 0..limit {
                if self.basis.contains(&j) {
                    continue;
                }
                let mut r = cost[j].clone();
                for i in 0..self.m {
                    if !self.a[i][j].is_zero() {
                        r -= &cost[self.basis[i]] * &self.a[i][j];
                    }
                }
                if r.is_negative() {
                    entering = Some(j);
                    break;
                }
            }
            let Some(j) = entering else { return true };
            let mut leave: Option<(usize, T)> = None;
            for i in 0..self.m {
                if self.a[i][j].is_positive() {
                    let ratio = self.rhs[i].scale(&self.a[i][j].recip());
                    let better = match &leave {
                        None => true,
                        Some((k, best)) => ratio < *best || (ratio == *best && self.basis[i] < self.basis[*k]),
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            let Some((i, _)) = leave else { return false };
            self.pivot(i, j);
        }
    }

    fn phase_one(&mut self) -> Result<(), Vec<Rational>> {
        let w = self.width();
        let mut cost = vec![Rational::zero(); w];
        for c in cost.iter_mut().skip(self.first_art) {
            *c = Rational::from_integer(1.into());
        }
        self.run(&cost, w);
        let value = (0..self.m)
            .filter(|&i| self.basis[i] >= self.first_art)
            .fold(T::lp_zero(), |acc, i| acc.add(&self.rhs[i]));
        if !value.lp_is_zero() {
            // y = c_B B⁻¹, read off the artificial columns.
            let mut y = vec![Rational::zero(); self.m];
            for (k, yk) in y.iter_mut().enumerate() {
                let col = self.first_art + k;
                for i in 0..self.m {
                    if self.basis[i] >= self.first_art && !self.a[i][col].is_zero() {
                        *yk += &self.a[i][col];
                    }
                }
            }
            let cert = y
                .into_iter()
                .enumerate()
                .map(|(i, yi)| if self.flip[i] { yi } else { -yi })
                .collect();
            return Err(cert);
        }
        // Drive artificial variables out of the basis where possible.
        for i in 0..self.m {
            if self.basis[i] >= self.first_art {
                if let Some(j) = (0..self.first_art).find(|&j| !self.a[i][j].is_zero()) {
                    self.pivot(i, j);
                }
            }
        }
        Ok(())
    }

    fn phase_two(&mut self, c: &[Rational]) -> Option<T> {
        let mut cost = vec![Rational::zero(); self.width()];
        for j in 0..self.n {
            cost[j] = c[j].clone();
            cost[self.n + j] = -c[j].clone();
        }
        if !self.run(&cost, self.first_art) {
            return None;
        }
        Some(
            (0..self.m)
                .filter(|&i| !cost[self.basis[i]].is_zero())
                .fold(T::lp_zero(), |acc, i| acc.add(&self.rhs[i].scale(&cost[self.basis[i]]))),
        )
    }

    fn point(&self) -> Vec<T> {
        let mut x = vec![T::lp_zero(); self.n];
        for i in 0..self.m {
            let b = self.basis[i];
            if b < self.n {
                x[b] = x[b].add(&self.rhs[i]);
            } else if b < 2 * self.n {
                x[b - self.n] = x[b - self.n].sub(&self.rhs[i]);
            }
        }
        let _ = self.n_eq;
        x
    }
}
