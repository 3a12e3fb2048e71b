//! The ordered ring ℚ[ε] with ε a positive infinitesimal.
//!
//! Values are polynomials in ε. A value is positive when its lowest-degree
//! nonzero coefficient is positive, which realizes "for all sufficiently
//! small ε > 0" without ever choosing a numeric ε.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::{format_rational, parse_rational, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct EpsRational {
    /// Coefficients by ascending ε-degree; no trailing zeros.
    coeffs: Vec<Rational>,
}

impl EpsRational {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        EpsRational { coeffs }
    }

    pub fn constant(q: Rational) -> Self {
        Self::new(vec![q])
    }

    /// `a + b·ε`
    pub fn linear(a: Rational, b: Rational) -> Self {
        Self::new(vec![a, b])
    }

    /// The infinitesimal ε itself.
    pub fn eps() -> Self {
        Self::new(vec![Rational::zero(), Rational::from_integer(1.into())])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Sign of the lowest nonzero coefficient.
    pub fn signum(&self) -> i8 {
        match self.coeffs.iter().find(|c| !c.is_zero()) {
            None => 0,
            Some(c) if c.is_positive() => 1,
            Some(_) => -1,
        }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * q).collect())
    }

    /// Evaluates at a concrete rational ε.
    pub fn eval(&self, at: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * at + c)
    }
}

impl From<Rational> for EpsRational {
    fn from(q: Rational) -> Self {
        Self::constant(q)
    }
}

impl Ord for EpsRational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self - other).signum() {
            0 => Ordering::Equal,
            1 => Ordering::Greater,
            _ => Ordering::Less,
        }
    }
}

impl PartialOrd for EpsRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn zip_with(a: &EpsRational, b: &EpsRational, f: impl Fn(&Rational, &Rational) -> Rational) -> EpsRational {
    let len = a.coeffs.len().max(b.coeffs.len());
    let z = Rational::zero();
    EpsRational::new(
        (0..len)
            .map(|k| f(a.coeffs.get(k).unwrap_or(&z), b.coeffs.get(k).unwrap_or(&z)))
            .collect(),
    )
}

impl Add for &EpsRational {
    type Output = EpsRational;
    fn add(self, rhs: &EpsRational) -> EpsRational {
        zip_with(self, rhs, |x, y| x + y)
    }
}

impl Sub for &EpsRational {
    type Output = EpsRational;
    fn sub(self, rhs: &EpsRational) -> EpsRational {
        zip_with(self, rhs, |x, y| x - y)
    }
}

impl Mul for &EpsRational {
    type Output = EpsRational;
    fn mul(self, rhs: &EpsRational) -> EpsRational {
        if self.is_zero() || rhs.is_zero() {
            return EpsRational::default();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        EpsRational::new(out)
    }
}

impl Neg for &EpsRational {
    type Output = EpsRational;
    fn neg(self) -> EpsRational {
        EpsRational::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for EpsRational {
            type Output = EpsRational;
            fn $m(self, rhs: EpsRational) -> EpsRational {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for EpsRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("{c}"),
                1 => format!("({c})ε"),
                _ => format!("({c})ε^{k}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Serialize for EpsRational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<String> = self.coeffs.iter().map(format_rational).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for EpsRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        let coeffs = v
            .iter()
            .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(EpsRational::new(coeffs))
    }
}
