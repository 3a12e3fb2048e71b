//! Affine-linear maps `x ↦ A·x + b` between rational vector spaces.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::matrix::RatMatrix;
use super::rational::Rational;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineMap {
    matrix: RatMatrix,
    offset: Vec<Rational>,
}

impl AffineMap {
    pub fn new(matrix: RatMatrix, offset: Vec<Rational>) -> Result<Self> {
        if offset.len() != matrix.nrows() {
            return Err(Error::Dimension(format!(
                "offset has length {} but the matrix has {} rows",
                offset.len(),
                matrix.nrows()
            )));
        }
        Ok(AffineMap { matrix, offset })
    }

    pub fn linear(matrix: RatMatrix) -> Self {
        let m = matrix.nrows();
        AffineMap { matrix, offset: vec![Rational::zero(); m] }
    }

    pub fn identity(n: usize) -> Self {
        Self::linear(RatMatrix::identity(n))
    }

    pub fn translation(v: Vec<Rational>) -> Self {
        AffineMap { matrix: RatMatrix::identity(v.len()), offset: v }
    }

    /// Projection of ℝ^{n} onto the coordinates listed in `coords`.
    pub fn coordinate_projection(n: usize, coords: &[usize]) -> Self {
        let mut m = RatMatrix::zeros(coords.len(), n);
        for (i, &c) in coords.iter().enumerate() {
            m.set(i, c, Rational::from_integer(1.into()));
        }
        Self::linear(m)
    }

    /// Dimension of the source space.
    pub fn source_dim(&self) -> usize {
        self.matrix.ncols()
    }

    /// Dimension of the target space.
    pub fn target_dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.matrix
    }

    pub fn offset(&self) -> &[Rational] {
        &self.offset
    }

    pub fn apply(&self, x: &[Rational]) -> Vec<Rational> {
        self.matrix.mul_vec(x).into_iter().zip(&self.offset).map(|(a, b)| a + b).collect()
    }

    pub fn apply_linear(&self, v: &[Rational]) -> Vec<Rational> {
        self.matrix.mul_vec(v)
    }

    /// `self ∘ inner`
    pub fn compose(&self, inner: &AffineMap) -> AffineMap {
        assert_eq!(self.source_dim(), inner.target_dim(), "composition dimension mismatch");
        AffineMap { matrix: self.matrix.mul(&inner.matrix), offset: self.apply(&inner.offset) }
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.source_dim()
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.target_dim()
    }

    /// Inverse of a bijective map.
    pub fn inverse(&self) -> Option<AffineMap> {
        if self.source_dim() != self.target_dim() {
            return None;
        }
        let inv = self.matrix.inverse()?;
        let off = inv.mul_vec(&self.offset).into_iter().map(|x| -x).collect();
        Some(AffineMap { matrix: inv, offset: off })
    }

    /// Integer basis of the kernel of the linear part.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        self.matrix.kernel()
    }

    /// Product map `(x, y) ↦ (f(x), g(y))`.
    /// `x ↦ (self(x), other(x))`.
    pub fn stack(&self, other: &AffineMap) -> AffineMap {
        assert_eq!(self.source_dim(), other.source_dim(), "stacked maps need a common source");
        let rows: Vec<Vec<Rational>> = self.matrix.rows().iter().chain(other.matrix.rows()).cloned().collect();
        let mut offset = self.offset.clone();
        offset.extend(other.offset.iter().cloned());
        AffineMap { matrix: RatMatrix::from_rows(rows, self.source_dim()).expect("equal widths"), offset }
    }

    pub fn product(&self, other: &AffineMap) -> AffineMap {
        let (m1, n1) = (self.target_dim(), self.source_dim());
        let (m2, n2) = (other.target_dim(), other.source_dim());
        let mut m = RatMatrix::zeros(m1 + m2, n1 + n2);
        for i in 0..m1 {
            for j in 0..n1 {
                m.set(i, j, self.matrix.get(i, j).clone());
            }
        }
        for i in 0..m2 {
            for j in 0..n2 {
                m.set(m1 + i, n1 + j, other.matrix.get(i, j).clone());
            }
        }
        let mut off = self.offset.clone();
        off.extend(other.offset.iter().cloned());
        AffineMap { matrix: m, offset: off }
    }
}

#[derive(Serialize, Deserialize)]
struct AffineMapDoc {
    #[serde(with = "super::rational::mat_as_str")]
    matrix: Vec<Vec<Rational>>,
    #[serde(with = "super::rational::vec_as_str")]
    offset: Vec<Rational>,
}

impl Serialize for AffineMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        AffineMapDoc { matrix: self.matrix.rows().to_vec(), offset: self.offset.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for AffineMap {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = AffineMapDoc::deserialize(d)?;
        let cols = doc.matrix.first().map_or(0, |r| r.len());
        let m = RatMatrix::from_rows(doc.matrix, cols).map_err(serde::de::Error::custom)?;
        AffineMap::new(m, doc.offset).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::int;

    #[test]
    fn compose_and_invert() {
        let f = AffineMap::new(RatMatrix::from_rows(vec![vec![int(2)]], 1).unwrap(), vec![int(1)]).unwrap();
        let g = f.inverse().unwrap();
        assert_eq!(f.compose(&g), AffineMap::identity(1));
        assert_eq!(f.apply(&[int(3)]), vec![int(7)]);
    }

    #[test]
    fn json_round_trip() {
        let f: AffineMap = serde_json::from_str(r#"{"matrix":[["1","0"],["1/2","3"]],"offset":["0","-1"]}"#).unwrap();
        let s = serde_json::to_string(&f).unwrap();
        let g: AffineMap = serde_json::from_str(&s).unwrap();
        assert_eq!(f, g);
        assert!(f.is_injective() && f.is_surjective());
    }
}
