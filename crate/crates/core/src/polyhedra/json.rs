//! JSON documents for polyhedra, weighted cells and complexes.
//!
//! Equalities are written as pairs of opposite inequalities so that every
//! document uses the single `{"n", "ineqs"}` shape.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::complex::Complex;
use super::polyhedron::{Constraint, Polyhedron};
use super::weight::WeightedCell;
use crate::exact::rational::{self, Rational};

#[derive(Serialize, Deserialize)]
struct IneqDoc {
    #[serde(with = "rational::vec_as_str")]
    a: Vec<Rational>,
    #[serde(with = "rational::as_str")]
    b: Rational,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PolyDoc {
    n: usize,
    #[serde(default)]
    ineqs: Vec<IneqDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    eqs: Vec<IneqDoc>,
}

fn to_constraint(d: IneqDoc) -> Constraint {
    (d.a, d.b)
}

impl Serialize for Polyhedron {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let ineqs = self.as_inequalities().into_iter().map(|(a, b)| IneqDoc { a, b }).collect();
        PolyDoc { n: self.ambient_dim(), ineqs, eqs: vec![] }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polyhedron {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let doc = PolyDoc::deserialize(d)?;
        Polyhedron::nonempty(
            doc.n,
            doc.eqs.into_iter().map(to_constraint).collect(),
            doc.ineqs.into_iter().map(to_constraint).collect(),
        )
        .map_err(serde::de::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct WeightedCellDoc {
    #[serde(flatten)]
    cell: Polyhedron,
    #[serde(with = "rational::as_str")]
    weight: Rational,
}

impl Serialize for WeightedCell {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        WeightedCellDoc { cell: self.cell.clone(), weight: self.weight.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for WeightedCell {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        let mut obj = v.as_object().cloned().ok_or_else(|| serde::de::Error::custom("expected an object"))?;
        let w = obj.remove("weight").unwrap_or(serde_json::Value::String("1".into()));
        let weight: String = serde_json::from_value(w).map_err(serde::de::Error::custom)?;
        let weight = rational::parse_rational(&weight).map_err(serde::de::Error::custom)?;
        let cell: Polyhedron = serde_json::from_value(serde_json::Value::Object(obj)).map_err(serde::de::Error::custom)?;
        WeightedCell::new(cell, weight).map_err(serde::de::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexDoc {
    n: usize,
    cells: Vec<Polyhedron>,
}

impl Serialize for Complex {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ComplexDoc { n: self.ambient_dim(), cells: self.maximal() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Complex {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let doc = ComplexDoc::deserialize(d)?;
        Complex::from_maximal(doc.n, doc.cells).map_err(serde::de::Error::custom)
    }
}
