//! JSON documents for polyhedral currents.
//!
//! `{"n": 2, "terms": [{"cell": ..., "weight": "1", "form": ..., "chart": {"base": [...], "basis": [[...]]}}]}`
//! The form is written in the coordinates of the listed chart. On input the
//! chart and weight are optional; on output the chart is the canonical one
//! and the weight is 1.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::DeltaForm;
use crate::error::{Error, Result};
use crate::exact::rational::{self, parse_rational, Rational};
use crate::exact::{AffineMap, RatMatrix};
use crate::polyhedra::{Polyhedron, WeightedCell};
use crate::superforms::json::FormDoc;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ChartDoc {
    #[serde(with = "rational::vec_as_str")]
    base: Vec<Rational>,
    #[serde(with = "rational::mat_as_str")]
    basis: Vec<Vec<Rational>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermDoc {
    cell: Polyhedron,
    #[serde(default)]
    weight: Option<String>,
    form: FormDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    chart: Option<ChartDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DeltaDoc {
    n: usize,
    terms: Vec<TermDoc>,
}

/// Coordinates of the canonical chart of `cell` in terms of a given chart.
fn from_given_chart(cell: &Polyhedron, chart: &ChartDoc) -> Result<AffineMap> {
    let n = cell.ambient_dim();
    let d = cell.dim();
    if chart.base.len() != n || chart.basis.len() != d || chart.basis.iter().any(|b| b.len() != n) {
        return Err(Error::Dimension(format!("chart of a {d}-cell in ℝ^{n} has the wrong shape")));
    }
    let given = RatMatrix::from_columns(&chart.basis, n);
    if given.rank() != d || !cell.chart().lattice().same_span(&crate::polyhedra::weight::span_lattice(n, &chart.basis)) {
        return Err(Error::Invalid("chart basis does not span the cell's direction".into()));
    }
    let canonical = cell.chart();
    let cols = canonical
        .basis()
        .iter()
        .map(|b| given.solve(b).ok_or_else(|| Error::Invalid("chart basis does not span the cell".into())))
        .collect::<Result<Vec<_>>>()?;
    let shift: Vec<Rational> = canonical.base().iter().zip(&chart.base).map(|(a, b)| a - b).collect();
    let offset = given.solve(&shift).ok_or_else(|| Error::Invalid("chart base point is off the cell's span".into()))?;
    AffineMap::new(RatMatrix::from_columns(&cols, d), offset)
}

impl DeltaForm {
    fn from_doc(doc: DeltaDoc) -> Result<DeltaForm> {
        let mut out = DeltaForm::zero(doc.n);
        for t in doc.terms {
            if t.cell.ambient_dim() != doc.n {
                return Err(Error::Dimension(format!("cell in ℝ^{} inside a current on ℝ^{}", t.cell.ambient_dim(), doc.n)));
            }
            let weight = match &t.weight {
                Some(w) => parse_rational(w)?,
                None => Rational::from_integer(1.into()),
            };
            let d = t.cell.dim();
            let form = t.form.into_form(Some(d))?;
            let local = match &t.chart {
                Some(c) => form.pullback(&from_given_chart(&t.cell, c)?),
                None => form,
            };
            out.add_term(&WeightedCell::new(t.cell, weight)?, &local)?;
        }
        Ok(out)
    }

    pub fn from_json_str(s: &str) -> Result<DeltaForm> {
        let doc: DeltaDoc = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_doc(doc)
    }

    pub fn from_json_value(v: serde_json::Value) -> Result<DeltaForm> {
        let doc: DeltaDoc = serde_json::from_value(v).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_doc(doc)
    }
}

impl Serialize for DeltaForm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms = self
            .terms
            .iter()
            .map(|(c, a)| TermDoc {
                cell: c.clone(),
                weight: Some("1".into()),
                form: FormDoc::from_form(a),
                chart: Some(ChartDoc { base: c.chart().base().to_vec(), basis: c.chart().basis() }),
            })
            .collect();
        DeltaDoc { n: self.n, terms }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for DeltaForm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        DeltaForm::from_doc(DeltaDoc::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

