//! Continuous piecewise-linear functions and piecewise polynomial forms on
//! polyhedral complexes.

use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::form::SuperForm;
use super::json::FormDoc;
use super::poly::Poly;
use crate::error::{Error, Result};
use crate::exact::rational::{self, Rational};
use crate::exact::dot;
use crate::polyhedra::{Complex, Polyhedron};

/// An affine function `x ↦ a·x + b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Affine {
    pub linear: Vec<Rational>,
    pub constant: Rational,
}

impl Affine {
    pub fn new(linear: Vec<Rational>, constant: Rational) -> Self {
        Affine { linear, constant }
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        dot(&self.linear, x) + &self.constant
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.linear.iter().all(|x| x.is_zero())
    }

    pub fn as_poly(&self) -> Poly {
        Poly::affine(&self.linear, &self.constant)
    }

    fn agrees_on(&self, other: &Affine, face: &Polyhedron) -> bool {
        let ch = face.chart();
        let base = ch.base();
        self.eval(base) == other.eval(base)
            && ch.basis().iter().all(|v| dot(&self.linear, v) == dot(&other.linear, v))
    }
}

/// A continuous function on the support of a complex that is affine on
/// each maximal cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PLFunction {
    complex: Complex,
    maximal: Vec<Polyhedron>,
    pieces: Vec<Affine>,
}

impl PLFunction {
    /// `pieces[i]` is the affine function on `complex.maximal()[i]`.
    pub fn new(complex: Complex, pieces: Vec<Affine>) -> Result<Self> {
        let maximal = complex.maximal();
        if maximal.len() != pieces.len() {
            return Err(Error::Invalid(format!(
                "{} affine pieces for {} maximal cells",
                pieces.len(),
                maximal.len()
            )));
        }
        let n = complex.ambient_dim();
        if pieces.iter().any(|p| p.linear.len() != n) {
            return Err(Error::Dimension(format!("affine pieces must be functions on ℝ^{n}")));
        }
        let f = PLFunction { complex, maximal, pieces };
        if let Some(face) = f.discontinuity() {
            return Err(Error::Invalid(format!("piecewise-linear function is discontinuous along {face}")));
        }
        Ok(f)
    }

    /// `max_i (a_i·x + b_i)` on `ℝⁿ` with its domains of linearity.
    pub fn max_of(n: usize, fns: &[Affine]) -> Result<Self> {
        if fns.is_empty() {
            return Err(Error::Invalid("maximum of no functions".into()));
        }
        let mut cells: Vec<(Polyhedron, Affine)> = Vec::new();
        for (i, fi) in fns.iter().enumerate() {
            let ineqs = fns
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, fj)| {
                    let a: Vec<Rational> = fj.linear.iter().zip(&fi.linear).map(|(x, y)| x - y).collect();
                    (a, &fi.constant - &fj.constant)
                })
                .collect();
            if let Some(c) = Polyhedron::from_ineqs(n, ineqs)? {
                if c.dim() == n && !cells.iter().any(|(d, _)| d == &c) {
                    cells.push((c, fi.clone()));
                }
            }
        }
        let complex = Complex::from_maximal(n, cells.iter().map(|(c, _)| c.clone()).collect())?;
        let pieces = complex
            .maximal()
            .iter()
            .map(|m| cells.iter().find(|(c, _)| c == m).expect("maximal cell comes from a region").1.clone())
            .collect();
        PLFunction::new(complex, pieces)
    }

    pub fn complex(&self) -> &Complex {
        &self.complex
    }

    pub fn ambient_dim(&self) -> usize {
        self.complex.ambient_dim()
    }

    pub fn pieces(&self) -> impl Iterator<Item = (&Polyhedron, &Affine)> {
        self.maximal.iter().zip(&self.pieces)
    }

    /// A face on which two adjacent pieces disagree.
    pub fn discontinuity(&self) -> Option<Polyhedron> {
        for i in 0..self.maximal.len() {
            for j in i + 1..self.maximal.len() {
                if let Some(face) = self.maximal[i].intersect(&self.maximal[j]) {
                    if !self.pieces[i].agrees_on(&self.pieces[j], &face) {
                        return Some(face);
                    }
                }
            }
        }
        None
    }

    /// The affine function on some maximal cell containing `cell`.
    pub fn piece_on(&self, cell: &Polyhedron) -> Option<&Affine> {
        let x = cell.interior_point();
        self.maximal.iter().position(|m| m.contains_point(x)).map(|i| &self.pieces[i])
    }

    /// `φ` as a piecewise form of bidegree `(0, 0)`.
    pub fn to_piecewise(&self) -> PiecewiseForm {
        let forms = self.pieces.iter().map(|p| SuperForm::function(p.as_poly())).collect();
        PiecewiseForm::new(self.complex.clone(), forms).expect("continuous functions are compatible")
    }

    /// `d'φ`, a piecewise form with constant coefficients.
    pub fn dprime(&self) -> PiecewiseForm {
        let forms = self.pieces.iter().map(|p| SuperForm::function(p.as_poly()).dprime()).collect();
        PiecewiseForm::new(self.complex.clone(), forms).expect("linear parts agree along shared faces")
    }

    /// `d''φ`, a piecewise form with constant coefficients.
    pub fn dsecond(&self) -> PiecewiseForm {
        let forms = self.pieces.iter().map(|p| SuperForm::function(p.as_poly()).dsecond()).collect();
        PiecewiseForm::new(self.complex.clone(), forms).expect("linear parts agree along shared faces")
    }

    pub fn eval(&self, x: &[Rational]) -> Option<Rational> {
        self.maximal.iter().position(|m| m.contains_point(x)).map(|i| self.pieces[i].eval(x))
    }
}

/// A polynomial superform on each maximal cell of a complex, compatible
/// under restriction to shared faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiecewiseForm {
    complex: Complex,
    maximal: Vec<Polyhedron>,
    forms: Vec<SuperForm>,
}

impl PiecewiseForm {
    /// `forms[i]` lives on `complex.maximal()[i]`, in ambient coordinates.
    pub fn new(complex: Complex, forms: Vec<SuperForm>) -> Result<Self> {
        let maximal = complex.maximal();
        if maximal.len() != forms.len() {
            return Err(Error::Invalid(format!("{} forms for {} maximal cells", forms.len(), maximal.len())));
        }
        let n = complex.ambient_dim();
        if forms.iter().any(|f| f.nvars() != n) {
            return Err(Error::Dimension(format!("piecewise forms are given in the coordinates of ℝ^{n}")));
        }
        let mut degs: Vec<(usize, usize)> = forms.iter().flat_map(|f| f.bidegrees()).collect();
        degs.sort();
        degs.dedup();
        if degs.len() > 1 {
            return Err(Error::Invalid("piecewise form has mixed bidegree".into()));
        }
        for i in 0..maximal.len() {
            for j in i + 1..maximal.len() {
                if let Some(face) = maximal[i].intersect(&maximal[j]) {
                    if forms[i].restrict(&face)? != forms[j].restrict(&face)? {
                        return Err(Error::Invalid(format!("piecewise form is incompatible along {face}")));
                    }
                }
            }
        }
        Ok(PiecewiseForm { complex, maximal, forms })
    }

    /// The same form on every cell.
    pub fn constant(complex: Complex, form: SuperForm) -> Result<Self> {
        let k = complex.maximal().len();
        Self::new(complex, vec![form; k])
    }

    pub fn complex(&self) -> &Complex {
        &self.complex
    }

    pub fn pieces(&self) -> impl Iterator<Item = (&Polyhedron, &SuperForm)> {
        self.maximal.iter().zip(&self.forms)
    }

    pub fn bidegree(&self) -> Option<(usize, usize)> {
        self.forms.iter().find_map(|f| f.bidegree())
    }

    /// The ambient form of a maximal cell containing `cell`.
    pub fn ambient_on(&self, cell: &Polyhedron) -> Option<&SuperForm> {
        let x = cell.interior_point();
        self.maximal.iter().position(|m| m.contains(cell) || m.contains_point(x)).map(|i| &self.forms[i])
    }

    /// The restriction to a cell, in its chart coordinates.
    pub fn restrict_to(&self, cell: &Polyhedron) -> Result<SuperForm> {
        match self.ambient_on(cell) {
            Some(f) => f.restrict(cell),
            None => Ok(SuperForm::zero(cell.dim())),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PieceDoc {
    cell: usize,
    #[serde(with = "rational::vec_as_str")]
    linear: Vec<Rational>,
    #[serde(rename = "const", with = "rational::as_str")]
    constant: Rational,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PLDoc {
    complex: Complex,
    pieces: Vec<PieceDoc>,
}

fn order_pieces<T: Clone>(maximal: &[Polyhedron], listed: &[Polyhedron], pieces: Vec<(usize, T)>) -> Result<Vec<T>> {
    let mut out: Vec<Option<T>> = vec![None; maximal.len()];
    for (idx, p) in pieces {
        let cell = listed.get(idx).ok_or_else(|| Error::Parse(format!("piece refers to missing cell {idx}")))?;
        let k = maximal.iter().position(|m| m == cell).ok_or_else(|| Error::Parse(format!("cell {idx} is not maximal")))?;
        if out[k].replace(p).is_some() {
            return Err(Error::Parse(format!("cell {idx} has two pieces")));
        }
    }
    out.into_iter()
        .enumerate()
        .map(|(k, p)| p.ok_or_else(|| Error::Parse(format!("maximal cell {} has no piece", maximal[k]))))
        .collect()
}

impl Serialize for PLFunction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pieces = self
            .pieces
            .iter()
            .enumerate()
            .map(|(i, p)| PieceDoc { cell: i, linear: p.linear.clone(), constant: p.constant.clone() })
            .collect();
        PLDoc { complex: self.complex.clone(), pieces }.serialize(s)
    }
}

/// Shorthand document `{"n", "max": [{"linear", "const"}, ...]}`.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MaxDoc {
    n: usize,
    max: Vec<AffineDoc>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AffineDoc {
    #[serde(with = "rational::vec_as_str")]
    linear: Vec<Rational>,
    #[serde(rename = "const", with = "rational::as_str")]
    constant: Rational,
}

impl<'de> Deserialize<'de> for PLFunction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        if v.get("max").is_some() {
            let doc: MaxDoc = serde_json::from_value(v).map_err(serde::de::Error::custom)?;
            let fns: Vec<Affine> = doc.max.into_iter().map(|a| Affine::new(a.linear, a.constant)).collect();
            return PLFunction::max_of(doc.n, &fns).map_err(serde::de::Error::custom);
        }
        let listed: Vec<Polyhedron> = v
            .get("complex")
            .and_then(|c| c.get("cells"))
            .map(|c| serde_json::from_value(c.clone()))
            .transpose()
            .map_err(serde::de::Error::custom)?
            .unwrap_or_default();
        let doc: PLDoc = serde_json::from_value(v).map_err(serde::de::Error::custom)?;
        let maximal = doc.complex.maximal();
        let pieces = doc.pieces.into_iter().map(|p| (p.cell, Affine::new(p.linear, p.constant))).collect();
        let pieces = order_pieces(&maximal, &listed, pieces).map_err(serde::de::Error::custom)?;
        PLFunction::new(doc.complex, pieces).map_err(serde::de::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FormPieceDoc {
    cell: usize,
    form: FormDoc,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PiecewiseDoc {
    complex: Complex,
    pieces: Vec<FormPieceDoc>,
}

impl Serialize for PiecewiseForm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pieces =
            self.forms.iter().enumerate().map(|(i, f)| FormPieceDoc { cell: i, form: FormDoc::from_form(f) }).collect();
        PiecewiseDoc { complex: self.complex.clone(), pieces }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PiecewiseForm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        let listed: Vec<Polyhedron> = v
            .get("complex")
            .and_then(|c| c.get("cells"))
            .map(|c| serde_json::from_value(c.clone()))
            .transpose()
            .map_err(serde::de::Error::custom)?
            .unwrap_or_default();
        let doc: PiecewiseDoc = serde_json::from_value(v).map_err(serde::de::Error::custom)?;
        let n = doc.complex.ambient_dim();
        let maximal = doc.complex.maximal();
        let pieces = doc
            .pieces
            .into_iter()
            .map(|p| p.form.into_form(Some(n)).map(|f| (p.cell, f)))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        let forms = order_pieces(&maximal, &listed, pieces).map_err(serde::de::Error::custom)?;
        PiecewiseForm::new(doc.complex, forms).map_err(serde::de::Error::custom)
    }
}
