//! JSON documents for superforms.
//!
//! `{"n": 2, "terms": [{"poly": [{"exps": [1, 0], "c": "1"}], "dp": [0], "ds": [1]}]}`
//! with 0-based differential indices. `n` may be omitted when a nonzero
//! monomial fixes it or the surrounding document supplies it.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::form::SuperForm;
use super::poly::{MonomialDoc, Poly};
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct TermDoc {
    poly: Vec<MonomialDoc>,
    #[serde(default)]
    dp: Vec<usize>,
    #[serde(default)]
    ds: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct FormDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
    terms: Vec<TermDoc>,
}

impl FormDoc {
    pub(crate) fn from_form(f: &SuperForm) -> Self {
        let terms = f
            .terms()
            .map(|(i, j, p)| TermDoc { poly: p.to_doc(), dp: i, ds: j })
            .collect();
        FormDoc { n: Some(f.nvars()), terms }
    }

    fn inferred_n(&self) -> Option<usize> {
        self.n.or_else(|| self.terms.iter().find_map(|t| t.poly.first().map(|m| m.nvars())))
    }

    /// Build the form, using `n` from the document, then from its monomials,
    /// then `fallback`.
    pub(crate) fn into_form(self, fallback: Option<usize>) -> Result<SuperForm> {
        let n = self
            .inferred_n()
            .or(fallback)
            .ok_or_else(|| Error::Parse("superform without terms needs an explicit \"n\"".into()))?;
        if let (Some(a), Some(b)) = (self.n, fallback) {
            if a != b {
                return Err(Error::Dimension(format!("superform declares {a} coordinates, expected {b}")));
            }
        }
        let mut out = SuperForm::zero(n);
        for t in self.terms {
            let p = Poly::from_doc(n, t.poly)?;
            out = out + SuperForm::monomial(p, &t.dp, &t.ds)?;
        }
        Ok(out)
    }
}

impl SuperForm {
    /// Parse a superform document whose coordinate count may be implied by
    /// context.
    pub fn from_json_value(v: serde_json::Value, n: Option<usize>) -> Result<SuperForm> {
        let doc: FormDoc = serde_json::from_value(v).map_err(|e| Error::Parse(e.to_string()))?;
        doc.into_form(n)
    }
}

impl Serialize for SuperForm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FormDoc::from_form(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for SuperForm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        FormDoc::deserialize(d)?.into_form(None).map_err(serde::de::Error::custom)
    }
}
