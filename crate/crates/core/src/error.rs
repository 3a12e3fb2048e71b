use thiserror::Error;

use crate::delta::BalanceReport;
use crate::intersection::PairFailure;

/// Everything that can go wrong in this crate.
///
/// Variants split into two families: malformed input (`Parse`, `Dimension`,
/// `Degenerate`, `Invalid`) and violated mathematical preconditions
/// (everything else). The CLI maps the first family to exit status 1 and the
/// second to exit status 2.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("input is not balanced")]
    Unbalanced(Box<BalanceReport>),
    #[error("displacement vector is not generic: {0}")]
    NotGeneric(Box<PairFailure>),
    #[error("complexes do not intersect transversally: {0}")]
    NotTransversal(Box<PairFailure>),
    #[error("map is not proper on cell {0}")]
    NonProper(String),
    #[error("map is not injective on cell {0}")]
    NonInjective(String),
    #[error("piecewise form is not compatible on face {0}")]
    Incompatible(String),
}

impl Error {
    /// True for violations of mathematical preconditions (as opposed to
    /// malformed input).
    pub fn is_precondition(&self) -> bool {
        !matches!(
            self,
            Error::Parse(_) | Error::Dimension(_) | Error::Degenerate(_) | Error::Invalid(_)
        )
    }

    /// Short machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse(_) => "parse",
            Error::Dimension(_) => "dimension",
            Error::Degenerate(_) => "degenerate",
            Error::Invalid(_) => "invalid",
            Error::Precondition(_) => "precondition",
            Error::Unbalanced(_) => "unbalanced",
            Error::NotGeneric(_) => "not-generic",
            Error::NotTransversal(_) => "not-transversal",
            Error::NonProper(_) => "non-proper",
            Error::NonInjective(_) => "non-injective",
            Error::Incompatible(_) => "incompatible",
        }
    }

    /// The witness of a violated precondition, if the error carries one.
    pub fn certificate(&self) -> Option<serde_json::Value> {
        let v = match self {
            Error::Unbalanced(r) => serde_json::to_value(r),
            Error::NotGeneric(f) | Error::NotTransversal(f) => serde_json::to_value(f),
            Error::NonProper(c) | Error::NonInjective(c) | Error::Incompatible(c) => Ok(serde_json::json!({ "cell": c })),
            _ => return None,
        };
        Some(v.expect("certificates serialize"))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
