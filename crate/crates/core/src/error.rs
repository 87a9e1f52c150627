use thiserror::Error;

use crate::category::CategoryViolation;
use crate::concrete::ConcreteViolation;
use crate::enriched::EnrichedViolation;
use crate::lattice::LatticeViolation;
use crate::quantaloid::QuantaloidViolation;

fn list<T: std::fmt::Display>(items: &[T]) -> String {
    items
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("invalid lattice: {}", list(.0))]
    Lattice(Vec<LatticeViolation>),

    #[error("invalid category: {}", list(.0))]
    Category(Vec<CategoryViolation>),

    #[error("invalid quantaloid: {}", list(.0))]
    Quantaloid(Vec<QuantaloidViolation>),

    #[error("invalid enriched structure: {}", list(.0))]
    Enriched(Vec<EnrichedViolation>),

    #[error("invalid concrete category: {}", list(.0))]
    Concrete(Vec<ConcreteViolation>),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unresolved reference `{name}` at line {line}")]
    UnresolvedReference { name: String, line: usize },

    #[error("not visualizable: {0}")]
    NotVisualizable(String),

    #[error("type mismatch: {0}")]
    TypeMismatch(String),

    #[error("too large: {what} needs about {estimate} candidates (cap {cap})")]
    TooLarge {
        what: String,
        estimate: u128,
        cap: u128,
    },

    #[error("not a quantale: the base has {0} objects")]
    NotAQuantale(usize),

    #[error("not total: presheaf {witness} has no supremum")]
    NotTotal { witness: String },

    #[error("not fully faithful: hom({a},{b}) differs from hom of the images")]
    NotFullyFaithful { a: String, b: String },

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("not a Chu transform: {0}")]
    NotChu(String),

    #[error("engine inconsistency: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
