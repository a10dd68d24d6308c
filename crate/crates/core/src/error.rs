use thiserror::Error;

use crate::field::Field;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("line {line}: {msg}")]
    Line { line: usize, msg: String },
    #[error("cannot mix scalars over {0} and {1}")]
    FieldMismatch(Field, Field),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("input columns are linearly dependent")]
    DependentColumns,
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("invalid relation: {0}")]
    Relation(String),
    #[error("presentation is not quadratic: {0}")]
    NonQuadratic(String),
    #[error("degree bound must be at least 2, got {0}")]
    Bound(usize),
    #[error("invalid vertex subset: {0}")]
    Subset(String),
    #[error("algebra has no quiver presentation; modules need one")]
    NoPresentation,
    #[error("objects live over different algebras: {0}")]
    AlgebraMismatch(String),
    #[error("window overflow: {0}")]
    WindowOverflow(String),
    #[error("not a complex: {0}")]
    NotComplex(String),
    #[error("invalid module: {0}")]
    Module(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
