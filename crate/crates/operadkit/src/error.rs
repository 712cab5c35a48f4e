use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("arity {requested} exceeds the configured ceiling of {ceiling} for {context}")]
    Capacity {
        requested: usize,
        ceiling: usize,
        context: String,
    },

    #[error("pairing form on arity 3 is degenerate for {0}")]
    DegenerateForm(String),

    #[error("unknown generator {name} in {context}")]
    UnknownGenerator { name: String, context: String },

    #[error("bad identity template: {0}")]
    Template(String),

    #[error("no catalog entry named {name}; available: {available}")]
    UnknownCatalog { name: String, available: String },

    #[error("generator substitution is not invertible: {0}")]
    NotInvertible(String),

    #[error("symmetry mismatch: {0}")]
    SymmetryMismatch(String),

    #[error("algebra is missing operation {0}")]
    MissingOperation(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("no closed-form series for {0}; available: Lie, Com, Ass, sLeib, sDiAss, sPerm")]
    NoClosedForm(String),

    #[error("bad rational literal {0:?}")]
    BadNumber(String),

    #[error("bad algebra description: {0}")]
    AlgebraFormat(String),

    #[error("{0}")]
    CheckFailed(String),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
