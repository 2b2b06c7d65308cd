use thiserror::Error;

/// Errors raised by constructions and solvers.
///
/// Report-valued checks (complex validation, certificate verification, pro-system
/// verdicts) never use this type; they return reports listing every failed condition.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("not a subcomplex: {0}")]
    NotSubcomplex(String),

    #[error("invalid simplex: {0}")]
    InvalidSimplex(String),

    #[error("chain is not a cycle ({0} boundary simplices survive)")]
    NotACycle(usize),

    #[error("boundary mismatch: {0}")]
    BoundaryMismatch(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("cochains live on different complexes")]
    ComplexMismatch,

    #[error("not an involution: {0}")]
    NotAnInvolution(String),

    #[error("involution is not free: {0}")]
    NotFree(String),

    #[error("map is not simplicial: {0}")]
    NotSimplicial(String),

    #[error("map is not an inclusion: {0}")]
    NotAnInclusion(String),

    #[error("quotient regularity still fails after {0} subdivisions")]
    QuotientIrregular(usize),

    #[error("degree parity disagrees between target simplices ({first} vs {second})")]
    DegreeInconsistent { first: u8, second: u8 },

    #[error("direction is not generic after {0} perturbations")]
    NonGeneric(usize),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("construction failed: {0}")]
    Construction(String),

    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse { line: e.line(), msg: e.to_string() }
    }
}
