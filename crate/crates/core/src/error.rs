use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid triangulation: {0}")]
    Invalid(String),
    #[error("not transverse taut: {0}")]
    NotTransverseTaut(String),
    #[error("not veering: {0}")]
    NotVeering(String),
    #[error("wrong first Betti number: expected {expected}, found {found}")]
    WrongBetti { expected: usize, found: usize },
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("inconsistent resolution at vertex {0}")]
    InconsistentResolution(usize),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("no real root: {0}")]
    NoRealRoot(String),
    #[error("degenerate fibered cone: {0}")]
    DegenerateCone(String),
    #[error("solver failure: {0}")]
    Solver(String),
    #[error("domain error: {0}")]
    Domain(String),
}

impl Error {
    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
