use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch in {op}: expected {expected}, found {found}")]
    DimensionMismatch { op: &'static str, expected: String, found: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("symbol at 0 has no eigenvalue 1")]
    NoUnitEigenvalue,

    #[error("eigenvalue 1 of the symbol at 0 is not simple (geometric multiplicity {0})")]
    EigenvalueNotSimple(usize),

    #[error("matching-filter recursion is singular at order {order}")]
    SingularRecursion { order: usize },

    #[error("eigenvalue {eigenvalue} of the transition operator has a {dimension}-dimensional eigenspace")]
    AmbiguousEigenvector { eigenvalue: String, dimension: usize },

    #[error("{0} is not an eigenvalue of the transition operator")]
    NotAnEigenvalue(String),

    #[error("cannot normalize eigenvector: Taylor coefficient of order {order} vanishes")]
    Normalization { order: usize },

    #[error("level {level} exceeds the resource limit {limit}")]
    ResourceLimit { level: u32, limit: u32 },

    #[error("linear system has no solution: {0}")]
    Infeasible(String),

    #[error("order {got} available, {needed} required")]
    InsufficientOrder { needed: usize, got: usize },

    #[error("unknown example `{0}`")]
    UnknownExample(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),
}

pub type Result<T> = std::result::Result<T, Error>;
