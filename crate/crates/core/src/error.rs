use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("unknown graph family `{0}`")]
    UnknownFamily(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("incompatible radicands sqrt({0}) and sqrt({1})")]
    IncompatibleRadicands(u64, u64),

    #[error("division by zero")]
    DivisionByZero,

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("multiplicity mismatch: expected {expected}, got {got}")]
    MultiplicityMismatch { expected: usize, got: usize },

    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),

    #[error("undecidable in exact layer: {0}")]
    Undecidable(String),

    #[error("search budget exceeded: no alpha in ({n_min}, {alpha_max}] meets the residual bound")]
    BudgetExceeded { n_min: u64, alpha_max: u64 },

    #[error("support inclusion violated: {0}")]
    SupportInclusion(String),

    #[error("internal consistency check failed: {0}")]
    Consistency(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
