use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown identifier `{name}` at offset {pos}")]
    UnknownIdentifier { name: String, pos: usize },
    #[error("root selector: {0}")]
    RootSelector(String),
    #[error("negative or zero base under a non-integer power")]
    NegativeBase,
    #[error("division by zero")]
    DivisionByZero,
    #[error("argument out of domain: {0}")]
    Domain(String),
    #[error("point on the branch cut: {0}")]
    BranchCut(String),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("inexact polynomial division at degree {0}")]
    InexactDivision(usize),
    #[error("invalid precision: {0}")]
    Precision(String),
    #[error("inconsistent relation system: {0}")]
    Inconsistent(String),
    #[error("no solution found: {0}")]
    NoSolution(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("registry: {0}")]
    Registry(String),
}
