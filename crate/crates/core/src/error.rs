use thiserror::Error;

/// Errors raised by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("conductor {0} exceeds the limit")]
    ConductorTooLarge(u64),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("group order exceeds cap {0}")]
    CapExceeded(usize),
    #[error("element order exceeds bound {0}")]
    NotFinite(u64),
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("not a reflection group: {0}")]
    NotReflectionGroup(String),
    #[error("degree bound {0} too small: {1}")]
    BoundTooSmall(usize, String),
    #[error("image leaves the generator span: {0}")]
    SpanViolation(String),
    #[error("subgroup is not good: {0}")]
    NotGood(String),
    #[error("subgroup contains reflections")]
    ContainsReflection,
    #[error("index {0} is not prime")]
    IndexNotPrime(usize),
    #[error("element does not normalize the subgroup")]
    NotNormalizing,
    #[error("relation ideal is not principal")]
    NonPrincipalUnsupported,
    #[error("unknown catalog name `{0}`")]
    UnknownName(String),
    #[error("catalog self-check failed: {0}")]
    SelfCheckFailed(String),
    #[error("malformed diagram: {0}")]
    MalformedDiagram(String),
    #[error("rule does not match: {0}")]
    RuleMismatch(String),
    #[error("coset enumeration exceeded {0} cosets")]
    CosetLimitExceeded(usize),
    #[error("unknown command: {0}")]
    UnknownCommand(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
