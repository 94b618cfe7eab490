use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot invert zero")]
    ZeroInversion,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("descriptor mismatch")]
    DescriptorMismatch,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("matrix is singular")]
    Singular,
    #[error("empty family")]
    EmptyFamily,
    #[error("elements belong to different dual systems")]
    SystemMismatch,
    #[error("invariant violated: {0}")]
    InvariantError(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("trace scaling violated: {0}")]
    ScalingViolation(String),
    #[error("not an isomorphism: {0}")]
    NotIsomorphism(String),
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
    #[error("target pairing lost rank")]
    RankLoss,
    #[error("enumeration of {candidates} candidate maps exceeds cap {cap}")]
    SizeGuard { candidates: u128, cap: u64 },
    #[error("exhaustive scan requires a prime-field descriptor")]
    WrongDescriptor,
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("unresolved name: {0}")]
    Reference(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
