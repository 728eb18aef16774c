use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("determinant {0} is not a unit of the ring")]
    NonUnitDeterminant(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("generator index {index} out of range for {strands} strands")]
    IndexOutOfRange { index: i64, strands: usize },

    #[error("braid word is not syntactically destabilizable")]
    NotDestabilizable,

    #[error("assignment is missing slot `{0}`")]
    MissingSlot(String),

    #[error("singular input: {0}")]
    SingularInput(String),

    #[error("operator is not nilpotent")]
    NotNilpotent,

    #[error("invalid pair-operator data: {0}")]
    InvalidSpec(String),

    #[error("pair sequence is periodic")]
    PeriodicSpec,

    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),

    #[error("label relation a_s b_s = b_(s+1) a_(s+1) fails at s = {index}")]
    RelationViolated { index: usize },

    #[error("partial trace is not a scalar multiple of the identity")]
    NotScalar,

    #[error("partial trace scalar is zero")]
    ZeroScalar,

    #[error("no exact square root of {0} in the ring")]
    NoExactRoot(String),

    #[error("{0} is not a unit of the ring")]
    NotUnit(String),

    #[error("trace condition failed: {0}")]
    TraceConditionFailed(String),

    #[error("representation failed the simplicity check: {0}")]
    SimplicityUnverified(String),
}

pub type Result<T> = std::result::Result<T, Error>;
