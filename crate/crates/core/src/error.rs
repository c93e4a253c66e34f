use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("matrix is not unipotent")]
    NotUnipotent,
    #[error("endomorphism is not nilpotent")]
    NotNilpotent,
    #[error("generators do not commute")]
    NotCommutative,
    #[error("cone is not sharp")]
    NotSharp,
    #[error("matrix does not lie in g: {0}")]
    NotInG(String),
    #[error("objects live in different ambient spaces")]
    MixedAmbient,
    #[error("no containing cell for a piece of the cone: {0}")]
    NoCover(String),
    #[error("condition on N' and the weight-0 graded piece fails: {0}")]
    TypeConditionViolated(String),
    #[error("hodge numbers for the graded pieces are missing")]
    MissingHodgeData,
    #[error("element is not in Gamma: {0}")]
    NotInGamma(String),
    #[error("period point is not in the compact dual")]
    NotInCompactDual,
    #[error("small Griffiths transversality fails: {0}")]
    GriffithsViolated(String),
    #[error("invalid data: {0}")]
    InvalidData(String),
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
