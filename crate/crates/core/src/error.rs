use thiserror::Error;

use crate::lattice::twist::CandidateDiagnostic;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{value} is not squarefree: divisible by {square_factor}^2")]
    NotSquarefree { value: u64, square_factor: u64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("operands belong to different fields")]
    FieldMismatch,

    #[error("inversion of zero")]
    DivisionByZero,

    #[error("precision {requested} bits is below the minimum of {minimum} bits")]
    PrecisionTooLow { requested: u32, minimum: u32 },

    #[error("{0} is a perfect square")]
    PerfectSquare(u64),

    #[error("local degree over 2 is required: degree {degree} is neither odd nor a power of two")]
    MissingLocalDegree { degree: usize },

    #[error("generators are linearly dependent over the base field")]
    DependentGenerators,

    #[error("generators do not span an order: {0}")]
    NotAnOrder(String),

    #[error("order discriminant norm {0} is not a perfect square")]
    NonSquareDiscriminant(String),

    #[error("no maximal order basis known for {0}")]
    NoBasisKnown(String),

    #[error("order is not maximal: discriminant norm {order} but algebra discriminant norm {algebra}")]
    NotMaximal { order: u64, algebra: u64 },

    #[error("twist element is not totally positive")]
    NotTotallyPositive,

    #[error("no unit of norm -1 available for D = {0}")]
    NoNormMinusOneUnit(u64),

    #[error("twist obstruction: {0}")]
    TwistObstruction(String),

    #[error("no twist candidate validated ({} candidates tried)", .candidates.len())]
    TwistValidation { candidates: Vec<CandidateDiagnostic> },

    #[error("matrix is not positive definite")]
    NotPositiveDefinite,

    #[error("matrix is not integral")]
    NotIntegral,

    #[error("{0}")]
    BudgetExceeded(String),

    #[error("arithmetic overflow: {0}")]
    Overflow(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code: 2 for the twist-validation channel, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::TwistValidation { .. } => 2,
            _ => 1,
        }
    }
}
