use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field parameters: {0}")]
    BadParams(String),
    #[error("polynomial is not Eisenstein: {0}")]
    NonEisenstein(String),
    #[error("residue polynomial is reducible over GF(2)")]
    ReducibleUnramifiedPoly,
    #[error("precision exhausted: {0}")]
    PrecisionLoss(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("defect split needs a non-square unit: {0}")]
    DefectOutOfRange(String),
    #[error("sharp is undefined for squares and for the class of Delta")]
    SharpUndefined,
    #[error("undefined space: {0}")]
    UndefinedSpace(String),
    #[error("not a good BONG: {inequality} fails at i={index}")]
    NotAGoodBong { index: usize, inequality: String },
    #[error("index out of range: {0}")]
    IndexError(String),
    #[error("rank mismatch: {0}")]
    RankError(String),
    #[error("lattice is not integral (R_1 = {0} < 0)")]
    NotIntegral(i64),
    #[error("parity mismatch: {0}")]
    ParityMismatch(String),
    #[error("malformed input: {0}")]
    Parse(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    /// True for failures caused by the caller's input rather than by this library.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::Internal(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
