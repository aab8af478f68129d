use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("letter index must be at least 1 (byte {offset})")]
    ZeroIndex { offset: usize },

    #[error("finite segment must contain at least one letter")]
    EmptyFiniteSegment,

    #[error("invalid position: {0}")]
    InvalidPosition(String),

    #[error("bounds out of order: {0}")]
    UnorderedBounds(String),

    #[error("alphabet set is neither finite nor cofinite")]
    UnrepresentableAlphabet,

    #[error("invalid length assignment: {0}")]
    InvalidLengths(String),

    #[error("point {0} lies outside [0, L_w]")]
    PointOutOfRange(String),

    #[error("point {0} is not in C (it lies inside a letter interval)")]
    NotInC(String),

    #[error("oracle {0} has not been verified tame")]
    UnverifiedOracle(String),

    #[error("oracle {0} does not contain every letter of the alphabet")]
    OracleMissingLetters(String),

    #[error("kept block {word} is not a member of {oracle}")]
    OracleViolation { oracle: String, word: String },

    #[error("excision invariant violated: {0}")]
    ExcisionInvariant(String),

    #[error("threshold {threshold} failed validation at m = {witness}")]
    ThresholdValidation { threshold: u64, witness: u64 },

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("unknown group element {0:?}")]
    UnknownElement(String),

    #[error("invalid homomorphism: {0}")]
    InvalidHom(String),

    #[error("word {0} is not in the domain subgroup")]
    NotInSubgroup(String),

    #[error("homomorphism needs an image for tail generator {0}")]
    MissingTailImage(String),

    #[error("sequence is not certified constant: {0}")]
    NotConvergent(String),

    #[error("residue {residue} out of range for period {period}")]
    ResidueOutOfRange { residue: u64, period: u64 },

    #[error("strategy {strategy} cannot select from {analysis}")]
    StrategyMismatch { strategy: String, analysis: String },

    #[error("invalid equation: {0}")]
    InvalidEquation(String),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("json error: {0}")]
    Json(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
