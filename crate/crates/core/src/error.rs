use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("antisymmetry violated at ({row}, {col}): |m[i][j] + m[j][i]| = {asymmetry:e}")]
    AntisymmetryViolation {
        row: usize,
        col: usize,
        asymmetry: f64,
    },

    #[error("value at ({row}, {col}) is not finite")]
    NonFinite { row: usize, col: usize },

    #[error("element set must be non-empty")]
    EmptyElementSet,

    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),

    #[error("unknown element `{0}`")]
    UnknownElement(String),

    #[error("element index {index} out of range for {len} elements")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("group must contain at least one member")]
    EmptyGroup,

    #[error("weight {weight} for member {member} is not a positive finite number")]
    InvalidWeight { member: usize, weight: f64 },

    #[error("not absolutely transitive: triplet ({}, {}, {}) has delta {delta:e}", .triplet.0, .triplet.1, .triplet.2)]
    NotAbsolutelyTransitive {
        triplet: (usize, usize, usize),
        delta: f64,
    },

    #[error("value {value} at ({row}, {col}) is not an indicator value in {{-1, 0, 1}}")]
    NotIndicator { row: usize, col: usize, value: f64 },

    #[error("all criteria must carry the same kind of data (utilities or co-rankings)")]
    MixedCriterionKinds,

    #[error("invalid criteria: {0}")]
    InvalidCriteria(String),

    #[error("no witness found within the search budget for the predicted {0} class")]
    WitnessNotFound(String),

    #[error("strategy `{0}` is outside the player's available set")]
    StrategyOutsideAvailableSet(String),

    #[error("invalid probabilities: {0}")]
    InvalidProbabilities(String),

    #[error("no convergence after {iterations} iterations (exploitability {exploitability:e})")]
    NoConvergence {
        iterations: u64,
        exploitability: f64,
    },

    #[error("system is disconnected: element {0} has zero weight")]
    DisconnectedSystem(usize),

    #[error("step too large: Euler factor {factor} (|lambda*dt*R*| must stay <= 0.5)")]
    StepTooLarge { factor: f64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: u64, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Short machine-readable tag used in reports and by the FFI layer.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::AntisymmetryViolation { .. } => "AntisymmetryViolation",
            Error::NonFinite { .. } => "NonFinite",
            Error::EmptyElementSet => "EmptyElementSet",
            Error::DuplicateLabel(_) => "DuplicateLabel",
            Error::UnknownElement(_) => "UnknownElement",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::EmptyGroup => "EmptyGroup",
            Error::InvalidWeight { .. } => "InvalidWeight",
            Error::NotAbsolutelyTransitive { .. } => "NotAbsolutelyTransitive",
            Error::NotIndicator { .. } => "NotIndicator",
            Error::MixedCriterionKinds => "MixedCriterionKinds",
            Error::InvalidCriteria(_) => "InvalidCriteria",
            Error::WitnessNotFound(_) => "WitnessNotFound",
            Error::StrategyOutsideAvailableSet(_) => "StrategyOutsideAvailableSet",
            Error::InvalidProbabilities(_) => "InvalidProbabilities",
            Error::NoConvergence { .. } => "NoConvergence",
            Error::DisconnectedSystem(_) => "DisconnectedSystem",
            Error::StepTooLarge { .. } => "StepTooLarge",
            Error::InvalidConfig(_) => "InvalidConfig",
            Error::Parse { .. } => "ParseError",
            Error::Io(_) => "Io",
            Error::Json(_) => "ParseError",
            Error::Csv(_) => "ParseError",
        }
    }
}
