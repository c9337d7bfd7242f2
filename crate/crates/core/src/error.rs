use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("index {index} out of range for ground set of size {n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("coordinate {index} = {value} lies outside [0, 1]")]
    CoordinateOutOfRange { index: usize, value: f64 },

    #[error("coordinate {index} = {value} is not binary")]
    NonBinary { index: usize, value: f64 },

    #[error("polynomials are expressed in different bases")]
    BasisMismatch,

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("term budget exceeded: {terms} monomials > budget {budget}")]
    BudgetExceeded { terms: usize, budget: usize },

    #[error("ground set of size {n} exceeds the exact enumeration limit {limit}")]
    TooLarge { n: usize, limit: usize },

    #[error("enumeration budget of {budget} independent sets exceeded")]
    EnumerationBudget { budget: usize },

    #[error("objective has no realizations to sample from")]
    EmptyRealizations,

    #[error("realization {0} does not exist")]
    UnknownRealization(u64),

    #[error("invalid matroid: {0}")]
    InvalidMatroid(String),

    #[error("set {0:?} is not independent")]
    NotIndependent(Vec<usize>),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("invalid instance at `{path}`: {message}")]
    Invalid { path: String, message: String },

    #[error("unsupported schema version {found} (expected {expected})")]
    SchemaVersion { found: u64, expected: u64 },

    #[error("stability violated: edge load {load} must be < 1")]
    Unstable { load: f64 },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("iteration {iteration}: {source}")]
    AtIteration {
        iteration: usize,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn invalid(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Invalid {
            path: path.into(),
            message: message.into(),
        }
    }

    /// Errors caused by bad input files or parameters, as opposed to runtime failures.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::Invalid { .. }
                | Error::SchemaVersion { .. }
                | Error::Unstable { .. }
                | Error::Parse { .. }
                | Error::Config(_)
                | Error::InvalidMatroid(_)
                | Error::Malformed(_)
                | Error::Json(_)
        )
    }
}
