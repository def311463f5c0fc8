use thiserror::Error;

/// Failures of scalar arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithmeticError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{element} is a zero divisor: it shares the factor {factor} with the minimal polynomial")]
    ZeroDivisor { element: String, factor: String },
    #[error("invalid minimal polynomial: {0}")]
    BadModulus(String),
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Arithmetic(#[from] ArithmeticError),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// An input violates a documented precondition.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A fact that holds by theorem failed to hold; this indicates an engine bug
    /// or an input that silently violates the structure's axioms.
    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("{path}: {message}")]
    Schema { path: String, message: String },

    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },

    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub fn consistency(msg: impl Into<String>) -> Self {
        Error::Consistency(msg.into())
    }

    pub fn schema(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Schema { path: path.into(), message: message.into() }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
