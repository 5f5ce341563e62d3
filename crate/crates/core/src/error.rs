use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("invalid leg pair ({0}, {1})")]
    InvalidPair(usize, usize),
    #[error("{what} must be at least {min}, got {got}")]
    TooSmall { what: &'static str, min: usize, got: usize },
    #[error("singular {0}")]
    Singular(&'static str),
    #[error("entries depend on more than one variable: {0:?}")]
    TooManyVariables(Vec<String>),
    #[error("commutator [x{i}, x{j}] is not in the span of the basis")]
    NotClosed { i: usize, j: usize },
    #[error("basis elements are linearly dependent")]
    DependentBasis,
    #[error("cocycle matrix is singular")]
    SingularCocycle,
    #[error("R-matrix is not regular at u = 0")]
    NotRegular,
    #[error("family is not the identity at zero deformation")]
    NotIdentityAtZero,
    #[error("the {0} realization needs a field containing i and sqrt(2)")]
    FieldTooSmall(&'static str),
    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
