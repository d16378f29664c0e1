use thiserror::Error;

/// Errors surfaced by the library.
///
/// All arithmetic that is defined everywhere (addition, multiplication,
/// conjugation, norms) is infallible and does not appear here.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Zero was passed to an operation that excludes it (sextant
    /// classification, canonicalization, star, sigma, ...).
    #[error("zero is not a valid operand for {0}")]
    ZeroOperand(&'static str),

    /// Attempted Euclidean division by zero.
    #[error("division by zero")]
    DivisionByZero,

    /// An argument that must be prime was not.
    #[error("{0} is not prime")]
    NotPrime(String),

    /// A structurally invalid argument (bad range, bad precondition).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Factoring gave up within the configured effort budget.
    #[error("factoring budget exhausted; stubborn cofactor {0}")]
    FactorBudget(String),

    /// An enumeration (divisor set, lattice search) would exceed its
    /// configured budget.
    #[error("effort budget exceeded: {0}")]
    BudgetExceeded(String),

    /// A malformed Eisenstein-integer literal.
    #[error("invalid Eisenstein integer literal {0:?}")]
    ParseLiteral(String),
}

pub type Result<T> = std::result::Result<T, Error>;
