use thiserror::Error;

/// Everything that can go wrong in this crate.
///
/// The variants are grouped by the CLI exit code they map to, see
/// [`Error::exit_code`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument is outside the range the operation accepts at all.
    #[error("parameter error: {0}")]
    Parameter(String),

    /// The arguments are well-formed but violate a numerical hypothesis
    /// (e.g. the degree bound `d >= 2g + 3 + min{1, g - 1}`).
    #[error("domain error: {0}")]
    Domain(String),

    /// A precondition specific to the operation does not hold.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// A configuration that the degeneration model rules out.
    #[error("infeasible: {0}")]
    Infeasible(String),

    /// A cycle class does not have the shape an operation requires.
    #[error("shape error: {0}")]
    Shape(String),

    /// Checked 64-bit arithmetic overflowed.
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    /// A materialization or enumeration cap was hit.
    #[error("resource cap exceeded: {0}")]
    Resource(String),

    /// An internal invariant was breached. Never expected.
    #[error("internal invariant breached: {0}")]
    Internal(String),
}

impl Error {
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parameter(_)
            | Error::Domain(_)
            | Error::Precondition(_)
            | Error::Infeasible(_)
            | Error::Shape(_) => 2,
            Error::Overflow(_) | Error::Resource(_) => 3,
            Error::Internal(_) => 4,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
