use thiserror::Error;

/// Coarse classification used by front ends to pick an exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    /// Malformed or inconsistent input data.
    Input,
    /// Input is well formed but outside the supported scope.
    Unsupported,
    /// A computed object failed one of its defining checks.
    Verification,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("gram matrix is not symmetric")]
    NotSymmetric,
    #[error("lattice is degenerate")]
    Degenerate,
    #[error("form is not definite: {0}")]
    NotDefinite(String),
    #[error("unknown lattice name: {0}")]
    UnknownLattice(String),
    #[error("unknown fixture: {0}")]
    UnknownFixture(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("matrix is not an isometry: {0}")]
    NotIsometry(String),
    #[error("result is not integral: {0}")]
    NotIntegral(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("group closure exceeds bound {0}")]
    GroupTooLarge(usize),
    #[error("augmentation is inconsistent: {0}")]
    KappaInconsistent(String),
    #[error("action is not almost geometric: {0}")]
    NotAlmostGeometric(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invariance failure: {0}")]
    Invariance(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Dimension(_)
            | Error::NotSymmetric
            | Error::UnknownLattice(_)
            | Error::UnknownFixture(_)
            | Error::Parse(_)
            | Error::NotIsometry(_)
            | Error::Precondition(_) => ErrorKind::Input,
            Error::Unsupported(_) | Error::NotDefinite(_) | Error::Degenerate | Error::GroupTooLarge(_) => {
                ErrorKind::Unsupported
            }
            Error::NotIntegral(_)
            | Error::KappaInconsistent(_)
            | Error::NotAlmostGeometric(_)
            | Error::Invariance(_)
            | Error::Verification(_) => ErrorKind::Verification,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
