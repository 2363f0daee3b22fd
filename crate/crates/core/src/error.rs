/// Errors produced by the solvers and the map evaluators.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// Argument outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A root bracket without the required sign change.
    #[error("bracket error: {0}")]
    Bracket(String),
    /// An iteration failed to converge or a cross-check failed.
    #[error("numerical error: {0}")]
    Numerical(String),
    /// Inputs that individually look fine but are mutually inconsistent.
    #[error("inconsistent input: {0}")]
    Inconsistent(String),
    /// A discrete problem could not be set up (e.g. empty Dirichlet side).
    #[error("setup error: {0}")]
    Setup(String),
}

pub type Result<T> = std::result::Result<T, Error>;
