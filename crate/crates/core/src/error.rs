use thiserror::Error;

/// Failure modes shared by every layer of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("domain error: {0}")]
    Domain(String),
    #[error("pole: {0}")]
    Pole(String),
    #[error("convergence error: {0}")]
    Convergence(String),
    #[error("series does not terminate: {0}")]
    NonTerminating(String),
    #[error("unbound symbol `{0}`")]
    UnboundSymbol(String),
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("precision escalation exhausted: {0}")]
    Precision(String),
}

impl Error {
    /// True for errors caused by the parameter values rather than by
    /// convergence of a series.
    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            Error::Domain(_) | Error::Pole(_) | Error::DivisionByZero | Error::UnboundSymbol(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
