use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument is outside the domain where the quantity is defined.
    #[error("domain error: {0}")]
    Domain(String),
    /// Evaluation too close to a cotangent pole or a vanishing denominator.
    #[error("pole error: {0}")]
    Pole(String),
    /// Input data contradicts the case analysis it was fed to.
    #[error("invalid case: {0}")]
    InvalidCase(String),
    #[error("degenerate polynomial: {0}")]
    Degenerate(String),
    /// The prime-integral monitor of the profile ODE exceeded its bound.
    #[error("step too large: prime-integral residual {residual:e} at s = {s}")]
    StepTooLarge { s: f64, residual: f64 },
    #[error("unknown suite: {0}")]
    UnknownSuite(String),
    #[error("unknown theorem: {0}")]
    UnknownTheorem(String),
    #[error("config error: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Stable machine-readable code, printed by the CLI on failure.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Domain(_) => "DOMAIN_ERROR",
            Error::Pole(_) => "POLE_ERROR",
            Error::InvalidCase(_) => "INVALID_CASE",
            Error::Degenerate(_) => "DEGENERATE_ERROR",
            Error::StepTooLarge { .. } => "STEP_TOO_LARGE",
            Error::UnknownSuite(_) => "UNKNOWN_SUITE",
            Error::UnknownTheorem(_) => "UNKNOWN_THEOREM",
            Error::Config(_) => "CONFIG_ERROR",
            Error::Io(_) => "IO_ERROR",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
