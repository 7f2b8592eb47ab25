use thiserror::Error;

/// Every failure mode surfaced by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("Gamma pole at {0}")]
    Pole(String),
    #[error("argument {0} lies on the branch cut [1, inf)")]
    BranchCut(String),
    #[error("degenerate connection formula: {0}")]
    Degenerate(String),
    #[error("contour error: {0}")]
    Contour(String),
    #[error("contour tail too large: {0}")]
    Tail(String),
    #[error("divergent integral: {0}")]
    Divergence(String),
    #[error("quadrature did not converge: {0}")]
    Convergence(String),
    #[error("polynomial degree {degree} exceeds cap {cap}")]
    DegreeCap { degree: usize, cap: usize },
    #[error("endpoint singularity not integrable: {0}")]
    EndpointSingularity(String),
    #[error("missing derivative of order {0}")]
    MissingDerivative(usize),
    #[error("Mobius map singular at {0}")]
    SingularMap(String),
    #[error("rewrite not applicable: {0}")]
    NotApplicable(String),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("truncation error: {0}")]
    Truncation(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
