use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed ribbon graph: {0}")]
    Structure(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unknown curve `{0}`")]
    UnknownCurve(String),
    #[error("curve `{0}` is empty or not a closed path")]
    BadCurve(String),
    #[error("curve `{name}` is not embedded (self-intersection {count})")]
    NotEmbedded { name: String, count: usize },
    #[error("curves `{0}` and `{1}` intersect")]
    Intersecting(String, String),
    #[error("objects live on different surfaces")]
    SurfaceMismatch,
    #[error("twists on a closed surface are computed on the bordered model; drop the cap markers first")]
    ClosedSurface,
    #[error("formal symbol `{0}` cannot be evaluated; use the relation calculus")]
    FormalSymbol(String),
    #[error("curve system does not fill the surface")]
    NotFilling,
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("rewrite failed: {0}")]
    Rewrite(String),
    #[error("integer overflow in homology computation")]
    Overflow,
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
