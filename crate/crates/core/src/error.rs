use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("zero element")]
    ZeroElement,
    #[error("exponent vectors come from different registry states")]
    RegistryMismatch,
    #[error("pole at t = {0}")]
    PoleAtPoint(String),
    #[error("zero at t = {0}")]
    ZeroAtPoint(String),
    #[error("unsupported locus: {0}")]
    UnsupportedLocus(String),
    #[error("degenerate face: {0}")]
    DegenerateFace(String),
    #[error("admissibility error: {0}")]
    AdmissibilityError(String),
    #[error("sign determination failed for rho_{k}({arg})")]
    SignDeterminationFailed { k: usize, arg: String },
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("missing D-chains: {0}")]
    MissingChains(String),
    #[error("property (I) failed: {0}")]
    PropertyIFailed(String),
    #[error("no torsion order m <= {cap} for {elem}")]
    TorsionOrderNotFound { elem: String, cap: u32 },
    #[error("level mismatch: expected {expected}, got {got}")]
    LevelMismatch { expected: usize, got: usize },
    #[error("C0 violation at {0}")]
    C0Violation(String),
    #[error("kernel check failed, residual {0}")]
    KernelCheckFailed(String),
    #[error("degenerate arguments: {0}")]
    DegenerateArguments(String),
    #[error("not a cocycle: {0}")]
    NotACocycle(String),
    #[error("parse error at column {col}: {msg}")]
    ParseError { col: usize, msg: String },
    #[error("config error: {0}")]
    ConfigError(String),
    #[error("file error: {0}")]
    FileError(String),
    #[error("schema error: {0}")]
    SchemaError(String),
}

pub type Result<T> = std::result::Result<T, Error>;
