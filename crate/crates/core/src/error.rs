use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(u64),

    #[error("{value} is not a unit modulo {modulus}")]
    NotAUnit { value: u32, modulus: u32 },

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u32, right: u32 },

    #[error("form matrix is not symmetric: entry ({row},{col}) differs from its transpose")]
    NotSymmetric { row: usize, col: usize },

    #[error("module (Z/{modulus})^{dim} is too large to enumerate")]
    ModuleTooLarge { modulus: u32, dim: usize },

    #[error("no vector has unit norm under this form; the Coxeter rack is empty")]
    EmptyCarrier,

    #[error("operation table is not a rack: {0}")]
    NotARack(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("module data required: {0}")]
    MissingModuleData(&'static str),

    #[error("expected {expected} framing entries (one per component), got {found}")]
    ComponentMismatch { expected: usize, found: usize },

    #[error("{0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}
