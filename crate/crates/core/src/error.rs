use thiserror::Error;

/// Errors raised by the engine.
///
/// `InternalInconsistency`, `NotAPureQPower` and `RewriteBudgetExceeded` indicate a bug in a
/// formula transcription rather than bad input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field: {0} is not prime")]
    InvalidField(u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("enumeration too large: {what} needs {size}, bound is {bound}")]
    EnumerationTooLarge { what: String, size: u64, bound: u64 },
    #[error("quiver is not acyclic, cycle through {}", .cycle.join(" -> "))]
    NotHereditarySetup { cycle: Vec<String> },
    #[error("incompatible objects: {0}")]
    IncompatibleObjects(String),
    #[error("subspace tuple is not closed under the structure maps")]
    NotASubobject,
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("not a pure power of q: {0}")]
    NotAPureQPower(String),
    #[error("unsupported period t = {0}")]
    UnsupportedPeriod(i64),
    #[error("rewriting did not terminate within {0} steps")]
    RewriteBudgetExceeded(usize),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn too_large(what: impl Into<String>, size: u64, bound: u64) -> Error {
    Error::EnumerationTooLarge {
        what: what.into(),
        size,
        bound,
    }
}
