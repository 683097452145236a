use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid hook: k = {k} is out of range for n = {n}")]
    InvalidHook { n: usize, k: usize },
    #[error("invalid two-row shape: k = {k} exceeds n - k for n = {n}")]
    InvalidTwoRow { n: usize, k: usize },
    #[error("irreducible index sets differ: {left} vs {right}")]
    IndexMismatch { left: usize, right: usize },
    #[error("cyclotomic field mismatch: Q(zeta_{left}) vs Q(zeta_{right})")]
    FieldMismatch { left: u32, right: u32 },
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("invalid character table: {0}")]
    InvalidCharacterTable(String),
    #[error("size mismatch: expected {expected}, got {got}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("exterior powers require a genuine (nonnegative) element")]
    RequiresGenuineElement,
    #[error("theorem {theorem} does not apply to group {group}: {reason}")]
    InapplicableTheorem {
        theorem: String,
        group: String,
        reason: String,
    },
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown label {0}")]
    UnknownLabel(String),
}

pub type Result<T> = std::result::Result<T, Error>;
