use thiserror::Error;

use crate::pbw::PresetKind;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unknown preset `{0}` (expected sl2 or sl3)")]
    UnknownPreset(String),

    #[error("unknown check `{0}`")]
    UnknownCheck(String),

    #[error("element belongs to {found}, expected {expected}")]
    PresetMismatch {
        expected: PresetKind,
        found: PresetKind,
    },

    #[error("invalid positive root index {index} (preset has {count})")]
    InvalidRoot { index: usize, count: usize },

    #[error("arity mismatch: {0}")]
    Arity(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("preset validation failed: {0}")]
    Validation(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
