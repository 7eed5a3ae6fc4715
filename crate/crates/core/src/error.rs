use thiserror::Error;

use crate::field::Field;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: Field, right: Field },

    #[error("budget exhausted: {0}")]
    BudgetExhausted(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("width is undefined for the zero polynomial")]
    ZeroWidth,

    #[error("zero polynomial not allowed: {0}")]
    ZeroInput(&'static str),

    #[error("degenerate coefficients: {0}")]
    Degenerate(String),

    #[error("division failed: {0}")]
    Division(String),

    #[error("malformed family parameter: {0}")]
    Malformed(String),

    #[error("empty support for unknown {0}")]
    EmptySupport(usize),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }

    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
