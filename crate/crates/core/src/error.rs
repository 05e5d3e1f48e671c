use thiserror::Error;

use crate::model::CrossingId;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("label arity: edge label {label} appears {count} times")]
    LabelArity { label: u32, count: usize },

    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    #[error("gauss code: {0}")]
    Gauss(String),

    #[error("braid word: {0}")]
    Braid(String),

    #[error("no crossing with id {0}")]
    NoSuchCrossing(CrossingId),

    #[error("crossing {0} is virtual")]
    VirtualCrossing(CrossingId),

    #[error("crossing {0} is classical")]
    ClassicalCrossing(CrossingId),

    #[error("unknown catalog entry `{0}`")]
    UnknownFixture(String),

    #[error("{crossings} classical crossings exceeds the cap of {cap}")]
    CapExceeded { crossings: usize, cap: usize },

    #[error("cut system does not admit an Alexander numbering")]
    InvalidCutSystem,

    #[error("cut point move: {0}")]
    CutMove(String),

    #[error("iota undefined: loop with odd cut sum {0}")]
    OddLoopSum(i64),

    #[error("precondition unmet: {0}")]
    Precondition(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
