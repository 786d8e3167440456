use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("square root of non-positive integer {0}")]
    Domain(i64),
    #[error("malformed rational `{0}`")]
    BadRational(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("representation has no components")]
    Empty,
    #[error("component {index}: cycle word is empty")]
    EmptyWord { index: usize },
    #[error("component {index}: cycle word `{word}` is a power of `{root}`")]
    NotPrimitive {
        index: usize,
        word: String,
        root: String,
    },
    #[error("component {index}: invalid letter `{letter}` (expected 1 or 2)")]
    BadLetter { index: usize, letter: char },
    #[error("component {component} does not exist")]
    NoSuchComponent { component: usize },
    #[error("node {node} out of range for cycle of length {len}")]
    NodeOutOfRange { node: usize, len: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StateError {
    #[error("vectors belong to different representations ({left} vs {right})")]
    RepMismatch { left: String, right: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("{kind}({index}) is out of range: {reason}")]
    IndexOutOfRange {
        kind: &'static str,
        index: i64,
        reason: &'static str,
    },
    #[error("psi index must be an odd half-integer p/2, got {0}")]
    BadPsiIndex(String),
    #[error("{0} is a series operator; only polynomial expressions have a normal form")]
    Unsupported(String),
    #[error("a({0}) exceeds the polynomial materialization cap of {1}")]
    MaterializationCap(u32, u32),
    #[error("requested depth {requested} is below the intrinsic depth {intrinsic}")]
    DepthTooSmall { requested: usize, intrinsic: usize },
}

/// Parse failure with the byte offset of the offending token.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} at position {position}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(position: usize, message: impl Into<String>) -> Self {
        Self {
            position,
            message: message.into(),
        }
    }

    /// The input with a caret under the failing position.
    pub fn annotate(&self, input: &str) -> String {
        let col = input[..self.position.min(input.len())].chars().count();
        format!("{self}\n  {input}\n  {}^", " ".repeat(col))
    }
}
