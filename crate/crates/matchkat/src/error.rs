//! Error types shared across the crate.

use std::fmt;
use thiserror::Error;

/// Byte range of a fragment of source text, used for diagnostics.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SourceSpan {
    pub start: usize,
    pub end: usize,
}

impl SourceSpan {
    pub fn new(start: usize, end: usize) -> Self {
        SourceSpan { start, end }
    }

    pub fn shifted(self, offset: usize) -> Self {
        SourceSpan::new(self.start + offset, self.end + offset)
    }
}

/// A syntax or validation error raised while reading concrete syntax.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub message: String,
    pub span: Option<SourceSpan>,
    /// Token hints for what would have been accepted at the error position.
    pub expected: Vec<String>,
}

impl ParseError {
    pub fn new(message: impl Into<String>, span: Option<SourceSpan>) -> Self {
        ParseError {
            message: message.into(),
            span,
            expected: Vec::new(),
        }
    }

    pub fn expecting(mut self, expected: impl IntoIterator<Item = impl Into<String>>) -> Self {
        self.expected = expected.into_iter().map(Into::into).collect();
        self
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.span {
            Some(span) => write!(
                f,
                "parse error at {}..{}: {}",
                span.start, span.end, self.message
            )?,
            None => write!(f, "parse error: {}", self.message)?,
        }
        if !self.expected.is_empty() {
            write!(f, " (expected {})", self.expected.join(" | "))?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}

/// Errors raised by library operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("width mismatch: {left} vs {right}")]
    WidthMismatch { left: u32, right: u32 },

    /// The operation would enumerate a space larger than the configured cap.
    #[error("width {width} exceeds enumeration cap {cap}")]
    WidthCap { width: u32, cap: u32 },

    #[error("packet history length {len} exceeds cap {cap}")]
    HistoryCap { len: usize, cap: usize },

    #[error("bit index {index} out of range 1..={width}")]
    IndexOutOfRange { index: u32, width: u32 },

    #[error("negation applied to a subterm that is not a test")]
    NegationOfAction,

    #[error("unknown field {0}")]
    UnknownField(String),

    #[error("value {value} does not fit in field {field} ({bits} bits)")]
    ValueOutOfRange {
        field: String,
        value: u64,
        bits: u32,
    },

    #[error("{0}")]
    Invalid(String),

    #[error(transparent)]
    Parse(#[from] ParseError),
}

impl Error {
    /// Whether the error reports an exceeded capacity rather than bad input.
    pub fn is_capacity(&self) -> bool {
        matches!(self, Error::WidthCap { .. } | Error::HistoryCap { .. })
    }
}
