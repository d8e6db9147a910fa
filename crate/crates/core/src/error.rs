use thiserror::Error;

/// Errors surfaced by the engine.
///
/// Precondition failures carry the name of the hypothesis that did not hold so
/// that batch callers can tell a bad instance apart from an engine fault.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ambient mismatch: {left} vs {right}")]
    AmbientMismatch { left: String, right: String },

    #[error("invalid ambient group: {0}")]
    InvalidAmbient(String),

    #[error("element {element} does not belong to ambient {ambient}")]
    ElementOutsideAmbient { element: String, ambient: String },

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("precondition `{hypothesis}` failed: {detail}")]
    Precondition {
        hypothesis: &'static str,
        detail: String,
    },

    #[error("set {0} is not closed under addition")]
    NotClosed(String),

    #[error("translatability fails at x = {0}: T \\ (x + T) is infinite")]
    NotTranslatable(String),

    #[error("Grothendieck group of the carrier is {found}, not the full ambient")]
    GrothendieckMismatch { found: String },

    #[error("subgroup has infinite index")]
    InfiniteIndex,

    #[error("order search exceeded its certified cap {cap}: engine fault")]
    CapExceeded { cap: u32 },

    #[error("certification failed: {0}")]
    Certification(String),

    #[error("budget exceeded: {0}")]
    Budget(String),

    #[error("truncation degree too small: {0}")]
    Truncation(String),

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn precondition(hypothesis: &'static str, detail: impl Into<String>) -> Self {
        Error::Precondition {
            hypothesis,
            detail: detail.into(),
        }
    }
}
