use thiserror::Error;

/// Errors produced by inventory access, script reading, rule application
/// and synthesizer selection.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown label `{0}`")]
    UnknownLabel(String),

    #[error("unknown codepoint U+{codepoint:04X} at byte offset {offset}")]
    UnknownCodepoint { codepoint: u32, offset: usize },

    #[error("empty word")]
    EmptyWord,

    #[error("unknown rule pack `{0}`")]
    UnknownRulePack(String),

    #[error("malformed profile{}: {message}", path.as_deref().map(|p| format!(" `{p}`")).unwrap_or_default())]
    MalformedProfile {
        path: Option<String>,
        message: String,
    },

    #[error("malformed data file `{file}`: {message}")]
    MalformedData { file: String, message: String },

    #[error("unsupported script for this table: {0}")]
    ScriptMismatch(String),

    #[error("target phone inventory is empty")]
    EmptyTargetInventory,

    #[error("no synthesizer candidates")]
    NoCandidates,

    #[error("word {word_index} (`{word}`): {source}")]
    InWord {
        word_index: usize,
        word: String,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
