use thiserror::Error;

#[derive(Debug, Error)]
pub enum McdError {
    #[error("not a RIFF/WAVE file")]
    NotWav,

    #[error("unsupported encoding: {0}")]
    UnsupportedEncoding(String),

    #[error("truncated file")]
    TruncatedFile,

    #[error("signal too short: {samples} samples, one frame needs {needed}")]
    TooShort { samples: usize, needed: usize },

    #[error("cepstra dimension mismatch: {a} vs {b}")]
    DimensionMismatch { a: usize, b: usize },

    #[error("empty signal")]
    EmptySignal,

    #[error("cepstra matrix must have at least one finite frame: {0}")]
    BadCepstra(String),

    #[error("sample rate mismatch: {a} Hz vs {b} Hz (no resampling is applied)")]
    SampleRateMismatch { a: u32, b: u32 },

    #[error("malformed config: {0}")]
    MalformedConfig(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, McdError>;
