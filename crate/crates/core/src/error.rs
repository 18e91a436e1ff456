//! Error type shared across the toolkit.

use std::path::PathBuf;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("duplicate document id: {0}")]
    DuplicateId(String),

    #[error("corpus contains no records")]
    EmptyCorpus,

    #[error("invalid argument: {0}")]
    InvalidArg(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("insufficient pool: need {needed}, have {available}")]
    InsufficientPool { needed: usize, available: usize },

    #[error("transport error after {attempts} attempt(s): {message}")]
    Transport { attempts: u32, message: String },

    #[error("endpoint returned status {status} after {attempts} attempt(s)")]
    HttpStatus { status: u16, attempts: u32 },

    #[error("malformed response after {attempts} attempt(s): {message}")]
    MalformedResponse { attempts: u32, message: String },

    #[error("embedding dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("encoder failed on chunk {chunk}: {message}")]
    EncoderFailure { chunk: usize, message: String },

    #[error("prompt exceeds context budget ({tokens} tokens > {budget}) even after truncation")]
    ContextOverflow { tokens: usize, budget: usize },

    #[error("generation stalled: produced {progress} of {target} documents")]
    GenerationStalled { progress: usize, target: usize },

    #[error("no integer rating among the response's first-token alternatives")]
    UnparsableRating,

    #[error("missing artifact: {0} (run the earlier pipeline stage first)")]
    MissingArtifact(PathBuf),

    #[error("artifact schema version mismatch: expected {expected}, found {found}")]
    SchemaVersion { expected: u32, found: u32 },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Classifies errors a CLI should blame on the invocation rather than the
    /// pipeline (bad config, bad paths, invalid arguments).
    pub fn is_user_error(&self) -> bool {
        matches!(
            self,
            Error::InvalidArg(_) | Error::MissingArtifact(_) | Error::SchemaVersion { .. }
        )
    }
}
