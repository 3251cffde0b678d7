use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("no scene header found in {lines} input lines")]
    NoScenesFound { lines: usize },

    #[error("degenerate matrix: {scenes} scene(s) and {words} word(s), need at least 2 of each")]
    DegenerateMatrix { scenes: usize, words: usize },

    #[error("row {row} has {len} entries, expected {expected}")]
    ShapeMismatch {
        row: usize,
        len: usize,
        expected: usize,
    },

    #[error("{axis} {index} has zero marginal total")]
    ZeroMarginal { axis: &'static str, index: usize },

    #[error("eigendecomposition of the {size}x{size} inertia matrix did not converge")]
    DecompositionFailure { size: usize },

    #[error("candidate word `{0}` does not occur in the vocabulary")]
    UnknownCandidate(String),

    #[error("empty candidate set")]
    EmptyCandidates,

    #[error("factor map needs at least 2 retained factors, model has {retained}")]
    InsufficientFactors { retained: usize },

    #[error("factor {axis} requested, model retains {retained}")]
    AxisOutOfRange { axis: usize, retained: usize },

    #[error("{what} index {index} out of bounds (len {len})")]
    IndexOutOfBounds {
        what: &'static str,
        index: usize,
        len: usize,
    },

    #[error("invalid header pattern: {0}")]
    Pattern(#[from] regex::Error),

    #[error("malformed artifact: {0}")]
    Json(#[from] serde_json::Error),

    #[error("artifact kind `{found}` where `{expected}` was expected")]
    ArtifactKind { expected: String, found: String },

    #[error("unsupported schema_version {found} (this build reads {supported})")]
    SchemaVersion { found: u32, supported: u32 },
}
