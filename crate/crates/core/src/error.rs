use thiserror::Error;

/// Everything that can go wrong inside the engines.
///
/// All of these are *mathematical domain* failures: the input was well
/// formed, but the requested operation is not defined on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch in {context}: {left} vs {right}")]
    DimensionMismatch {
        context: &'static str,
        left: usize,
        right: usize,
    },

    #[error("shape mismatch in {context}: expected {expected:?}, found {found:?}")]
    ShapeMismatch {
        context: &'static str,
        expected: (usize, usize),
        found: (usize, usize),
    },

    #[error("ragged matrix: row {row} has {found} entries, expected {expected}")]
    RaggedMatrix {
        row: usize,
        expected: usize,
        found: usize,
    },

    #[error("not composable: {0}")]
    NotComposable(String),

    #[error("word is not composable at index {index}: {reason}")]
    NotComposableAt { index: usize, reason: String },

    #[error("unknown label `{label}` for set `{set}`")]
    UnknownLabel { label: String, set: String },

    #[error("duplicate label `{label}` in set `{set}`")]
    DuplicateLabel { label: String, set: String },

    #[error("invalid symplectic space: {0}")]
    InvalidSpace(String),

    #[error("not lagrangian: {0}")]
    NotLagrangian(String),

    #[error(
        "pair at index {index} is not strongly transversal \
         (transversality defect {transversality_defect}, monicity defect {monicity_defect})"
    )]
    NotStronglyTransversal {
        index: usize,
        transversality_defect: usize,
        monicity_defect: usize,
    },

    #[error("factorization invariant failed: {0}")]
    Invariant(String),

    #[error("index {index} out of range for word of length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("empty word: {0}")]
    EmptyWord(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
