use thiserror::Error;

/// Parse failure for the variety mini-language, with byte position and a
/// description of what was expected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {pos}: {expected}")]
pub struct ParseError {
    pub pos: usize,
    pub expected: String,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("invalid variety specification: {0}")]
    InvalidSpec(String),

    #[error("matrix is not even-sized skew-symmetric")]
    NotSkewSymmetric,

    #[error("join requires charts in the same ambient space")]
    AmbientMismatch,

    #[error("persistent degenerate sampling on chart `{0}`")]
    DegenerateSampling(String),

    #[error("contact locus undefined: S^{k}(X) already fills projective space")]
    ContactUndefined { k: usize },

    #[error("chart `{label}` is not an immersion at sampled points (frame rank {got}, expected {want})")]
    NotImmersion {
        label: String,
        got: usize,
        want: usize,
    },

    #[error("analysis error: {0}")]
    Analysis(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}
