use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("letter {letter} outside alphabet 1..{n}")]
    LetterOutOfRange { letter: usize, n: usize },
    #[error("image of letter {0} does not start with it, no one-sided fixed point")]
    NotASeed(usize),
    #[error("polynomial degree {0} above the supported cap of 16")]
    UnsupportedDegree(usize),
    #[error("no Pisot factor in the characteristic polynomial")]
    NotPisot,
    #[error("dominant root is shared by several factors")]
    AmbiguousPisot,
    #[error("incidence matrix is not unimodular (det = {0})")]
    NotUnimodular(i64),
    #[error("numeric failure: {0}")]
    Numeric(String),
    #[error("geometry unsupported for contracting dimension {0}")]
    GeometryUnsupported(usize),
    #[error("chain is not geometric (coefficient {0})")]
    NotGeometric(i64),
    #[error("seed is not contained in its image under the chosen power")]
    SeedNotContained,
    #[error("seed faces must be based at the origin")]
    SeedNotAtOrigin,
    #[error("empty input")]
    Empty,
    #[error("point left every tile of the partition at step {0}")]
    Escape(usize),
    #[error("operation restricted to the five-letter family: {0}")]
    Family(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
