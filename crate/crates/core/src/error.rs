use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("part {0} occurs more than once")]
    DuplicatePart(u32),
    #[error("part {0} is not a positive integer")]
    NonPositivePart(i64),
    #[error("a partition needs at least one part")]
    Empty,
    #[error("the numerical set has no gaps; its diagram is empty")]
    NoGaps,
    #[error("row lengths must be positive and weakly decreasing, got {0:?}")]
    InvalidDiagram(Vec<u32>),
    #[error("malformed numerical set {0:?}")]
    MalformedSet(String),
    #[error("no first-row hook equals n-2 = {target}")]
    NoZColumn { target: u32 },
    #[error("diagonal hook in row {row} is not twice the extra-column hook")]
    DoublingViolated { row: usize },
    #[error("n = {n} is below the range where the largest-part bounds hold (n >= 6, 0 <= d < n)")]
    OutOfRange { n: u32 },
    #[error("there is no unrefinable partition of {0}")]
    EmptyUniverse(u32),
    #[error("the {kind} pattern collides for n = {n}")]
    PatternCollision { kind: &'static str, n: u32 },
    #[error("partition is not covered by any bijection: {0}")]
    Unclassifiable(String),
    #[error("invalid bijection parameters: {0}")]
    InvalidCase(String),
    #[error("diagram does not have the expected shape: {0}")]
    ShapeMismatch(String),
    #[error("eta = {0:?} is excluded from this bijection")]
    ExcludedEta(Vec<u32>),
    #[error("eta does not belong to the target family: {0}")]
    InvalidEta(String),
    #[error("constructed partition violates a structural condition: {0}")]
    ConstraintViolation(String),
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
    #[error("line {line}: malformed b-file entry {content:?}")]
    MalformedLine { line: usize, content: String },
    #[error("i/o failure: {0}")]
    IoFailure(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::IoFailure(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::IoFailure(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::IoFailure(e.to_string())
    }
}
