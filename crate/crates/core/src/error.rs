use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid partition {0:?}: parts must be nonnegative and weakly decreasing")]
    InvalidPartition(Vec<i64>),

    #[error("tiling by the empty diamond is undefined")]
    EmptyDiamond,

    #[error("exponent {num}/{den} is not an integer")]
    FractionalExponent { num: i64, den: i64 },

    #[error("color {color} is not valid for {ty}")]
    InvalidColor { color: usize, ty: String },

    #[error("letter {letter} is not in the alphabet of {ty}")]
    InvalidLetter { letter: i64, ty: String },

    #[error("shape {shape} is out of bounds for {ty}")]
    ShapeOutOfBounds { shape: String, ty: String },

    #[error("malformed input: {0}")]
    Parse(String),

    #[error("inadmissible column {column:?}: {reason}")]
    InadmissibleColumn { column: Vec<i64>, reason: String },

    #[error("invalid specification: {0}")]
    InvalidSpec(String),

    #[error("out of scope: {0}")]
    OutOfScope(String),

    #[error("sigma is ambiguous for {crystal}: {count} candidate solutions survive ({detail})")]
    AmbiguousSigma {
        crystal: String,
        count: usize,
        detail: String,
    },

    #[error("no sigma exists for {crystal}: {reason}")]
    NoSigma { crystal: String, reason: String },

    #[error("{word} is not an element of {crystal}")]
    NotAnElement { word: String, crystal: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("iteration cap of {0} exceeded")]
    IterationCap(usize),

    #[error("component matching is not unique: {0}")]
    AmbiguousMatching(String),

    #[error("oracle inconsistency: {0}")]
    Inconsistent(String),

    #[error("resource guard: {what} needs {needed} elements, limit is {limit}")]
    Guard {
        what: String,
        needed: u128,
        limit: u128,
    },

    #[error("not implemented: {0}")]
    NotImplemented(String),

    #[error("cache: {0}")]
    Cache(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
