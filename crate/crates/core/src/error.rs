use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("text is empty")]
    EmptyText,

    #[error("text of length {0} exceeds the supported maximum")]
    TextTooLong(usize),

    #[error("position {pos} out of range 1..={n}")]
    PositionOutOfRange { pos: usize, n: usize },

    #[error("invalid factor [{i}..{j}] for text of length {n}")]
    InvalidFactor { i: usize, j: usize, n: usize },

    #[error("empty or inverted range [{l}..{r}] over {len} values")]
    EmptyRange { l: usize, r: usize, len: usize },

    #[error("length {len} out of range 1..={max}")]
    LengthOutOfRange { len: usize, max: usize },

    #[error("window of length {window} exceeds twice the pattern length {pattern}")]
    WindowTooLong { pattern: usize, window: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("{0} is not a border length of the factor")]
    NotABorder(usize),

    #[error("unknown Lyndon root id {0}")]
    UnknownRoot(usize),

    #[error("cover lengths within a border progression do not form a prefix")]
    NotAPrefix,

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("input of length {len} exceeds the oracle cap {cap}")]
    OracleCap { len: usize, cap: usize },

    #[error("malformed index file: {0}")]
    Format(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
