use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("alphabet size must be in 2..=256, got {0}")]
    InvalidAlphabet(usize),

    #[error("letter {letter} at position {position} is outside an alphabet of size {q}")]
    LetterOutOfRange { letter: usize, position: usize, q: usize },

    #[error("words live over different alphabets ({left} vs {right} letters)")]
    AlphabetMismatch { left: usize, right: usize },

    #[error("empty word")]
    EmptyWord,

    #[error("word is not primitive: it is a proper power of a word of length {period}")]
    NotPrimitive { period: usize },

    #[error("word is not a Lyndon word")]
    NotLyndon,

    #[error("a standard factorization needs a word of length at least 2")]
    TooShort,

    #[error("cannot parse word {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("word is not good: failed conditions {0:?}")]
    NotGood(Vec<crate::runs_blocks::GoodCondition>),

    #[error("invalid block permutation: {0}")]
    InvalidPermutation(String),

    #[error("second smallest block is not unique")]
    AmbiguousSecondBlock,

    #[error("{count} Lyndon words exceed the exhaustive enumeration guard of {limit}; use Monte Carlo instead")]
    GuardExceeded { count: String, limit: u64 },

    #[error("empty sample")]
    EmptySample,
}

pub type Result<T> = std::result::Result<T, Error>;
