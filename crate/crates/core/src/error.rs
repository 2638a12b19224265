use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed alphabet config at line {line}: {reason}")]
    MalformedConfig { line: usize, reason: String },
    #[error("symbol '{0}' is listed as both a vowel and a consonant")]
    OverlappingClasses(char),
    #[error("alphabet has no {0}")]
    EmptyClass(&'static str),
    #[error("unknown symbol '{symbol}' at index {index}")]
    UnknownSymbol { symbol: char, index: usize },
    #[error("empty word")]
    EmptyWord,
    #[error("empty segment sequence")]
    EmptyInput,
    #[error("ill-formed parse: {0}")]
    IllFormedParse(String),
    #[error("residual grid admits no well-formed completion")]
    NoWellFormedCompletion,
    #[error("input of length {len} exceeds the oracle cap of {cap}")]
    InputTooLong { len: usize, cap: usize },
    #[error("invalid ranking: {0}")]
    InvalidRanking(String),
    #[error("invalid constraint name '{0}'")]
    UnknownConstraint(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("grid invariant broken at step {step}: {detail}")]
    InvariantBroken { step: usize, detail: String },
}
