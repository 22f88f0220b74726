//! Error taxonomy shared across the crate.

/// Everything that can go wrong short of an internal invariant breach.
///
/// Parameter problems (`AlphabetSize`, `Param`, `InvalidLetter`, `Parse`,
/// `LengthMismatch`) mean the inputs never described a valid task. `ScaleGuard`
/// means the task is valid but priced beyond a configured cap, and
/// `EndOfSequence` is the normal stop signal of a bounded generator.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("alphabet size {0} out of range 2..=256")]
    AlphabetSize(u32),

    #[error("alphabet size {0} exceeds the text-format limit of 36 glyphs")]
    TextAlphabet(u32),

    #[error("words have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),

    #[error("letter value {letter} is not in an alphabet of size {alphabet}")]
    InvalidLetter { letter: u32, alphabet: u32 },

    #[error("invalid parameters: {0}")]
    Param(String),

    #[error("cannot parse {0:?} as a word")]
    Parse(String),

    #[error("refusing oversized task: {0}")]
    ScaleGuard(String),

    #[error("bounded sequence exhausted")]
    EndOfSequence,

    #[error("arithmetic overflow while computing {0}")]
    Overflow(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
