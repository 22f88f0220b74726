//! Fixed-length words over a finite alphabet, plus the letter-level operations
//! everything else is built from.
//!
//! A word of length n is stored most-significant letter first, so reading it
//! left to right gives the usual base-p numeral. Positions, however, are
//! counted from the right starting at 1: position 1 is the last letter of the
//! storage, position n the first. All distance and update rules in this crate
//! speak in those positions.

use std::fmt;

use crate::error::{Error, Result};

/// A single letter, stored by numeric value. Caps the alphabet at 256.
pub type Letter = u8;

/// Glyphs used by the text formats: digits, then lowercase letters.
pub const CHARSET: &[u8; 36] = b"0123456789abcdefghijklmnopqrstuvwxyz";

/// Largest alphabet the text formats can render.
pub const MAX_TEXT_ALPHABET: u32 = 36;

/// Largest alphabet the letter representation supports.
pub const MAX_ALPHABET: u32 = 256;

/// Weight parity of a binary word: parity of its number of nonzero letters.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }
}

/// An alphabet {0, 1, ..., p-1} of size p in 2..=256.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Alphabet {
    size: u32,
}

impl Alphabet {
    pub fn new(size: u32) -> Result<Self> {
        if (2..=MAX_ALPHABET).contains(&size) {
            Ok(Alphabet { size })
        } else {
            Err(Error::AlphabetSize(size))
        }
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn is_binary(&self) -> bool {
        self.size == 2
    }

    pub fn contains(&self, c: Letter) -> bool {
        (c as u32) < self.size
    }

    /// The letter t steps along the alphabet cycle 0 -> 1 -> ... -> p-1 -> 0.
    /// Negative t walks the cycle backwards; any magnitude of t is fine.
    pub fn rotate(&self, c: Letter, t: i128) -> Letter {
        let p = self.size as i128;
        (((c as i128) + t).rem_euclid(p)) as Letter
    }

    /// Letter-wise rotation of a whole word.
    pub fn rotate_word(&self, w: &Word, t: i128) -> Word {
        Word(w.0.iter().map(|&c| self.rotate(c, t)).collect())
    }
}

/// A word: a fixed-length string of letters, most significant first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn from_letters(letters: Vec<Letter>) -> Word {
        Word(letters)
    }

    /// The all-zero word of length n.
    pub fn zeros(n: usize) -> Word {
        Word(vec![0; n])
    }

    /// The word c^n.
    pub fn repeated(c: Letter, n: usize) -> Word {
        Word(vec![c; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    /// Letter at position j, counted from the right starting at 1.
    ///
    /// # Panics
    /// Panics if j is 0 or exceeds the length.
    pub fn letter_at_pos(&self, j: usize) -> Letter {
        assert!(j >= 1 && j <= self.0.len(), "position {j} out of 1..={}", self.0.len());
        self.0[self.0.len() - j]
    }

    /// New word equal to self with position j replaced by c.
    pub fn with_letter_at_pos(&self, j: usize, c: Letter) -> Word {
        assert!(j >= 1 && j <= self.0.len(), "position {j} out of 1..={}", self.0.len());
        let mut v = self.0.clone();
        let n = v.len();
        v[n - j] = c;
        Word(v)
    }

    /// Prepend one letter (the new most significant position).
    pub fn prepend(&self, c: Letter) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(c);
        v.extend_from_slice(&self.0);
        Word(v)
    }

    /// Check every letter against an alphabet.
    pub fn check_alphabet(&self, alphabet: Alphabet) -> Result<()> {
        for &c in &self.0 {
            if !alphabet.contains(c) {
                return Err(Error::InvalidLetter { letter: c as u32, alphabet: alphabet.size() });
            }
        }
        Ok(())
    }

    /// Parity of the number of nonzero letters. For binary words this is the
    /// parity of the number of ones.
    pub fn weight_parity(&self) -> Parity {
        if self.0.iter().filter(|&&c| c != 0).count() % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Parse from text glyphs (0-9, a-z), validating against the alphabet.
    pub fn parse(text: &str, alphabet: Alphabet) -> Result<Word> {
        if alphabet.size() > MAX_TEXT_ALPHABET {
            return Err(Error::TextAlphabet(alphabet.size()));
        }
        let mut letters = Vec::with_capacity(text.len());
        for ch in text.chars() {
            let v = match ch {
                '0'..='9' => ch as u32 - '0' as u32,
                'a'..='z' => ch as u32 - 'a' as u32 + 10,
                _ => return Err(Error::Parse(text.to_string())),
            };
            if v >= alphabet.size() {
                return Err(Error::InvalidLetter { letter: v, alphabet: alphabet.size() });
            }
            letters.push(v as Letter);
        }
        Ok(Word(letters))
    }

    /// Render as text glyphs. Letters must be below 36; parameter validation
    /// keeps any word that reaches a text format inside that range.
    pub fn render(&self) -> String {
        self.0
            .iter()
            .map(|&c| {
                assert!((c as usize) < CHARSET.len(), "letter {c} has no text glyph");
                CHARSET[c as usize] as char
            })
            .collect()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|&c| (c as usize) < CHARSET.len()) {
            write!(f, "Word({})", self.render())
        } else {
            write!(f, "Word({:?})", self.0)
        }
    }
}

// Serialized as its text rendering; only report types over text-capable
// alphabets reach serialization.
impl serde::Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.render())
    }
}

/// Number of positions in which two words of equal length differ.
pub fn hamming_distance(a: &Word, b: &Word) -> Result<usize> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch(a.len(), b.len()));
    }
    Ok(a.0.iter().zip(&b.0).filter(|(x, y)| x != y).count())
}
