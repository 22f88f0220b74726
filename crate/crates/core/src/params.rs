//! Validated cycle specifications: which construction family applies to a
//! parameter triple (p, n, k), what the resulting cycle must cover, and how
//! long it is.

use std::fmt;

use crate::arith::checked_pow;
use crate::error::{Error, Result};
use crate::word::{Alphabet, Parity, Word};

/// Cap on words a single generator run will stream.
pub const MAX_STREAM_WORDS: u128 = 1 << 40;

/// Cap on words the builders will materialize in memory.
pub const MAX_MATERIALIZED_WORDS: u128 = 1 << 24;

/// The construction family a (p, n, k) triple resolves to.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Variant {
    /// p >= 3, 1 <= k <= n: single-prefix-column recursion over the p-ary
    /// reflected base; covers all of A^n.
    Nary,
    /// p = 2, k odd, n >= k+1: lead sequence of the paired binary recursion;
    /// covers all of A^n.
    BinaryOdd,
    /// The companion sequence the paired binary recursion produces alongside
    /// the lead; also covers all of A^n.
    BinaryOddCompanion,
    /// p = 2, k even, n >= k+1: covers one weight-parity class of A^n. The
    /// parameter is the class of term 0 (Even starts at the all-zero word).
    BinaryEven(Parity),
    /// p = 2, n = k: the two-word cycle (0^k, 1^k).
    ComplementPair,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Variant::Nary => "nary",
            Variant::BinaryOdd => "binary-odd",
            Variant::BinaryOddCompanion => "binary-odd-companion",
            Variant::BinaryEven(Parity::Even) => "binary-even",
            Variant::BinaryEven(Parity::Odd) => "binary-even-odd",
            Variant::ComplementPair => "complement-pair",
        };
        f.write_str(s)
    }
}

/// The word set a cycle is expected to enumerate.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Support {
    /// All of A^n.
    All,
    /// The even-weight half of the binary cube.
    EvenWeight,
    /// The odd-weight half of the binary cube.
    OddWeight,
    /// The two-element set {x, complement(x)}.
    Pair(Word),
}

/// Largest number of words any cyclic enumeration with consecutive distance
/// exactly k can visit: p^n when p >= 3; for p = 2 it is 2 when n = k, 2^n
/// when k is odd, and 2^(n-1) when k is even.
pub fn max_cycle_len(p: u32, n: usize, k: usize) -> Result<u128> {
    if p < 2 {
        return Err(Error::AlphabetSize(p));
    }
    if n == 0 {
        return Err(Error::Param("word length n must be at least 1".into()));
    }
    if k == 0 || k > n {
        return Err(Error::Param(format!("distance k must satisfy 1 <= k <= n, got k={k}, n={n}")));
    }
    if p >= 3 {
        checked_pow(p, n as u32)
    } else if n == k {
        Ok(2)
    } else if k % 2 == 1 {
        checked_pow(2, n as u32)
    } else {
        checked_pow(2, n as u32 - 1)
    }
}

/// A validated parameter triple with its resolved construction variant.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CycleSpec {
    alphabet: Alphabet,
    word_len: usize,
    distance: usize,
    variant: Variant,
}

impl CycleSpec {
    /// Validate (p, n, k) and resolve the variant. With `None` the natural
    /// variant is chosen: Nary for p >= 3; for p = 2 the complement pair when
    /// n = k, else BinaryOdd or BinaryEven(Even) by the parity of k.
    pub fn new(p: u32, n: usize, k: usize, variant: Option<Variant>) -> Result<CycleSpec> {
        let alphabet = Alphabet::new(p)?;
        max_cycle_len(p, n, k)?;
        let resolved = match variant {
            Some(v) => v,
            None => {
                if p >= 3 {
                    Variant::Nary
                } else if n == k {
                    Variant::ComplementPair
                } else if k % 2 == 1 {
                    Variant::BinaryOdd
                } else {
                    Variant::BinaryEven(Parity::Even)
                }
            }
        };
        let compatible = match resolved {
            Variant::Nary => p >= 3,
            Variant::BinaryOdd | Variant::BinaryOddCompanion => p == 2 && k % 2 == 1 && n >= k + 1,
            Variant::BinaryEven(_) => p == 2 && k % 2 == 0 && n >= k + 1,
            Variant::ComplementPair => p == 2 && n == k,
        };
        if !compatible {
            return Err(Error::Param(format!(
                "variant {resolved} does not apply to p={p}, n={n}, k={k}"
            )));
        }
        Ok(CycleSpec { alphabet, word_len: n, distance: k, variant: resolved })
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn word_len(&self) -> usize {
        self.word_len
    }

    pub fn distance(&self) -> usize {
        self.distance
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    /// Length of the base component the recursion bottoms out at: n - k + 1.
    pub fn base_len(&self) -> usize {
        self.word_len - self.distance + 1
    }

    /// Number of terms the construction yields, equal to max_cycle_len.
    pub fn expected_len(&self) -> u128 {
        // Parameters were validated at construction.
        max_cycle_len(self.alphabet.size(), self.word_len, self.distance)
            .expect("validated spec has a defined length")
    }

    /// The word set the built cycle enumerates.
    pub fn support(&self) -> Support {
        match self.variant {
            Variant::Nary | Variant::BinaryOdd | Variant::BinaryOddCompanion => Support::All,
            Variant::BinaryEven(Parity::Even) => Support::EvenWeight,
            Variant::BinaryEven(Parity::Odd) => Support::OddWeight,
            Variant::ComplementPair => Support::Pair(Word::zeros(self.distance)),
        }
    }
}

/// A materialized cycle together with the spec it was built for.
#[derive(Clone, Debug)]
pub struct GrayCycle {
    spec: CycleSpec,
    terms: Vec<Word>,
}

impl GrayCycle {
    pub(crate) fn new(spec: CycleSpec, terms: Vec<Word>) -> GrayCycle {
        GrayCycle { spec, terms }
    }

    pub fn spec(&self) -> &CycleSpec {
        &self.spec
    }

    pub fn terms(&self) -> &[Word] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn into_terms(self) -> Vec<Word> {
        self.terms
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn length_formula() {
        assert_eq!(max_cycle_len(3, 3, 2).unwrap(), 27);
        assert_eq!(max_cycle_len(4, 5, 5).unwrap(), 1024);
        assert_eq!(max_cycle_len(2, 4, 4).unwrap(), 2);
        assert_eq!(max_cycle_len(2, 7, 7).unwrap(), 2);
        assert_eq!(max_cycle_len(2, 5, 3).unwrap(), 32);
        assert_eq!(max_cycle_len(2, 4, 2).unwrap(), 8);
        assert_eq!(max_cycle_len(2, 6, 4).unwrap(), 32);
    }

    #[test]
    fn length_formula_rejects_bad_parameters() {
        assert!(max_cycle_len(1, 3, 1).is_err());
        assert!(max_cycle_len(3, 0, 1).is_err());
        assert!(max_cycle_len(3, 3, 0).is_err());
        assert!(max_cycle_len(3, 3, 4).is_err());
    }

    #[test]
    fn natural_variant_resolution() {
        assert_eq!(CycleSpec::new(3, 4, 2, None).unwrap().variant(), Variant::Nary);
        assert_eq!(CycleSpec::new(2, 5, 3, None).unwrap().variant(), Variant::BinaryOdd);
        assert_eq!(
            CycleSpec::new(2, 6, 4, None).unwrap().variant(),
            Variant::BinaryEven(Parity::Even)
        );
        assert_eq!(CycleSpec::new(2, 3, 3, None).unwrap().variant(), Variant::ComplementPair);
    }

    #[test]
    fn variant_compatibility_is_enforced() {
        assert!(CycleSpec::new(2, 5, 3, Some(Variant::Nary)).is_err());
        assert!(CycleSpec::new(3, 5, 3, Some(Variant::BinaryOdd)).is_err());
        assert!(CycleSpec::new(2, 5, 2, Some(Variant::BinaryOdd)).is_err());
        assert!(CycleSpec::new(2, 3, 3, Some(Variant::BinaryOdd)).is_err());
        assert!(CycleSpec::new(2, 4, 2, Some(Variant::BinaryEven(Parity::Odd))).is_ok());
        assert!(CycleSpec::new(2, 4, 4, Some(Variant::ComplementPair)).is_ok());
        assert!(CycleSpec::new(2, 5, 4, Some(Variant::ComplementPair)).is_err());
    }

    #[test]
    fn base_len_and_support() {
        let s = CycleSpec::new(2, 5, 3, None).unwrap();
        assert_eq!(s.base_len(), 3);
        assert_eq!(s.support(), Support::All);
        assert_eq!(s.expected_len(), 32);

        let e = CycleSpec::new(2, 6, 4, Some(Variant::BinaryEven(Parity::Odd))).unwrap();
        assert_eq!(e.support(), Support::OddWeight);
        assert_eq!(e.expected_len(), 32);

        let t = CycleSpec::new(2, 2, 2, None).unwrap();
        assert_eq!(t.support(), Support::Pair(Word::zeros(2)));
        assert_eq!(t.expected_len(), 2);
    }
}
