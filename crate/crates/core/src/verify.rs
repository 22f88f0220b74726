//! Independent cycle verification. Three conditions make a sequence a valid
//! cycle: it covers its declared word set (coverage), consecutive terms,
//! wraparound included, sit at the right distance (adjacency), and no term
//! repeats (distinctness). The checker trusts nothing about how the sequence
//! was produced.

use std::collections::HashMap;

use serde::Serialize;

use crate::arith::checked_pow;
use crate::error::{Error, Result};
use crate::params::Support;
use crate::word::{hamming_distance, Alphabet, Parity, Word};

/// Adjacency semantics: consecutive terms differ in exactly k positions, or
/// in at least 1 and at most k.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DistanceMode {
    Exact,
    AtMost,
}

/// Which of the three cycle conditions a violation breaks.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition {
    Coverage,
    Adjacency,
    Distinctness,
}

/// One broken condition. For adjacency the index is the arriving term of the
/// offending pair (0 for the wraparound pair).
#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    pub condition: Condition,
    pub index: usize,
    pub detail: String,
}

/// Everything the checker found. `ok` iff no violations.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub ok: bool,
    pub mode: DistanceMode,
    pub distance: usize,
    pub term_count: usize,
    pub violations: Vec<Violation>,
}

impl VerificationReport {
    fn from_violations(
        mode: DistanceMode,
        distance: usize,
        term_count: usize,
        violations: Vec<Violation>,
    ) -> VerificationReport {
        VerificationReport { ok: violations.is_empty(), mode, distance, term_count, violations }
    }
}

/// The word set a sequence claims to enumerate, with enough context to check
/// the claim.
#[derive(Clone, Debug)]
pub struct SupportSpec {
    pub alphabet: Alphabet,
    pub word_len: usize,
    pub support: Support,
}

impl SupportSpec {
    fn expected_count(&self) -> Result<u128> {
        match &self.support {
            Support::All => checked_pow(self.alphabet.size(), self.word_len as u32),
            Support::EvenWeight | Support::OddWeight => {
                checked_pow(2, self.word_len as u32 - 1)
            }
            Support::Pair(_) => Ok(2),
        }
    }
}

/// Check a sequence against the three cycle conditions.
///
/// Distinctness is always checked. Adjacency is checked per `mode`, including
/// the wraparound pair; a single-term sequence fails adjacency because no
/// word is at positive distance from itself. Coverage is checked only when a
/// support is supplied: membership term by term, plus the counting argument
/// (distinct + all members + right count = full cover).
///
/// Mixed term lengths are a structural error, not a violation.
pub fn verify_gray_cycle(
    terms: &[Word],
    k: usize,
    mode: DistanceMode,
    support: Option<&SupportSpec>,
) -> Result<VerificationReport> {
    if terms.is_empty() {
        return Err(Error::Param("cannot verify an empty sequence".into()));
    }
    let n = terms[0].len();
    for w in terms {
        if w.len() != n {
            return Err(Error::LengthMismatch(n, w.len()));
        }
    }
    if k == 0 || k > n {
        return Err(Error::Param(format!("distance k must satisfy 1 <= k <= n, got k={k}, n={n}")));
    }

    let mut violations = Vec::new();

    // Distinctness: report every repeat at its later index.
    let mut seen: HashMap<&Word, usize> = HashMap::with_capacity(terms.len());
    for (i, w) in terms.iter().enumerate() {
        if let Some(&first) = seen.get(w) {
            violations.push(Violation {
                condition: Condition::Distinctness,
                index: i,
                detail: format!("term {i} repeats term {first} ({w})"),
            });
        } else {
            seen.insert(w, i);
        }
    }

    // Adjacency, wraparound included.
    for arrive in 0..terms.len() {
        // For a singleton the wraparound pair degenerates to (w, w) and the
        // positive-distance requirement fails it, as it should.
        let depart = (arrive + terms.len() - 1) % terms.len();
        let d = hamming_distance(&terms[depart], &terms[arrive])?;
        let bad = match mode {
            DistanceMode::Exact => d != k,
            DistanceMode::AtMost => d == 0 || d > k,
        };
        if bad {
            let what = match mode {
                DistanceMode::Exact => format!("need exactly {k}"),
                DistanceMode::AtMost => format!("need 1..={k}"),
            };
            let tag = if arrive == 0 { "wraparound: " } else { "" };
            violations.push(Violation {
                condition: Condition::Adjacency,
                index: arrive,
                detail: format!(
                    "{tag}terms {depart} and {arrive} differ in {d} positions ({what})"
                ),
            });
        }
    }
    // Present wraparound complaints last; interior pairs read in order.
    violations.sort_by_key(|v| match v.condition {
        Condition::Adjacency if v.index == 0 => usize::MAX,
        _ => v.index,
    });

    // Coverage against the declared support.
    if let Some(spec) = support {
        if spec.word_len != n {
            return Err(Error::Param(format!(
                "support describes words of length {}, sequence has length {n}",
                spec.word_len
            )));
        }
        for (i, w) in terms.iter().enumerate() {
            let member = match &spec.support {
                Support::All => w.check_alphabet(spec.alphabet).is_ok(),
                Support::EvenWeight => {
                    spec.alphabet.is_binary()
                        && w.check_alphabet(spec.alphabet).is_ok()
                        && w.weight_parity() == Parity::Even
                }
                Support::OddWeight => {
                    spec.alphabet.is_binary()
                        && w.check_alphabet(spec.alphabet).is_ok()
                        && w.weight_parity() == Parity::Odd
                }
                Support::Pair(x) => w == x || *w == spec.alphabet.rotate_word(x, 1),
            };
            if !member {
                violations.push(Violation {
                    condition: Condition::Coverage,
                    index: i,
                    detail: format!("term {i} ({w}) lies outside the declared support"),
                });
            }
        }
        let expected = spec.expected_count()?;
        if terms.len() as u128 != expected {
            violations.push(Violation {
                condition: Condition::Coverage,
                index: 0,
                detail: format!(
                    "support holds {expected} words, sequence has {}",
                    terms.len()
                ),
            });
        }
    }

    Ok(VerificationReport::from_violations(mode, k, terms.len(), violations))
}
