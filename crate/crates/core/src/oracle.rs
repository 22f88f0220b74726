//! Independent brute-force oracle. Nothing here reuses the constructions:
//! candidate sets are checked by exhaustive Hamiltonian-cycle search over the
//! distance-k graph, and the maximum cycle length is found by enumerating
//! subsets in decreasing size. Deliberately small caps keep every call
//! tractable; past them the oracle refuses rather than degrade.

use crate::arith::checked_pow;
use crate::build::build;
use crate::engine::{Generator, GeneratorConfig, RunMode, Strategy};
use crate::error::{Error, Result};
use crate::params::CycleSpec;
use crate::verify::{verify_gray_cycle, DistanceMode, SupportSpec, VerificationReport};
use crate::word::{hamming_distance, Alphabet, Parity, Word};

/// Most candidate words `has_gray_cycle` will consider.
pub const ORACLE_VERTEX_CAP: usize = 24;

/// Most words in any single exhaustive subset search.
const SUBSET_UNIVERSE_CAP: u128 = 16;

/// Does ANY cyclic arrangement of exactly these words form a distance-k Gray
/// cycle? Order of the input is irrelevant: this asks whether the distance-k
/// graph restricted to the set has a Hamiltonian cycle (for two words, whether
/// they lie at distance exactly k; one word can never follow itself).
pub fn has_gray_cycle(words: &[Word], k: usize) -> Result<bool> {
    if words.is_empty() {
        return Err(Error::Param("empty candidate set".into()));
    }
    if k == 0 {
        return Err(Error::Param("distance must be at least 1".into()));
    }
    if words.len() > ORACLE_VERTEX_CAP {
        return Err(Error::ScaleGuard(format!(
            "{} candidate words exceed the oracle cap of {ORACLE_VERTEX_CAP}",
            words.len()
        )));
    }
    let n = words[0].letters().len();
    for w in words {
        if w.letters().len() != n {
            return Err(Error::LengthMismatch(n, w.letters().len()));
        }
    }
    for (i, w) in words.iter().enumerate() {
        if words[..i].contains(w) {
            return Err(Error::Param(format!("duplicate word {w} in candidate set")));
        }
    }
    match words.len() {
        1 => Ok(false),
        2 => Ok(hamming_distance(&words[0], &words[1])? == k),
        m => {
            let adj = adjacency(words, k)?;
            let full = (1u32 << m) - 1;
            Ok(hamiltonian_cycle_exists(&adj, full))
        }
    }
}

/// Length of the longest distance-k Gray cycle over words of any single
/// length up to n, found exhaustively. Refuses when any length in range is
/// too large to enumerate. For a binary alphabet and even k, distance-k steps
/// preserve weight parity (and a two-word cycle needs even distance too), so
/// no maximum set mixes the parity classes; that halves the universe and
/// admits one extra length.
pub fn max_cycle_len_bruteforce(p: u32, n: usize, k: usize) -> Result<u64> {
    let alphabet = Alphabet::new(p)?;
    if k == 0 || k > n {
        return Err(Error::Param(format!(
            "distance {k} out of range for words of length {n}"
        )));
    }
    let mut best = 0u64;
    for m in k..=n {
        let full_count = checked_pow(p, m as u32)?;
        if full_count <= SUBSET_UNIVERSE_CAP {
            let universe = all_words(alphabet, m);
            best = best.max(best_cycle_in(&universe, k, best)?);
        } else if p == 2 && k % 2 == 0 && (full_count / 2) <= SUBSET_UNIVERSE_CAP {
            for parity in [Parity::Even, Parity::Odd] {
                let class = parity_class(m, parity);
                best = best.max(best_cycle_in(&class, k, best)?);
            }
        } else {
            return Err(Error::ScaleGuard(format!(
                "{full_count} words of length {m} exceed the exhaustive-search cap of {SUBSET_UNIVERSE_CAP}"
            )));
        }
    }
    Ok(best)
}

/// One full cross-validation of a spec: materialize with the recursive
/// builder, regenerate with both streaming strategies, verify all three
/// cycle conditions plus support, and compare the count against the
/// maximum-length formula.
#[derive(Debug, serde::Serialize)]
pub struct CrossCheckReport {
    pub term_count: usize,
    pub expected_count: u128,
    pub count_matches: bool,
    pub cat_matches: bool,
    /// None when loopless preprocessing was refused at the default threshold.
    pub loopless_matches: Option<bool>,
    pub verification: VerificationReport,
    pub ok: bool,
}

pub fn cross_check(spec: &CycleSpec) -> Result<CrossCheckReport> {
    let built = build(spec)?;
    let terms = built.cycle.terms();

    let cat_cfg = GeneratorConfig {
        strategy: Strategy::Cat,
        run_mode: RunMode::Bounded,
        ..GeneratorConfig::default()
    };
    let cat: Vec<Word> = Generator::with_config(spec, &cat_cfg)?.into_words().collect();
    let cat_matches = cat.as_slice() == terms;

    let loopless_matches = match Generator::new(spec, Strategy::Loopless) {
        Ok(g) => Some(g.into_words().collect::<Vec<_>>().as_slice() == terms),
        Err(Error::ScaleGuard(_)) => None,
        Err(e) => return Err(e),
    };

    let support = SupportSpec {
        alphabet: spec.alphabet(),
        word_len: spec.word_len(),
        support: spec.support(),
    };
    let verification =
        verify_gray_cycle(terms, spec.distance(), DistanceMode::Exact, Some(&support))?;

    let expected_count = spec.expected_len();
    let count_matches = terms.len() as u128 == expected_count;
    let ok = count_matches && cat_matches && loopless_matches.unwrap_or(true) && verification.ok;
    Ok(CrossCheckReport {
        term_count: terms.len(),
        expected_count,
        count_matches,
        cat_matches,
        loopless_matches,
        verification,
        ok,
    })
}

fn all_words(alphabet: Alphabet, m: usize) -> Vec<Word> {
    let p = alphabet.size() as u128;
    let count = p.pow(m as u32);
    (0..count)
        .map(|idx| {
            let mut letters = vec![0u8; m];
            let mut rest = idx;
            for slot in letters.iter_mut().rev() {
                *slot = (rest % p) as u8;
                rest /= p;
            }
            Word::from_letters(letters)
        })
        .collect()
}

fn parity_class(m: usize, parity: Parity) -> Vec<Word> {
    let binary = Alphabet::new(2).expect("binary alphabet");
    all_words(binary, m)
        .into_iter()
        .filter(|w| w.weight_parity() == parity)
        .collect()
}

fn adjacency(words: &[Word], k: usize) -> Result<Vec<u32>> {
    let m = words.len();
    let mut adj = vec![0u32; m];
    for i in 0..m {
        for j in i + 1..m {
            if hamming_distance(&words[i], &words[j])? == k {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
        }
    }
    Ok(adj)
}

/// Longest cycle over any subset of `universe` larger than `floor`; 0 when no
/// subset beats the floor. Subsets are enumerated in decreasing size so the
/// first success is the answer for this universe.
fn best_cycle_in(universe: &[Word], k: usize, floor: u64) -> Result<u64> {
    let m = universe.len();
    debug_assert!(m as u128 <= SUBSET_UNIVERSE_CAP);
    let adj = adjacency(universe, k)?;
    let full: u32 = (1u32 << m) - 1;
    let mut size = m as u64;
    while size >= 2 && size > floor {
        // Constant-weight masks in ascending order (Gosper's hack).
        let mut mask: u32 = (1u32 << size) - 1;
        while mask <= full {
            if hamiltonian_cycle_exists(&adj, mask) {
                return Ok(size);
            }
            let low = mask & mask.wrapping_neg();
            let ripple = mask.wrapping_add(low);
            if ripple > full {
                break;
            }
            mask = (((ripple ^ mask) >> 2) / low) | ripple;
        }
        size -= 1;
    }
    Ok(0)
}

/// Hamiltonian-cycle decision on the subgraph induced by `mask`, by
/// backtracking from the lowest vertex after degree and connectivity
/// prechecks.
fn hamiltonian_cycle_exists(adj: &[u32], mask: u32) -> bool {
    let size = mask.count_ones();
    if size < 2 {
        return false;
    }
    if size == 2 {
        let lo = mask.trailing_zeros() as usize;
        let hi = (31 - mask.leading_zeros()) as usize;
        return adj[lo] & (1 << hi) != 0;
    }
    let mut scan = mask;
    while scan != 0 {
        let v = scan.trailing_zeros() as usize;
        scan &= scan - 1;
        if (adj[v] & mask).count_ones() < 2 {
            return false;
        }
    }
    let start = mask.trailing_zeros() as usize;
    let mut seen = 1u32 << start;
    let mut frontier = seen;
    while frontier != 0 {
        let mut next = 0u32;
        let mut f = frontier;
        while f != 0 {
            let v = f.trailing_zeros() as usize;
            f &= f - 1;
            next |= adj[v] & mask & !seen;
        }
        seen |= next;
        frontier = next;
    }
    if seen != mask {
        return false;
    }
    extend_path(adj, mask, start, start, 1u32 << start)
}

fn extend_path(adj: &[u32], mask: u32, start: usize, current: usize, visited: u32) -> bool {
    if visited == mask {
        return adj[current] & (1 << start) != 0;
    }
    // Every vertex still to be visited must keep at least two usable links:
    // to other unvisited vertices or to the path's two open endpoints.
    let remaining = mask & !visited;
    let usable = remaining | (1 << current) | (1 << start);
    let mut scan = remaining;
    while scan != 0 {
        let u = scan.trailing_zeros() as usize;
        scan &= scan - 1;
        if (adj[u] & usable).count_ones() < 2 {
            return false;
        }
    }
    let mut cands = adj[current] & remaining;
    while cands != 0 {
        let v = cands.trailing_zeros() as usize;
        cands &= cands - 1;
        if extend_path(adj, mask, start, v, visited | (1 << v)) {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::Variant;

    fn words(texts: &[&str]) -> Vec<Word> {
        let alphabet = Alphabet::new(36).unwrap();
        texts.iter().map(|t| Word::parse(t, alphabet).unwrap()).collect()
    }

    #[test]
    fn recognizes_cycles_as_sets_regardless_of_order() {
        let square = words(&["00", "01", "11", "10"]);
        assert!(has_gray_cycle(&square, 1).unwrap());
        let shuffled = words(&["00", "01", "10", "11"]);
        assert!(has_gray_cycle(&shuffled, 1).unwrap());
        assert!(!has_gray_cycle(&square, 2).unwrap());
    }

    #[test]
    fn tiny_sets_follow_the_distance_rule() {
        assert!(!has_gray_cycle(&words(&["010"]), 1).unwrap());
        assert!(has_gray_cycle(&words(&["000", "111"]), 3).unwrap());
        assert!(!has_gray_cycle(&words(&["000", "110"]), 3).unwrap());
    }

    #[test]
    fn rejects_degenerate_input() {
        assert!(has_gray_cycle(&[], 1).is_err());
        assert!(has_gray_cycle(&words(&["00", "00"]), 1).is_err());
        assert!(has_gray_cycle(&words(&["00", "010"]), 1).is_err());
        assert!(has_gray_cycle(&words(&["00", "01"]), 0).is_err());
        let too_many: Vec<Word> = all_words(Alphabet::new(2).unwrap(), 5)
            .into_iter()
            .take(ORACLE_VERTEX_CAP + 1)
            .collect();
        assert!(matches!(
            has_gray_cycle(&too_many, 1),
            Err(Error::ScaleGuard(_))
        ));
    }

    #[test]
    fn parity_splits_binary_even_distances() {
        // Under distance 2 the even-weight words of length 3 form a complete
        // graph on 4 vertices; the full cube is disconnected.
        let evens = parity_class(3, Parity::Even);
        assert!(has_gray_cycle(&evens, 2).unwrap());
        let cube = all_words(Alphabet::new(2).unwrap(), 3);
        assert!(!has_gray_cycle(&cube, 2).unwrap());
    }

    #[test]
    fn exhaustive_maxima_on_the_smallest_grid() {
        let expected: &[(u32, usize, usize, u64)] = &[
            (2, 2, 1, 4),
            (2, 3, 1, 8),
            (2, 3, 2, 4),
            (2, 4, 2, 8),
            (2, 2, 2, 2),
            (2, 3, 3, 2),
            (3, 2, 1, 9),
            (3, 2, 2, 9),
        ];
        for &(p, n, k, want) in expected {
            assert_eq!(
                max_cycle_len_bruteforce(p, n, k).unwrap(),
                want,
                "p={p} n={n} k={k}"
            );
        }
    }

    #[test]
    fn exhaustive_maxima_match_the_closed_form() {
        for &(p, n, k) in &[(2u32, 4usize, 1usize), (2, 4, 2), (2, 5, 2), (2, 4, 4), (4, 2, 1), (4, 2, 2)] {
            assert_eq!(
                max_cycle_len_bruteforce(p, n, k).unwrap() as u128,
                crate::params::max_cycle_len(p, n, k).unwrap(),
                "p={p} n={n} k={k}"
            );
        }
    }

    #[test]
    fn refuses_out_of_reach_searches() {
        assert!(matches!(
            max_cycle_len_bruteforce(3, 3, 1),
            Err(Error::ScaleGuard(_))
        ));
        assert!(matches!(
            max_cycle_len_bruteforce(2, 5, 1),
            Err(Error::ScaleGuard(_))
        ));
    }

    #[test]
    fn cross_check_passes_on_sound_families() {
        for (p, n, k) in [(2u32, 5usize, 3usize), (4, 3, 2), (2, 4, 2), (2, 3, 3), (3, 2, 2)] {
            let spec = CycleSpec::new(p, n, k, None).unwrap();
            let report = cross_check(&spec).unwrap();
            assert!(report.ok, "p={p} n={n} k={k}: {report:?}");
            assert_eq!(report.loopless_matches, Some(true));
        }
    }

    #[test]
    fn cross_check_reports_the_odd_alphabet_seams_honestly() {
        let spec = CycleSpec::new(3, 3, 2, Some(Variant::Nary)).unwrap();
        let report = cross_check(&spec).unwrap();
        // Both engines reproduce the builder and the count is right, but the
        // adjacency check finds the seam defects at every base wraparound.
        assert!(report.cat_matches);
        assert_eq!(report.loopless_matches, Some(true));
        assert!(report.count_matches);
        assert!(!report.verification.ok);
        assert!(!report.ok);
        assert_eq!(report.verification.violations.len(), 3);
    }
}
