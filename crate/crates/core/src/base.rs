//! The distance-1 base sequences the recursive constructions bottom out at,
//! materialized as tables or driven by constant-amortized-time steppers.
//!
//! Three orders share one word set per (p, n):
//!
//! * Forward: the classical reflected code in its natural order, binary or
//!   p-ary (cf. Knuth, TAOCP 7.2.1.1).
//! * Reversed: the binary reflected cycle traversed backwards starting from
//!   the all-zero word.
//! * Shifted: the binary reflected cycle rotated one step, starting from the
//!   word 10...0.
//!
//! A fact that matters downstream: the reflected code is cyclic (last and
//! first term differ in one position) exactly when p is even. For odd p the
//! wraparound differs in all n positions, and every construction stacked on
//! top of the table inherits that seam.

use crate::arith::checked_pow;
use crate::error::{Error, Result};
use crate::params::MAX_MATERIALIZED_WORDS;
use crate::word::{Alphabet, Letter, Word};

/// Which of the three base orders a table or stepper follows.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BaseKind {
    Forward,
    Reversed,
    Shifted,
}

/// The reflected code over an alphabet of any size, most significant letter
/// varying slowest. Block q of the top-level split is the (n-1)-table
/// prepended with q, reversed when q is odd.
pub fn reflected(alphabet: Alphabet, n: usize) -> Result<Vec<Word>> {
    let p = alphabet.size();
    let len = checked_pow(p, n as u32)?;
    if len > MAX_MATERIALIZED_WORDS {
        return Err(Error::ScaleGuard(format!(
            "table of {len} words exceeds the materialization cap of {MAX_MATERIALIZED_WORDS}"
        )));
    }
    let mut seq: Vec<Vec<Letter>> = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(seq.len() * p as usize);
        for q in 0..p {
            let prepend = |w: &Vec<Letter>| {
                let mut v = Vec::with_capacity(w.len() + 1);
                v.push(q as Letter);
                v.extend_from_slice(w);
                v
            };
            if q % 2 == 0 {
                next.extend(seq.iter().map(prepend));
            } else {
                next.extend(seq.iter().rev().map(prepend));
            }
        }
        seq = next;
    }
    Ok(seq.into_iter().map(Word::from_letters).collect())
}

/// The classical binary reflected code.
pub fn reflected_binary(n: usize) -> Result<Vec<Word>> {
    reflected(Alphabet::new(2)?, n)
}

fn require_binary_pair_len(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::Param(format!(
            "reversed/shifted base tables need length >= 2, got {n}"
        )));
    }
    Ok(())
}

/// The binary reflected cycle walked backwards from the all-zero word:
/// term 0 is g[0], term i is g[2^n - i].
pub fn reversed_base(n: usize) -> Result<Vec<Word>> {
    require_binary_pair_len(n)?;
    let g = reflected_binary(n)?;
    let len = g.len();
    let mut out = Vec::with_capacity(len);
    out.push(g[0].clone());
    for i in 1..len {
        out.push(g[len - i].clone());
    }
    Ok(out)
}

/// The binary reflected cycle rotated one step: term 0 is g[2^n - 1], term i
/// is g[i - 1].
pub fn shifted_base(n: usize) -> Result<Vec<Word>> {
    require_binary_pair_len(n)?;
    let g = reflected_binary(n)?;
    let len = g.len();
    let mut out = Vec::with_capacity(len);
    out.push(g[len - 1].clone());
    for i in 1..len {
        out.push(g[i - 1].clone());
    }
    Ok(out)
}

/// A materialized base sequence with its parameters.
#[derive(Clone, Debug)]
pub struct BaseTable {
    pub kind: BaseKind,
    pub alphabet: Alphabet,
    pub word_len: usize,
    pub terms: Vec<Word>,
}

impl BaseTable {
    pub fn generate(kind: BaseKind, alphabet: Alphabet, n: usize) -> Result<BaseTable> {
        let terms = match kind {
            BaseKind::Forward => reflected(alphabet, n)?,
            BaseKind::Reversed | BaseKind::Shifted => {
                if !alphabet.is_binary() {
                    return Err(Error::Param(
                        "reversed/shifted base tables are binary only".into(),
                    ));
                }
                match kind {
                    BaseKind::Reversed => reversed_base(n)?,
                    _ => shifted_base(n)?,
                }
            }
        };
        Ok(BaseTable { kind, alphabet, word_len: n, terms })
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Digit-and-direction state for stepping the reflected order without
/// consulting a table. Digits are stored least significant first; dirs[j] is
/// the direction digit j moves next. A step scans from digit 0 upward,
/// flipping the direction of every digit that would leave the range and
/// moving the first one that stays inside: the classical reflected successor.
///
/// `ops` accumulates the instrumented work: one per scan visit, one per digit
/// or direction written by an explicit jump.
#[derive(Clone, Debug)]
pub(crate) struct ReflectedState {
    p: i16,
    digits: Vec<Letter>,
    dirs: Vec<i8>,
    ops: u64,
}

impl ReflectedState {
    pub(crate) fn zeros(alphabet: Alphabet, n: usize) -> ReflectedState {
        ReflectedState {
            p: alphabet.size() as i16,
            digits: vec![0; n],
            dirs: vec![1; n],
            ops: 0,
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.digits.len()
    }

    /// Advance one index. Must not be called at the last index of the table;
    /// the wrap there is an explicit jump chosen by the caller.
    pub(crate) fn step_forward(&mut self) {
        for j in 0..self.digits.len() {
            self.ops += 1;
            let v = self.digits[j] as i16 + self.dirs[j] as i16;
            if (0..self.p).contains(&v) {
                self.digits[j] = v as Letter;
                return;
            }
            self.dirs[j] = -self.dirs[j];
        }
        panic!("reflected stepper advanced past the end of its table");
    }

    /// Retreat one index. Must not be called at index 0.
    pub(crate) fn step_backward(&mut self) {
        for j in 0..self.digits.len() {
            self.ops += 1;
            let v = self.digits[j] as i16 - self.dirs[j] as i16;
            if (0..self.p).contains(&v) {
                self.digits[j] = v as Letter;
                return;
            }
            self.dirs[j] = -self.dirs[j];
        }
        panic!("reflected stepper retreated past the start of its table");
    }

    /// Jump to index 0: all digits 0, all directions up.
    pub(crate) fn jump_to_zeros(&mut self) {
        for d in &mut self.digits {
            *d = 0;
        }
        for d in &mut self.dirs {
            *d = 1;
        }
        self.ops += 2 * self.digits.len() as u64;
    }

    /// Jump to the last index of a binary table: digits 10...0 (most
    /// significant first), directions all down except the top digit.
    pub(crate) fn jump_to_binary_last(&mut self) {
        debug_assert_eq!(self.p, 2);
        let n = self.digits.len();
        for d in &mut self.digits {
            *d = 0;
        }
        self.digits[n - 1] = 1;
        for d in &mut self.dirs {
            *d = -1;
        }
        self.dirs[n - 1] = 1;
        self.ops += 2 * n as u64;
    }

    /// Write the current word most significant letter first.
    pub(crate) fn write_into(&self, out: &mut [Letter]) {
        let n = self.digits.len();
        debug_assert_eq!(out.len(), n);
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = self.digits[n - 1 - i];
        }
    }

    pub(crate) fn digits_lsd_first(&self) -> &[Letter] {
        &self.digits
    }

    pub(crate) fn take_ops(&mut self) -> u64 {
        std::mem::take(&mut self.ops)
    }
}

/// Cyclic cursor over a base sequence, stepping in constant amortized time
/// instead of holding the table. Equality with the materialized tables is
/// enforced by test for every kind.
#[derive(Clone, Debug)]
pub struct BaseStepper {
    kind: BaseKind,
    state: ReflectedState,
    index: u128,
    len: u128,
}

impl BaseStepper {
    pub fn new(kind: BaseKind, alphabet: Alphabet, n: usize) -> Result<BaseStepper> {
        if matches!(kind, BaseKind::Reversed | BaseKind::Shifted) {
            if !alphabet.is_binary() {
                return Err(Error::Param("reversed/shifted base steppers are binary only".into()));
            }
            require_binary_pair_len(n)?;
        }
        let len = checked_pow(alphabet.size(), n as u32)?;
        let mut state = ReflectedState::zeros(alphabet, n);
        if matches!(kind, BaseKind::Shifted) {
            // Term 0 of the shifted order is the last word of the underlying
            // reflected table.
            state.jump_to_binary_last();
        }
        state.take_ops();
        Ok(BaseStepper { kind, state, index: 0, len })
    }

    pub fn len(&self) -> u128 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn index(&self) -> u128 {
        self.index
    }

    /// Move to the next term, wrapping cyclically.
    pub fn advance(&mut self) {
        match self.kind {
            BaseKind::Forward => {
                if self.index + 1 == self.len {
                    self.state.jump_to_zeros();
                } else {
                    self.state.step_forward();
                }
            }
            BaseKind::Reversed => {
                // Term 0 sits at underlying index 0, term i at 2^n - i; every
                // move after the first is a backward step, including the wrap
                // from underlying index 1 back to 0.
                if self.index == 0 {
                    self.state.jump_to_binary_last();
                } else {
                    self.state.step_backward();
                }
            }
            BaseKind::Shifted => {
                // Term 0 sits at the last underlying index, term i at i - 1;
                // every move after the first is a forward step, including the
                // wrap onto the last underlying index.
                if self.index == 0 {
                    self.state.jump_to_zeros();
                } else {
                    self.state.step_forward();
                }
            }
        }
        self.index = (self.index + 1) % self.len;
    }

    pub fn write_current(&self, out: &mut [Letter]) {
        self.state.write_into(out);
    }

    pub fn current_word(&self) -> Word {
        let mut out = vec![0; self.state.len()];
        self.state.write_into(&mut out);
        Word::from_letters(out)
    }

    /// Instrumented work since the last call: scan visits plus jump writes.
    pub fn take_ops(&mut self) -> u64 {
        self.state.take_ops()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::hamming_distance;

    fn render(seq: &[Word]) -> Vec<String> {
        seq.iter().map(Word::render).collect()
    }

    fn a(p: u32) -> Alphabet {
        Alphabet::new(p).unwrap()
    }

    #[test]
    fn binary_reflected_golden() {
        let trivial = reflected_binary(0).unwrap();
        assert_eq!(trivial.len(), 1);
        assert!(trivial[0].is_empty());
        assert_eq!(render(&reflected_binary(2).unwrap()), ["00", "01", "11", "10"]);
        assert_eq!(
            render(&reflected_binary(3).unwrap()),
            ["000", "001", "011", "010", "110", "111", "101", "100"]
        );
    }

    #[test]
    fn ternary_reflected_golden() {
        assert_eq!(
            render(&reflected(a(3), 3).unwrap()),
            [
                "000", "001", "002", "012", "011", "010", "020", "021", "022", //
                "122", "121", "120", "110", "111", "112", "102", "101", "100", //
                "200", "201", "202", "212", "211", "210", "220", "221", "222",
            ]
        );
    }

    #[test]
    fn reversed_and_shifted_golden() {
        assert_eq!(render(&reversed_base(2).unwrap()), ["00", "10", "11", "01"]);
        assert_eq!(render(&shifted_base(2).unwrap()), ["10", "00", "01", "11"]);
        assert_eq!(
            render(&reversed_base(3).unwrap()),
            ["000", "100", "101", "111", "110", "010", "011", "001"]
        );
        assert_eq!(
            render(&shifted_base(3).unwrap()),
            ["100", "000", "001", "011", "010", "110", "111", "101"]
        );
    }

    #[test]
    fn endpoint_identities() {
        for n in 2..=10usize {
            let g = reflected_binary(n).unwrap();
            let len = g.len();
            assert_eq!(g[0], Word::zeros(n));
            assert_eq!(g[1], Word::zeros(n).with_letter_at_pos(1, 1));
            assert_eq!(g[len - 1], Word::zeros(n).with_letter_at_pos(n, 1));
            assert_eq!(
                g[len - 2],
                Word::zeros(n).with_letter_at_pos(n, 1).with_letter_at_pos(1, 1)
            );
        }
        for n in 2..=8usize {
            let gamma = reversed_base(n).unwrap();
            let rho = shifted_base(n).unwrap();
            let len = gamma.len();
            assert_eq!(gamma[0], Word::zeros(n));
            assert_eq!(gamma[len - 1], Word::zeros(n).with_letter_at_pos(1, 1));
            assert_eq!(rho[0], Word::zeros(n).with_letter_at_pos(n, 1));
            assert_eq!(
                rho[len - 1],
                Word::zeros(n).with_letter_at_pos(n, 1).with_letter_at_pos(1, 1)
            );
        }
    }

    #[test]
    fn reversed_and_shifted_are_permutations_of_forward() {
        for n in 2..=6usize {
            let mut g = reflected_binary(n).unwrap();
            let mut gamma = reversed_base(n).unwrap();
            let mut rho = shifted_base(n).unwrap();
            g.sort();
            gamma.sort();
            rho.sort();
            assert_eq!(g, gamma);
            assert_eq!(g, rho);
        }
    }

    #[test]
    fn all_tables_have_unit_adjacent_distance() {
        let cases: &[(BaseKind, u32, usize)] = &[
            (BaseKind::Forward, 2, 5),
            (BaseKind::Forward, 3, 4),
            (BaseKind::Forward, 4, 3),
            (BaseKind::Forward, 5, 3),
            (BaseKind::Reversed, 2, 5),
            (BaseKind::Shifted, 2, 5),
        ];
        for &(kind, p, n) in cases {
            let t = BaseTable::generate(kind, a(p), n).unwrap();
            for i in 1..t.len() {
                assert_eq!(
                    hamming_distance(&t.terms[i - 1], &t.terms[i]).unwrap(),
                    1,
                    "{kind:?} p={p} n={n} step {i}"
                );
            }
        }
    }

    #[test]
    fn wraparound_is_unit_exactly_for_even_alphabets() {
        // The reflected order closes into a cycle only over even alphabets;
        // over odd ones the seam spans every position. The reversed and
        // shifted binary orders always close.
        for (kind, p, n, expect) in [
            (BaseKind::Forward, 2, 5, 1),
            (BaseKind::Forward, 4, 3, 1),
            (BaseKind::Forward, 3, 4, 4),
            (BaseKind::Forward, 5, 3, 3),
            (BaseKind::Reversed, 2, 5, 1),
            (BaseKind::Shifted, 2, 5, 1),
        ] {
            let t = BaseTable::generate(kind, a(p), n).unwrap();
            let wrap = hamming_distance(&t.terms[t.len() - 1], &t.terms[0]).unwrap();
            assert_eq!(wrap, expect, "{kind:?} p={p} n={n}");
        }
    }

    #[test]
    fn steppers_reproduce_their_tables_cyclically() {
        let cases: &[(BaseKind, u32, usize)] = &[
            (BaseKind::Forward, 2, 1),
            (BaseKind::Forward, 2, 6),
            (BaseKind::Forward, 3, 4),
            (BaseKind::Forward, 4, 3),
            (BaseKind::Forward, 5, 3),
            (BaseKind::Reversed, 2, 2),
            (BaseKind::Reversed, 2, 6),
            (BaseKind::Shifted, 2, 2),
            (BaseKind::Shifted, 2, 6),
        ];
        for &(kind, p, n) in cases {
            let table = BaseTable::generate(kind, a(p), n).unwrap();
            let mut stepper = BaseStepper::new(kind, a(p), n).unwrap();
            let len = table.len();
            for i in 0..2 * len {
                assert_eq!(
                    stepper.current_word(),
                    table.terms[i % len],
                    "{kind:?} p={p} n={n} index {i}"
                );
                stepper.advance();
            }
        }
    }

    #[test]
    fn stepping_stays_constant_amortized() {
        for &(kind, p, n) in &[
            (BaseKind::Forward, 3, 6),
            (BaseKind::Forward, 2, 8),
            (BaseKind::Reversed, 2, 8),
            (BaseKind::Shifted, 2, 8),
        ] {
            let mut stepper = BaseStepper::new(kind, a(p), n).unwrap();
            let len = stepper.len() as u64;
            let mut total = 0;
            for _ in 0..len {
                stepper.advance();
                total += stepper.take_ops();
            }
            // One full cyclic traversal averages under 3 operations per step.
            assert!(total <= 3 * len, "{kind:?} p={p} n={n}: {total} ops over {len} steps");
        }
    }

    #[test]
    fn forward_digit_change_totals_stay_within_the_geometric_bound() {
        for (p, n) in [(2u32, 6usize), (3, 5), (4, 4)] {
            let t = reflected(a(p), n).unwrap();
            let total: usize = (1..t.len())
                .map(|i| hamming_distance(&t[i - 1], &t[i]).unwrap())
                .sum();
            let bound: usize = (1..=n).map(|j| (p as usize).pow(j as u32)).sum();
            assert!(total <= bound, "p={p} n={n}: {total} changes vs bound {bound}");
        }
    }

    #[test]
    fn oversized_tables_are_refused() {
        assert!(matches!(reflected(a(3), 20), Err(Error::ScaleGuard(_))));
        assert!(matches!(reversed_base(1), Err(Error::Param(_))));
        assert!(matches!(
            BaseTable::generate(BaseKind::Reversed, a(3), 3),
            Err(Error::Param(_))
        ));
    }
}
