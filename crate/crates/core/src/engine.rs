//! Streaming generators. They emit exactly the sequences the recursive
//! builders materialize, but hold only O(n) mutable state: a stack of prefix
//! cells that each do constant work per step, over a base cursor that is
//! either a precomputed table (loopless: fixed work every step) or a
//! direction-flag stepper (constant amortized work per step).
//!
//! Per step, a prefix cell either rotates in place or, when the step index
//! hits the cell's period, takes a boundary transition. For the paired binary
//! family the boundary transitions walk an 8-state cycle shared by every
//! column; its two tables are exported for inspection and are pinned
//! exhaustively by the acceptance suite.

use crate::base::{reversed_base, shifted_base, BaseKind, BaseStepper, ReflectedState};
use crate::error::{Error, Result};
use crate::params::{CycleSpec, Variant, MAX_MATERIALIZED_WORDS, MAX_STREAM_WORDS};
use crate::word::{Alphabet, Letter, Parity, Word};

/// Above this many precomputed base-table entries, loopless initialization
/// refuses and the caller should fall back to the CAT strategy.
pub const DEFAULT_PREPROCESS_THRESHOLD: u64 = 1 << 20;

/// How the base component is advanced.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Strategy {
    /// Precompute the base table(s); every step costs the same fixed number
    /// of operations.
    Loopless,
    /// Step the base with direction flags; constant amortized cost, no
    /// preprocessing.
    Cat,
}

/// Stop after one full period, or wrap and continue forever.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RunMode {
    Bounded,
    Cyclic,
}

#[derive(Clone, Copy, Debug)]
pub struct GeneratorConfig {
    pub strategy: Strategy,
    pub run_mode: RunMode,
    pub preprocess_threshold: u64,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig {
            strategy: Strategy::Loopless,
            run_mode: RunMode::Bounded,
            preprocess_threshold: DEFAULT_PREPROCESS_THRESHOLD,
        }
    }
}

/// The 8-state cycle every paired column walks through its boundary
/// transitions: (row, prefix) pairs in cyclic order.
pub const COLUMN_STATE_CYCLE: [(u8, [Letter; 2]); 8] = [
    (0, [0, 0]),
    (1, [0, 1]),
    (2, [1, 1]),
    (3, [1, 0]),
    (4, [1, 0]),
    (5, [1, 1]),
    (6, [0, 1]),
    (7, [0, 0]),
];

/// Successor within the 8-state cycle, or None if the pair is not on it.
pub fn state_cycle_successor(row: u8, prefix: [Letter; 2]) -> Option<(u8, [Letter; 2])> {
    COLUMN_STATE_CYCLE
        .iter()
        .position(|&(q, c)| q == row && c == prefix)
        .map(|i| COLUMN_STATE_CYCLE[(i + 1) % COLUMN_STATE_CYCLE.len()])
}

/// Boundary transition applied to a paired column exactly when the step index
/// is divisible by the column's period. Its domain is precisely the 8 states
/// a column can occupy at a boundary: each cycle state with its prefix
/// complemented, because the prefix has been complemented an odd number of
/// times since the last boundary.
pub fn boundary_transition(row: u8, prefix: [Letter; 2]) -> Option<(u8, [Letter; 2])> {
    match (row, prefix) {
        (0, [1, 1]) => Some((1, [0, 1])),
        (1, [1, 0]) => Some((2, [1, 1])),
        (2, [0, 0]) => Some((3, [1, 0])),
        (3, [0, 1]) => Some((4, [1, 0])),
        (4, [0, 1]) => Some((5, [1, 1])),
        (5, [0, 0]) => Some((6, [0, 1])),
        (6, [1, 0]) => Some((7, [0, 0])),
        (7, [1, 1]) => Some((0, [0, 0])),
        _ => None,
    }
}

/// Streaming generator for any validated spec.
#[derive(Debug)]
pub struct Generator {
    spec: CycleSpec,
    strategy: Strategy,
    run_mode: RunMode,
    len: u128,
    index: u128,
    last_cost: u64,
    core: Core,
}

#[derive(Debug)]
enum Core {
    Nary(NaryCore),
    Odd(OddCore),
    Even { lead: Letter, start: Letter, inner: OddCore },
    Pair { ones: bool },
}

impl Generator {
    /// Bounded generator with the default preprocessing threshold.
    pub fn new(spec: &CycleSpec, strategy: Strategy) -> Result<Generator> {
        Generator::with_config(
            spec,
            &GeneratorConfig { strategy, ..GeneratorConfig::default() },
        )
    }

    pub fn with_config(spec: &CycleSpec, cfg: &GeneratorConfig) -> Result<Generator> {
        let len = spec.expected_len();
        if len > MAX_STREAM_WORDS {
            return Err(Error::ScaleGuard(format!(
                "run of {len} words exceeds the streaming cap of {MAX_STREAM_WORDS}"
            )));
        }
        let core = match spec.variant() {
            Variant::Nary => Core::Nary(NaryCore::init(spec, cfg)?),
            Variant::BinaryOdd => Core::Odd(OddCore::init(
                spec.word_len(),
                spec.distance(),
                false,
                cfg,
            )?),
            Variant::BinaryOddCompanion => Core::Odd(OddCore::init(
                spec.word_len(),
                spec.distance(),
                true,
                cfg,
            )?),
            Variant::BinaryEven(parity) => {
                let start = match parity {
                    Parity::Even => 0,
                    Parity::Odd => 1,
                };
                let inner = OddCore::init(spec.word_len() - 1, spec.distance() - 1, false, cfg)?;
                Core::Even { lead: start, start, inner }
            }
            Variant::ComplementPair => Core::Pair { ones: false },
        };
        Ok(Generator {
            spec: *spec,
            strategy: cfg.strategy,
            run_mode: cfg.run_mode,
            len,
            index: 0,
            last_cost: 0,
            core,
        })
    }

    pub fn spec(&self) -> &CycleSpec {
        &self.spec
    }

    pub fn strategy(&self) -> Strategy {
        self.strategy
    }

    /// Terms in one full period.
    pub fn len(&self) -> u128 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Index of the current term within the period.
    pub fn index(&self) -> u128 {
        self.index
    }

    /// Instrumented operations performed by the most recent advance: prefix
    /// cell writes plus base cursor work. 0 before the first advance.
    pub fn last_step_cost(&self) -> u64 {
        self.last_cost
    }

    /// Write the current term into `out` (resized to fit).
    pub fn current_into(&self, out: &mut Vec<Letter>) {
        out.resize(self.spec.word_len(), 0);
        match &self.core {
            Core::Nary(c) => c.render(out),
            Core::Odd(c) => c.render(out),
            Core::Even { lead, inner, .. } => {
                out[0] = *lead;
                inner.render(&mut out[1..]);
            }
            Core::Pair { ones, .. } => {
                out.fill(if *ones { 1 } else { 0 });
            }
        }
    }

    pub fn current(&self) -> Word {
        let mut out = Vec::new();
        self.current_into(&mut out);
        Word::from_letters(out)
    }

    /// Move to the next term. In bounded mode the move past the last term
    /// fails with EndOfSequence and leaves the state untouched; in cyclic
    /// mode it resets to term 0 (the wraparound edge itself is what the
    /// verifier's wrap clause checks).
    pub fn advance(&mut self) -> Result<()> {
        if self.index + 1 == self.len {
            match self.run_mode {
                RunMode::Bounded => return Err(Error::EndOfSequence),
                RunMode::Cyclic => {
                    self.last_cost = self.reset();
                    self.index = 0;
                    return Ok(());
                }
            }
        }
        let mut cost = 0u64;
        match &mut self.core {
            Core::Nary(c) => c.advance(&mut cost),
            Core::Odd(c) => c.advance(&mut cost),
            Core::Even { lead, inner, .. } => {
                *lead ^= 1;
                cost += 1;
                inner.advance(&mut cost);
            }
            Core::Pair { ones, .. } => {
                *ones = !*ones;
                cost += 1;
            }
        }
        self.index += 1;
        self.last_cost = cost;
        Ok(())
    }

    fn reset(&mut self) -> u64 {
        match &mut self.core {
            Core::Nary(c) => c.reset(),
            Core::Odd(c) => c.reset(),
            Core::Even { lead, start, inner } => {
                *lead = *start;
                1 + inner.reset()
            }
            Core::Pair { ones, .. } => {
                *ones = false;
                1
            }
        }
    }

    /// Consume into an iterator of words, starting with the current term.
    /// Infinite in cyclic mode.
    pub fn into_words(self) -> Words {
        Words { generator: self, pending_first: true }
    }
}

/// Iterator adapter over a generator.
pub struct Words {
    generator: Generator,
    pending_first: bool,
}

impl Iterator for Words {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        if self.pending_first {
            self.pending_first = false;
            return Some(self.generator.current());
        }
        match self.generator.advance() {
            Ok(()) => Some(self.generator.current()),
            Err(_) => None,
        }
    }
}

/// One prefix cell of the single-column family: a letter that rotates once
/// per step and twice when the step index hits its period.
#[derive(Debug)]
struct NaryCell {
    value: Letter,
    period: u128,
    countdown: u128,
}

#[derive(Debug)]
struct NaryCore {
    alphabet: Alphabet,
    cells: Vec<NaryCell>,
    base: NaryBase,
    base_len: usize,
}

#[derive(Debug)]
enum NaryBase {
    Table { terms: Vec<Word>, idx: usize },
    Stepper(BaseStepper),
}

impl NaryCore {
    fn init(spec: &CycleSpec, cfg: &GeneratorConfig) -> Result<NaryCore> {
        let alphabet = spec.alphabet();
        let p = alphabet.size() as u128;
        let (n, k) = (spec.word_len(), spec.distance());
        let n0 = spec.base_len();
        // Cells for positions n down to n0+1, outermost first; the cell at
        // position j advances specially with period p^(j-1).
        let mut cells = Vec::with_capacity(k - 1);
        let mut period = p.pow(n as u32 - 1);
        for _ in 0..k - 1 {
            cells.push(NaryCell { value: 0, period, countdown: period });
            period /= p;
        }
        let base = match cfg.strategy {
            Strategy::Loopless => {
                let entries = p.pow(n0 as u32);
                if entries > cfg.preprocess_threshold as u128
                    || entries > MAX_MATERIALIZED_WORDS
                {
                    return Err(Error::ScaleGuard(format!(
                        "loopless preprocessing needs a {entries}-entry table, over the limit of {}; use the CAT strategy",
                        cfg.preprocess_threshold
                    )));
                }
                NaryBase::Table { terms: crate::base::reflected(alphabet, n0)?, idx: 0 }
            }
            Strategy::Cat => {
                NaryBase::Stepper(BaseStepper::new(BaseKind::Forward, alphabet, n0)?)
            }
        };
        Ok(NaryCore { alphabet, cells, base, base_len: n0 })
    }

    fn advance(&mut self, cost: &mut u64) {
        for cell in &mut self.cells {
            cell.countdown -= 1;
            if cell.countdown == 0 {
                cell.value = self.alphabet.rotate(cell.value, 2);
                cell.countdown = cell.period;
            } else {
                cell.value = self.alphabet.rotate(cell.value, 1);
            }
            *cost += 1;
        }
        match &mut self.base {
            NaryBase::Table { terms, idx } => {
                // The base successor is cyclic: it wraps from the last table
                // entry straight back to the first.
                *idx = (*idx + 1) % terms.len();
                *cost += 1;
            }
            NaryBase::Stepper(s) => {
                s.advance();
                *cost += s.take_ops();
            }
        }
    }

    fn render(&self, out: &mut [Letter]) {
        for (t, cell) in self.cells.iter().enumerate() {
            out[t] = cell.value;
        }
        let tail = &mut out[self.cells.len()..];
        match &self.base {
            NaryBase::Table { terms, idx } => {
                tail.copy_from_slice(terms[*idx].letters());
            }
            NaryBase::Stepper(s) => s.write_current(tail),
        }
    }

    fn reset(&mut self) -> u64 {
        let mut cost = 0;
        for cell in &mut self.cells {
            cell.value = 0;
            cell.countdown = cell.period;
            cost += 1;
        }
        match &mut self.base {
            NaryBase::Table { idx, .. } => {
                *idx = 0;
                cost += 1;
            }
            NaryBase::Stepper(s) => {
                *s = BaseStepper::new(BaseKind::Forward, self.alphabet, self.base_len)
                    .expect("re-creating a stepper that was created before");
                cost += 2 * self.base_len as u64;
            }
        }
        cost
    }
}

/// One paired column: a state row plus a 2-letter prefix. The prefix is
/// complemented every step; when the step index hits the period the column
/// takes its boundary transition instead.
#[derive(Debug)]
struct PairColumn {
    row: u8,
    prefix: [Letter; 2],
    period: u128,
    countdown: u128,
}

#[derive(Debug)]
struct OddCore {
    columns: Vec<PairColumn>,
    base: PairBase,
    half: u128,
    complement_lead: bool,
}

#[derive(Debug)]
enum PairBase {
    Tables { lead: Vec<Word>, shifted: Vec<Word>, mu: u128 },
    Stepper(PairStepper),
}

impl OddCore {
    fn init(n: usize, k: usize, complement_lead: bool, cfg: &GeneratorConfig) -> Result<OddCore> {
        let spec = CycleSpec::new(2, n, k, Some(Variant::BinaryOdd))?;
        let n0 = spec.base_len();
        let half = 1u128 << n0;
        // Columns at positions n, n-2, ..., n0+2, outermost first; the column
        // ending at position j has period 2^(j-2).
        let mut columns = Vec::with_capacity((k - 1) / 2);
        let mut period = 1u128 << (n - 2);
        for _ in 0..(k - 1) / 2 {
            columns.push(PairColumn { row: 0, prefix: [0, 0], period, countdown: period });
            period /= 4;
        }
        let base = match cfg.strategy {
            Strategy::Loopless => {
                if half > cfg.preprocess_threshold as u128 || half > MAX_MATERIALIZED_WORDS {
                    return Err(Error::ScaleGuard(format!(
                        "loopless preprocessing needs two {half}-entry tables, over the limit of {}; use the CAT strategy",
                        cfg.preprocess_threshold
                    )));
                }
                PairBase::Tables { lead: reversed_base(n0)?, shifted: shifted_base(n0)?, mu: 0 }
            }
            Strategy::Cat => PairBase::Stepper(PairStepper::new(n0)),
        };
        Ok(OddCore { columns, base, half, complement_lead })
    }

    fn advance(&mut self, cost: &mut u64) {
        for col in &mut self.columns {
            col.countdown -= 1;
            if col.countdown == 0 {
                let (row, prefix) = boundary_transition(col.row, col.prefix)
                    .expect("paired column left its boundary domain");
                col.row = row;
                col.prefix = prefix;
                col.countdown = col.period;
            } else {
                col.prefix = [col.prefix[0] ^ 1, col.prefix[1] ^ 1];
            }
            *cost += 1;
        }
        match &mut self.base {
            PairBase::Tables { mu, .. } => {
                *mu = (*mu + 1) % (2 * self.half);
                *cost += 1;
            }
            PairBase::Stepper(s) => {
                s.advance();
                *cost += s.take_ops();
            }
        }
    }

    fn render(&self, out: &mut [Letter]) {
        for (t, col) in self.columns.iter().enumerate() {
            out[2 * t] = col.prefix[0];
            out[2 * t + 1] = col.prefix[1];
        }
        let tail = &mut out[2 * self.columns.len()..];
        match &self.base {
            PairBase::Tables { lead, shifted, mu } => {
                // The first half of the window reads the lead table, the
                // second half the shifted one.
                let (table, idx) = if *mu < self.half {
                    (lead, *mu as usize)
                } else {
                    (shifted, (*mu - self.half) as usize)
                };
                tail.copy_from_slice(table[idx].letters());
            }
            PairBase::Stepper(s) => s.write_current(tail),
        }
        if self.complement_lead {
            out[0] ^= 1;
        }
    }

    fn reset(&mut self) -> u64 {
        let mut cost = 0;
        for col in &mut self.columns {
            col.row = 0;
            col.prefix = [0, 0];
            col.countdown = col.period;
            cost += 1;
        }
        match &mut self.base {
            PairBase::Tables { mu, .. } => {
                *mu = 0;
                cost += 1;
            }
            PairBase::Stepper(s) => {
                let n0 = s.state.digits_lsd_first().len();
                *s = PairStepper::new(n0);
                cost += 2 * n0 as u64;
            }
        }
        cost
    }
}

/// Constant-amortized cursor through the concatenation of the reversed and
/// shifted base orders: 2^(n0+1) steps per full window. Interior moves are
/// single reflected steps (backward through the reversed half, forward
/// through the shifted half); the four window seams are explicit jumps whose
/// endpoints and direction flags are fixed words.
#[derive(Debug)]
struct PairStepper {
    state: ReflectedState,
    mu: u128,
    half: u128,
}

impl PairStepper {
    fn new(n0: usize) -> PairStepper {
        let alphabet = Alphabet::new(2).expect("binary alphabet");
        let mut state = ReflectedState::zeros(alphabet, n0);
        state.take_ops();
        PairStepper { state, mu: 0, half: 1u128 << n0 }
    }

    fn advance(&mut self) {
        let window = 2 * self.half;
        self.mu = (self.mu + 1) % window;
        if self.mu == 0 {
            // Last shifted term (10..01) back to the all-zero lead term.
            self.state.jump_to_zeros();
        } else if self.mu == 1 {
            // Lead term 0 (0..0) to lead term 1 (10..0): the underlying
            // reflected index jumps from 0 to its maximum.
            self.state.jump_to_binary_last();
        } else if self.mu < self.half {
            self.state.step_backward();
        } else if self.mu == self.half {
            // Last lead term (0..01) to shifted term 0 (10..0).
            self.state.jump_to_binary_last();
        } else if self.mu == self.half + 1 {
            // Shifted term 0 (10..0) to shifted term 1 (0..0).
            self.state.jump_to_zeros();
        } else {
            self.state.step_forward();
        }
    }

    fn write_current(&self, out: &mut [Letter]) {
        self.state.write_into(out);
    }

    fn take_ops(&mut self) -> u64 {
        self.state.take_ops()
    }
}
