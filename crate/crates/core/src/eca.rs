//! Elementary cellular automata on finite-support rows.

use std::fmt;

use crate::error::{Error, Result};

const WORD: usize = 64;

/// A row of an elementary cellular automaton with finitely many 1 cells.
///
/// Bit `j` of the packed storage is the cell at index `offset + j`. The row is
/// kept trimmed, so either it is empty or both stored end cells are 1, and two
/// configurations are equal exactly when they agree on every cell.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Configuration {
    offset: i64,
    len: usize,
    words: Vec<u64>,
}

impl Configuration {
    /// The all-zero row.
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds a configuration from the cells `offset, offset + 1, ...`.
    pub fn from_bits<I>(offset: i64, bits: I) -> Self
    where
        I: IntoIterator<Item = bool>,
    {
        let mut words = Vec::new();
        let mut len = 0;
        for bit in bits {
            if len % WORD == 0 {
                words.push(0);
            }
            if bit {
                words[len / WORD] |= 1 << (len % WORD);
            }
            len += 1;
        }
        Self::trimmed(offset, len, words)
    }

    fn trimmed(offset: i64, len: usize, mut words: Vec<u64>) -> Self {
        let Some(last) = (0..words.len()).rev().find(|&w| words[w] != 0) else {
            return Self::empty();
        };
        let hi = last * WORD + (WORD - 1 - words[last].leading_zeros() as usize);
        debug_assert!(hi < len);
        let first = words.iter().position(|&w| w != 0).unwrap();
        let lo = first * WORD + words[first].trailing_zeros() as usize;
        words.truncate(last + 1);
        let mut out = if lo == 0 {
            words
        } else {
            shift_down(&words, lo)
        };
        let new_len = hi - lo + 1;
        out.truncate(new_len.div_ceil(WORD));
        Self {
            offset: offset + lo as i64,
            len: new_len,
            words: out,
        }
    }

    /// Index of the leftmost stored cell (0 for the empty row).
    pub fn offset(&self) -> i64 {
        self.offset
    }

    /// Number of stored cells, from the leftmost 1 to the rightmost 1.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Leftmost and rightmost 1 cells, if any.
    pub fn support(&self) -> Option<(i64, i64)> {
        (!self.is_empty()).then(|| (self.offset, self.offset + self.len as i64 - 1))
    }

    /// Value of cell `i`; cells outside the stored window are 0.
    pub fn get(&self, i: i64) -> bool {
        let j = i - self.offset;
        if j < 0 || j as usize >= self.len {
            return false;
        }
        let j = j as usize;
        self.words[j / WORD] >> (j % WORD) & 1 == 1
    }

    /// Number of 1 cells.
    pub fn count_ones(&self) -> u64 {
        self.words.iter().map(|w| u64::from(w.count_ones())).sum()
    }

    /// Stored cells from `offset` to the rightmost 1.
    pub fn bits(&self) -> Vec<bool> {
        (0..self.len)
            .map(|j| self.words[j / WORD] >> (j % WORD) & 1 == 1)
            .collect()
    }

    /// Indices of the 1 cells in increasing order.
    pub fn ones(&self) -> impl Iterator<Item = i64> + '_ {
        self.words.iter().enumerate().flat_map(move |(w, &word)| {
            let base = self.offset + (w * WORD) as i64;
            BitIter(word).map(move |b| base + b as i64)
        })
    }
}

struct BitIter(u64);

impl Iterator for BitIter {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        if self.0 == 0 {
            return None;
        }
        let b = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(b)
    }
}

impl fmt::Debug for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bits: String = self
            .bits()
            .into_iter()
            .map(|b| if b { '1' } else { '0' })
            .collect();
        write!(
            f,
            "Configuration {{ offset: {}, bits: {bits} }}",
            self.offset
        )
    }
}

/// `words` shifted towards higher bit positions by `s`, sized for `len` bits.
fn shift_up(words: &[u64], s: usize, len: usize) -> Vec<u64> {
    let mut out = vec![0u64; len.div_ceil(WORD)];
    let (ws, bs) = (s / WORD, s % WORD);
    for (w, &word) in words.iter().enumerate() {
        if w + ws < out.len() {
            out[w + ws] |= word << bs;
        }
        if bs != 0 && w + ws + 1 < out.len() {
            out[w + ws + 1] |= word >> (WORD - bs);
        }
    }
    out
}

fn shift_down(words: &[u64], s: usize) -> Vec<u64> {
    let (ws, bs) = (s / WORD, s % WORD);
    let mut out = vec![0u64; words.len().saturating_sub(ws)];
    for w in 0..out.len() {
        let mut word = words[w + ws] >> bs;
        if bs != 0 && w + ws + 1 < words.len() {
            word |= words[w + ws + 1] << (WORD - bs);
        }
        out[w] = word;
    }
    out
}

/// An elementary cellular automaton rule identified by an even Wolfram code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Rule(u8);

impl Rule {
    pub const RULE_90: Rule = Rule(90);
    pub const RULE_150: Rule = Rule(150);

    /// Rejects odd codes, whose local rule turns the quiescent background on.
    pub fn new(code: u8) -> Result<Self> {
        if code & 1 == 1 {
            Err(Error::OddCode(code))
        } else {
            Ok(Rule(code))
        }
    }

    pub fn code(self) -> u8 {
        self.0
    }

    /// Local rule applied to the neighborhood `(left, center, right)`.
    pub fn local(self, left: bool, center: bool, right: bool) -> bool {
        let idx = (u8::from(left) << 2) | (u8::from(center) << 1) | u8::from(right);
        self.0 >> idx & 1 == 1
    }

    /// One synchronous update of every cell.
    pub fn step(self, c: &Configuration) -> Configuration {
        if self == Rule::RULE_150 {
            return step_rule150(c);
        }
        if c.is_empty() {
            return Configuration::empty();
        }
        // new cell offset - 1 + j sees old stored cells j - 2, j - 1, j
        let old = |j: i64| j >= 0 && (j as usize) < c.len && c.get(c.offset + j);
        Configuration::from_bits(
            c.offset - 1,
            (0..c.len as i64 + 2).map(|j| self.local(old(j - 2), old(j - 1), old(j))),
        )
    }

    /// Iterator over the orbit `c, T c, T² c, ...`.
    pub fn orbit(self, c: Configuration) -> Orbit {
        Orbit {
            rule: self,
            next: Some(c),
        }
    }
}

/// Rows of an orbit, produced lazily.
#[derive(Clone, Debug)]
pub struct Orbit {
    rule: Rule,
    next: Option<Configuration>,
}

impl Iterator for Orbit {
    type Item = Configuration;

    fn next(&mut self) -> Option<Configuration> {
        let current = self.next.take()?;
        self.next = Some(self.rule.step(&current));
        Some(current)
    }
}

/// The configuration with a single 1 at index 0.
pub fn single_site_seed() -> Configuration {
    Configuration {
        offset: 0,
        len: 1,
        words: vec![1],
    }
}

/// Rule 150: every cell becomes the XOR of itself and its two neighbors.
pub fn step_rule150(c: &Configuration) -> Configuration {
    if c.is_empty() {
        return Configuration::empty();
    }
    let len = c.len + 2;
    let mut words = shift_up(&c.words, 2, len);
    let mid = shift_up(&c.words, 1, len);
    for ((w, m), o) in words
        .iter_mut()
        .zip(&mid)
        .zip(c.words.iter().chain(std::iter::repeat(&0)))
    {
        *w ^= m ^ o;
    }
    Configuration::trimmed(c.offset - 1, len, words)
}

/// Applies the rule with the given Wolfram code once.
pub fn step_generic(c: &Configuration, wolfram_code: u8) -> Result<Configuration> {
    Ok(Rule::new(wolfram_code)?.step(c))
}

/// Rows `0..=n` of the orbit of `c`.
pub fn evolve(c: &Configuration, n: usize, rule: Rule) -> Vec<Configuration> {
    rule.orbit(c.clone()).take(n + 1).collect()
}

/// The nonzero cells `(i, t)` of the Rule 150 orbit of the single site seed
/// for `0 <= t <= n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternSet {
    rows: Vec<Configuration>,
}

impl PatternSet {
    pub fn from_rows(rows: Vec<Configuration>) -> Self {
        Self { rows }
    }

    /// Last time step covered.
    pub fn steps(&self) -> usize {
        self.rows.len().saturating_sub(1)
    }

    pub fn rows(&self) -> &[Configuration] {
        &self.rows
    }

    pub fn contains(&self, i: i64, t: usize) -> bool {
        self.rows.get(t).is_some_and(|row| row.get(i))
    }

    /// Number of cells in the set.
    pub fn len(&self) -> u64 {
        self.rows.iter().map(Configuration::count_ones).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Cells ordered by time, then by position.
    pub fn iter(&self) -> impl Iterator<Item = (i64, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(t, row)| row.ones().map(move |i| (i, t)))
    }
}

pub fn pattern_cells(n: usize) -> PatternSet {
    PatternSet::from_rows(evolve(&single_site_seed(), n, Rule::RULE_150))
}
