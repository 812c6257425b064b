//! Finite words stored as maximal runs with arbitrary-precision counts.
//!
//! The words of the recursive construction reach lengths far beyond 64-bit
//! range after a dozen levels, so every count and position is a `BigUint`.
//! Operations never expand a word unless asked to through [`RleWord::expand`],
//! which is guarded by a materialization cap.

use std::collections::VecDeque;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Symbol = u8;
pub type Position = BigUint;

/// Default bound on the number of symbols (or runs) an operation may expand.
pub const MATERIALIZATION_CAP: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Run {
    pub symbol: Symbol,
    pub count: BigUint,
}

impl Run {
    pub fn new(symbol: Symbol, count: impl Into<BigUint>) -> Self {
        Run {
            symbol,
            count: count.into(),
        }
    }
}

/// A finite word in maximal-run normal form.
///
/// Adjacent runs always carry distinct symbols and every count is positive,
/// so two words are equal as sequences iff they are equal as values.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RleWordJson", into = "RleWordJson")]
pub struct RleWord {
    alphabet: u16,
    runs: Vec<Run>,
    len: BigUint,
}

impl RleWord {
    /// Builds a word from arbitrary runs, merging equal neighbours.
    pub fn new<I, C>(alphabet: u16, runs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Symbol, C)>,
        C: Into<BigUint>,
    {
        check_alphabet(alphabet)?;
        let mut word = RleWord::empty(alphabet);
        for (symbol, count) in runs {
            let count = count.into();
            if usize::from(symbol) >= usize::from(alphabet) {
                return Err(Error::InvalidSymbol { symbol, alphabet });
            }
            if count.is_zero() {
                return Err(Error::InvalidRun { symbol });
            }
            word.push_run(symbol, count);
        }
        Ok(word)
    }

    pub fn empty(alphabet: u16) -> Self {
        RleWord {
            alphabet,
            runs: Vec::new(),
            len: BigUint::zero(),
        }
    }

    /// A single run `symbol^count`.
    pub fn repeat(alphabet: u16, symbol: Symbol, count: impl Into<BigUint>) -> Result<Self> {
        RleWord::new(alphabet, [(symbol, count.into())])
    }

    pub fn from_symbols(alphabet: u16, symbols: &[Symbol]) -> Result<Self> {
        RleWord::new(alphabet, symbols.iter().map(|&s| (s, 1u32)))
    }

    /// Parses a string of decimal digits, one symbol per character.
    pub fn from_digits(alphabet: u16, digits: &str) -> Result<Self> {
        let symbols = digits
            .chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as Symbol)
                    .ok_or_else(|| Error::Parse(format!("not a digit: {c:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        RleWord::from_symbols(alphabet, &symbols)
    }

    /// Binary word from a string of `0`/`1` characters.
    pub fn binary(digits: &str) -> Result<Self> {
        RleWord::from_digits(2, digits)
    }

    fn push_run(&mut self, symbol: Symbol, count: BigUint) {
        self.len += &count;
        match self.runs.last_mut() {
            Some(last) if last.symbol == symbol => last.count += count,
            _ => self.runs.push(Run { symbol, count }),
        }
    }

    pub fn alphabet(&self) -> u16 {
        self.alphabet
    }

    pub fn runs(&self) -> &[Run] {
        &self.runs
    }

    pub fn len(&self) -> &BigUint {
        &self.len
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }

    pub fn first_symbol(&self) -> Option<Symbol> {
        self.runs.first().map(|r| r.symbol)
    }

    pub fn last_symbol(&self) -> Option<Symbol> {
        self.runs.last().map(|r| r.symbol)
    }

    /// Whether every symbol of the word is `symbol` (false for the empty word).
    pub fn is_uniform(&self) -> Option<Symbol> {
        match self.runs.as_slice() {
            [only] => Some(only.symbol),
            _ => None,
        }
    }

    pub fn contains_symbol(&self, symbol: Symbol) -> bool {
        self.runs.iter().any(|r| r.symbol == symbol)
    }

    pub fn concat(&self, other: &RleWord) -> Result<RleWord> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch {
                left: self.alphabet,
                right: other.alphabet,
            });
        }
        let mut out = self.clone();
        for run in &other.runs {
            out.push_run(run.symbol, run.count.clone());
        }
        Ok(out)
    }

    /// `k`-fold self concatenation.
    pub fn power(&self, k: u64) -> Result<RleWord> {
        if k == 0 {
            return Err(Error::InvalidExponent);
        }
        if let Some(symbol) = self.is_uniform() {
            return RleWord::repeat(self.alphabet, symbol, &self.len * k);
        }
        let mut out = RleWord::empty(self.alphabet);
        for _ in 0..k {
            for run in &self.runs {
                out.push_run(run.symbol, run.count.clone());
            }
        }
        Ok(out)
    }

    pub fn symbol_at(&self, position: &BigUint) -> Result<Symbol> {
        let mut start = BigUint::zero();
        for run in &self.runs {
            let end = &start + &run.count;
            if *position < end {
                return Ok(run.symbol);
            }
            start = end;
        }
        Err(Error::OutOfRange {
            position: position.clone(),
            length: self.len.clone(),
        })
    }

    /// The first `length` symbols (or the whole word if shorter).
    pub fn truncate(&self, length: &BigUint) -> RleWord {
        let mut out = RleWord::empty(self.alphabet);
        let mut remaining = length.clone();
        for run in &self.runs {
            if remaining.is_zero() {
                break;
            }
            let take = (&run.count).min(&remaining).clone();
            remaining -= &take;
            out.push_run(run.symbol, take);
        }
        out
    }

    /// Expands the word into one symbol per position, refusing when the
    /// length exceeds `cap`.
    pub fn expand(&self, cap: u64) -> Result<Vec<Symbol>> {
        let n = self.len.to_u64().filter(|&n| n <= cap).ok_or_else(|| {
            Error::MaterializationRefused {
                requested: self.len.clone(),
                cap,
            }
        })?;
        let mut out = Vec::with_capacity(n as usize);
        for run in &self.runs {
            let c = run.count.to_usize().expect("bounded by cap");
            out.extend(std::iter::repeat_n(run.symbol, c));
        }
        Ok(out)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("rle word serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl fmt::Display for RleWord {
    /// Compact notation: `1 0^20 1^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.runs.is_empty() {
            return write!(f, "ε");
        }
        for (i, run) in self.runs.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if run.count.is_one() {
                write!(f, "{}", run.symbol)?;
            } else {
                write!(f, "{}^{}", run.symbol, run.count)?;
            }
        }
        Ok(())
    }
}

fn check_alphabet(alphabet: u16) -> Result<()> {
    if (1..=256).contains(&alphabet) {
        Ok(())
    } else {
        Err(Error::InvalidAlphabet(alphabet))
    }
}

/// Wire form: `{"alphabet": 2, "runs": [["1","1"],["0","4"]]}`.
#[derive(Serialize, Deserialize)]
struct RleWordJson {
    alphabet: u16,
    runs: Vec<(String, String)>,
}

impl From<RleWord> for RleWordJson {
    fn from(w: RleWord) -> Self {
        RleWordJson {
            alphabet: w.alphabet,
            runs: w
                .runs
                .into_iter()
                .map(|r| (r.symbol.to_string(), r.count.to_str_radix(10)))
                .collect(),
        }
    }
}

impl TryFrom<RleWordJson> for RleWord {
    type Error = Error;

    fn try_from(j: RleWordJson) -> Result<Self> {
        let runs = j
            .runs
            .iter()
            .map(|(s, c)| {
                let symbol = s
                    .parse::<Symbol>()
                    .map_err(|_| Error::Parse(format!("bad symbol {s:?}")))?;
                let count = parse_decimal(c)?;
                Ok((symbol, count))
            })
            .collect::<Result<Vec<_>>>()?;
        RleWord::new(j.alphabet, runs)
    }
}

/// Parses a nonnegative decimal integer of any size.
pub fn parse_decimal(text: &str) -> Result<BigUint> {
    if text.is_empty() || !text.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Parse(format!("not a decimal integer: {text:?}")));
    }
    BigUint::parse_bytes(text.as_bytes(), 10)
        .ok_or_else(|| Error::Parse(format!("not a decimal integer: {text:?}")))
}

/// Merges adjacent equal-symbol runs of a stream and drops empty ones.
pub struct MaximalRuns<I: Iterator<Item = Run>> {
    inner: I,
    pending: Option<Run>,
}

impl<I: Iterator<Item = Run>> MaximalRuns<I> {
    pub fn new(inner: I) -> Self {
        MaximalRuns {
            inner,
            pending: None,
        }
    }
}

impl<I: Iterator<Item = Run>> Iterator for MaximalRuns<I> {
    type Item = Run;

    fn next(&mut self) -> Option<Run> {
        loop {
            match self.inner.next() {
                Some(run) if run.count.is_zero() => continue,
                Some(run) => match self.pending.as_mut() {
                    Some(p) if p.symbol == run.symbol => p.count += run.count,
                    Some(_) => return self.pending.replace(run),
                    None => self.pending = Some(run),
                },
                None => return self.pending.take(),
            }
        }
    }
}

/// Least start position `q <= horizon` at which `pattern` occurs in `text`.
///
/// `text` is read lazily and merged into maximal runs. With two or more
/// pattern runs, the first must be a suffix of a text run, interior runs must
/// match exactly and the last must be a prefix of a text run. A single-run
/// pattern is placed at the left end of the first long-enough text run.
pub fn find_first<I>(text: I, pattern: &RleWord, horizon: &BigUint) -> Result<Option<Position>>
where
    I: IntoIterator<Item = Run>,
{
    let prun = pattern.runs();
    if prun.is_empty() {
        return Err(Error::InvalidPattern);
    }
    let mut start = BigUint::zero();
    let mut runs = MaximalRuns::new(text.into_iter());

    if let [only] = prun {
        for run in runs {
            if start > *horizon {
                return Ok(None);
            }
            if run.symbol == only.symbol && run.count >= only.count {
                return Ok(Some(start));
            }
            start += run.count;
        }
        return Ok(None);
    }

    let r = prun.len();
    // Window of the last `r` text runs with their start positions.
    let mut window: VecDeque<(BigUint, Run)> = VecDeque::with_capacity(r);
    for run in runs.by_ref() {
        let run_start = start.clone();
        start += &run.count;
        window.push_back((run_start, run));
        if window.len() > r {
            window.pop_front();
        }
        if window.len() < r {
            continue;
        }
        let (first_start, first) = &window[0];
        // Occurrence would begin here; it only grows as the window slides.
        let first_end = first_start + &first.count;
        if first.count >= prun[0].count {
            let q = &first_end - &prun[0].count;
            if q > *horizon {
                return Ok(None);
            }
            if window_matches(&window, prun) {
                return Ok(Some(q));
            }
        } else if first_start > horizon {
            return Ok(None);
        }
    }
    Ok(None)
}

fn window_matches(window: &VecDeque<(BigUint, Run)>, prun: &[Run]) -> bool {
    let r = prun.len();
    window.iter().zip(prun).enumerate().all(|(i, ((_, t), p))| {
        t.symbol == p.symbol
            && if i == 0 || i == r - 1 {
                t.count >= p.count
            } else {
                t.count == p.count
            }
    })
}

/// Iterator over the runs of a finite word.
pub fn word_runs(word: &RleWord) -> impl Iterator<Item = Run> + '_ {
    word.runs().iter().cloned()
}
