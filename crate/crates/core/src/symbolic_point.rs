//! Lazily addressable points of a one-sided shift space.
//!
//! A point is a generator (a pure position resolver) plus an accumulated
//! shift offset. Nothing is ever iterated from the start of the sequence:
//! every query resolves its position structurally, so positions far beyond
//! 64-bit range are as cheap as small ones.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::construction::blocks::Stream;
use crate::dynamics::examples::{FamilyMember, GrowingZeros};
use crate::error::{Error, Result};
use crate::rle_word::{parse_decimal, Position, RleWord, Run, Symbol, MATERIALIZATION_CAP};

/// Where the symbols of a point come from.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    /// `preperiod · period^∞`.
    EventuallyPeriodic { preperiod: RleWord, period: RleWord },
    /// One of the recursive construction's points (`x`, `y`, closing points).
    Construction(Stream),
    /// A member of the block-and-zeros family `W_1 0 W_2 0^2 W_3 0^3 ...`.
    FamilyMember(FamilyMember),
    /// `10 100 1000 ...`
    GrowingZeros(GrowingZeros),
}

/// A maximal run in absolute generator coordinates; `end` is `None` when the
/// run never ends.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunSpan {
    pub symbol: Symbol,
    pub start: BigUint,
    pub end: Option<BigUint>,
}

/// A maximal run of a point, in the point's own coordinates (inclusive).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunLocation {
    pub symbol: Symbol,
    pub start: Position,
    pub end: Position,
}

impl Generator {
    pub fn alphabet(&self) -> u16 {
        match self {
            Generator::EventuallyPeriodic { period, .. } => period.alphabet(),
            Generator::Construction(_) | Generator::GrowingZeros(_) => 2,
            Generator::FamilyMember(m) => m.alphabet(),
        }
    }

    fn symbol_at(&self, q: &BigUint) -> Symbol {
        match self {
            Generator::EventuallyPeriodic { preperiod, period } => {
                if q < preperiod.len() {
                    preperiod.symbol_at(q).expect("in range")
                } else {
                    let r = (q - preperiod.len()) % period.len();
                    period.symbol_at(&r).expect("in range")
                }
            }
            Generator::Construction(s) => s.symbol_at(q),
            Generator::FamilyMember(m) => m.symbol_at(q),
            Generator::GrowingZeros(g) => g.symbol_at(q),
        }
    }

    fn run_span(&self, q: &BigUint) -> RunSpan {
        match self {
            Generator::EventuallyPeriodic { preperiod, period } => {
                periodic_run_span(preperiod, period, q)
            }
            Generator::Construction(s) => s.run_span(q),
            Generator::FamilyMember(m) => m.run_span(q),
            Generator::GrowingZeros(g) => g.run_span(q),
        }
    }
}

/// Index and start of the run of `word` containing `off`.
fn locate_run(word: &RleWord, off: &BigUint) -> (usize, BigUint) {
    let mut start = BigUint::zero();
    for (i, run) in word.runs().iter().enumerate() {
        let end = &start + &run.count;
        if *off < end {
            return (i, start);
        }
        start = end;
    }
    unreachable!("offset within word")
}

fn periodic_run_span(pre: &RleWord, period: &RleWord, q: &BigUint) -> RunSpan {
    let p_len = pre.len();
    let runs = period.runs();
    let uniform = period.is_uniform();
    if q < p_len {
        let (i, s) = locate_run(pre, q);
        let run = &pre.runs()[i];
        let mut end = Some(&s + &run.count - 1u32);
        if i + 1 == pre.runs().len() {
            if uniform == Some(run.symbol) {
                end = None;
            } else if runs[0].symbol == run.symbol {
                end = end.map(|e| e + &runs[0].count);
            }
        }
        return RunSpan {
            symbol: run.symbol,
            start: s,
            end,
        };
    }
    let r = (q - p_len) % period.len();
    let base = q - &r;
    let pre_tail = pre.runs().last();
    if let Some(symbol) = uniform {
        let mut start = p_len.clone();
        if let Some(last) = pre_tail.filter(|l| l.symbol == symbol) {
            start -= &last.count;
        }
        return RunSpan {
            symbol,
            start,
            end: None,
        };
    }
    let (i, s) = locate_run(period, &r);
    let symbol = runs[i].symbol;
    let mut start = &base + s;
    let mut end = &start + &runs[i].count - 1u32;
    if i + 1 == runs.len() && runs[0].symbol == symbol {
        end += &runs[0].count;
    }
    if i == 0 {
        if base == *p_len {
            if let Some(last) = pre_tail.filter(|l| l.symbol == symbol) {
                start -= &last.count;
            }
        } else if runs[runs.len() - 1].symbol == symbol {
            start -= &runs[runs.len() - 1].count;
        }
    }
    RunSpan {
        symbol,
        start,
        end: Some(end),
    }
}

/// A point of a shift space: generator plus accumulated shift.
///
/// Equality is structural on `(generator, offset)`; two different
/// descriptions of the same sequence compare unequal. Use
/// [`SymbolicPoint::eq_up_to`] to compare prefixes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymbolicPoint {
    generator: Arc<Generator>,
    offset: BigUint,
}

impl SymbolicPoint {
    pub fn new(generator: Generator) -> Self {
        SymbolicPoint {
            generator: Arc::new(generator),
            offset: BigUint::zero(),
        }
    }

    pub fn eventually_periodic(preperiod: RleWord, period: RleWord) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::Precondition("period must be nonempty".into()));
        }
        if !preperiod.is_empty() && preperiod.alphabet() != period.alphabet() {
            return Err(Error::AlphabetMismatch {
                left: preperiod.alphabet(),
                right: period.alphabet(),
            });
        }
        let preperiod = if preperiod.is_empty() {
            RleWord::empty(period.alphabet())
        } else {
            preperiod
        };
        Ok(SymbolicPoint::new(Generator::EventuallyPeriodic {
            preperiod,
            period,
        }))
    }

    /// `symbol^∞` over a binary alphabet.
    pub fn constant(symbol: Symbol) -> Self {
        SymbolicPoint::eventually_periodic(
            RleWord::empty(2),
            RleWord::repeat(2, symbol, 1u32).expect("binary symbol"),
        )
        .expect("nonempty period")
    }

    /// Binary `prefix · period^∞` from digit strings.
    pub fn binary_periodic(prefix: &str, period: &str) -> Result<Self> {
        SymbolicPoint::eventually_periodic(RleWord::binary(prefix)?, RleWord::binary(period)?)
    }

    pub fn generator(&self) -> &Generator {
        &self.generator
    }

    pub fn offset(&self) -> &BigUint {
        &self.offset
    }

    pub fn alphabet(&self) -> u16 {
        self.generator.alphabet()
    }

    pub fn symbol_at(&self, q: &BigUint) -> Symbol {
        self.generator.symbol_at(&(&self.offset + q))
    }

    pub fn shift(&self, t: &BigUint) -> SymbolicPoint {
        SymbolicPoint {
            generator: Arc::clone(&self.generator),
            offset: &self.offset + t,
        }
    }

    /// The maximal run containing `q`, in this point's coordinates; `end` is
    /// `None` for a run that never ends.
    pub fn run_span(&self, q: &BigUint) -> RunSpan {
        let abs = &self.offset + q;
        let span = self.generator.run_span(&abs);
        let start = if span.start > self.offset {
            &span.start - &self.offset
        } else {
            BigUint::zero()
        };
        RunSpan {
            symbol: span.symbol,
            start,
            end: span.end.map(|e| e - &self.offset),
        }
    }

    /// The maximal run containing `q`; infinite runs are reported as
    /// [`Error::InfiniteRun`] carrying the start.
    pub fn run_locate(&self, q: &BigUint) -> Result<RunLocation> {
        let span = self.run_span(q);
        match span.end {
            Some(end) => Ok(RunLocation {
                symbol: span.symbol,
                start: span.start,
                end,
            }),
            None => Err(Error::InfiniteRun {
                symbol: span.symbol,
                start: span.start,
            }),
        }
    }

    /// Whether the point begins with the cylinder's word. Costs one run
    /// lookup per run of the word.
    pub fn in_cylinder(&self, cylinder: &Cylinder) -> bool {
        let runs = cylinder.word.runs();
        let mut pos = BigUint::zero();
        for (i, run) in runs.iter().enumerate() {
            let span = self.run_span(&pos);
            if span.symbol != run.symbol {
                return false;
            }
            let last = i + 1 == runs.len();
            match span.end {
                None => {
                    if !last {
                        return false;
                    }
                }
                Some(end) => {
                    let remaining = end + 1u32 - &pos;
                    let ok = if last {
                        remaining >= run.count
                    } else {
                        remaining == run.count
                    };
                    if !ok {
                        return false;
                    }
                }
            }
            pos += &run.count;
        }
        true
    }

    /// Maximal runs covering positions `[0, limit)`; the final run is cut at
    /// `limit`.
    pub fn runs_until(&self, limit: BigUint) -> RunStream {
        RunStream {
            point: self.clone(),
            pos: BigUint::zero(),
            limit,
        }
    }

    /// The first `length` symbols as a word, refusing when the result would
    /// hold more than `cap` runs.
    pub fn prefix_capped(&self, length: &BigUint, cap: u64) -> Result<RleWord> {
        let mut runs = Vec::new();
        for run in self.runs_until(length.clone()) {
            if runs.len() as u64 >= cap {
                return Err(Error::MaterializationRefused {
                    requested: BigUint::from(runs.len() + 1),
                    cap,
                });
            }
            runs.push((run.symbol, run.count));
        }
        if runs.is_empty() {
            return Ok(RleWord::empty(self.alphabet()));
        }
        RleWord::new(self.alphabet(), runs)
    }

    pub fn prefix(&self, length: &BigUint) -> Result<RleWord> {
        self.prefix_capped(length, MATERIALIZATION_CAP)
    }

    /// The first `length` symbols, one per entry.
    pub fn expand(&self, length: u64) -> Result<Vec<Symbol>> {
        if length > MATERIALIZATION_CAP {
            return Err(Error::MaterializationRefused {
                requested: BigUint::from(length),
                cap: MATERIALIZATION_CAP,
            });
        }
        let mut out = Vec::with_capacity(length as usize);
        for run in self.runs_until(BigUint::from(length)) {
            let c = run.count.to_usize().expect("bounded by length");
            out.extend(std::iter::repeat_n(run.symbol, c));
        }
        Ok(out)
    }

    /// Whether the first `length` symbols agree.
    pub fn eq_up_to(&self, other: &SymbolicPoint, length: &BigUint) -> bool {
        let mut a = self.runs_until(length.clone());
        let mut b = other.runs_until(length.clone());
        loop {
            match (a.next(), b.next()) {
                (None, None) => return true,
                (Some(x), Some(y)) if x == y => continue,
                _ => return false,
            }
        }
    }

    pub fn descriptor(&self) -> PointDescriptor {
        let (kind, params) = match &*self.generator {
            Generator::Construction(Stream::X) => ("x", json!({})),
            Generator::Construction(Stream::Y) => ("y", json!({})),
            Generator::Construction(Stream::Closing(n)) => ("closing", json!({ "n": n })),
            Generator::EventuallyPeriodic { preperiod, period } => (
                "ev_periodic",
                json!({ "preperiod": preperiod.to_json(), "period": period.to_json() }),
            ),
            Generator::FamilyMember(m) => ("family_member", m.params_json()),
            Generator::GrowingZeros(_) => ("growing_zeros", json!({})),
        };
        PointDescriptor {
            kind: kind.to_string(),
            params,
            offset: self.offset.to_str_radix(10),
        }
    }

    pub fn from_descriptor(d: &PointDescriptor) -> Result<Self> {
        let bad = |what: &str| Error::Parse(format!("point descriptor: {what}"));
        let generator = match d.kind.as_str() {
            "x" => Generator::Construction(Stream::X),
            "y" => Generator::Construction(Stream::Y),
            "closing" => {
                let n = d.params["n"]
                    .as_u64()
                    .ok_or_else(|| bad("closing needs n"))?;
                Generator::Construction(Stream::Closing(
                    u32::try_from(n).map_err(|_| bad("n too large"))?,
                ))
            }
            "ev_periodic" => {
                let word = |key: &str| -> Result<RleWord> {
                    serde_json::from_value(d.params[key].clone())
                        .map_err(|e| bad(&format!("{key}: {e}")))
                };
                let pre = word("preperiod")?;
                let period = word("period")?;
                let offset = parse_decimal(&d.offset)?;
                return Ok(SymbolicPoint::eventually_periodic(pre, period)?.shift(&offset));
            }
            "family_member" => Generator::FamilyMember(FamilyMember::from_params(&d.params)?),
            "growing_zeros" => Generator::GrowingZeros(GrowingZeros),
            other => return Err(bad(&format!("unknown kind {other:?}"))),
        };
        let offset = parse_decimal(&d.offset)?;
        Ok(SymbolicPoint::new(generator).shift(&offset))
    }
}

impl fmt::Display for SymbolicPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.descriptor();
        let base = match &*self.generator {
            Generator::Construction(Stream::Closing(n)) => format!("closing({n})"),
            Generator::EventuallyPeriodic { preperiod, period } => {
                format!("({preperiod})({period})^inf")
            }
            _ => d.kind.clone(),
        };
        if self.offset.is_zero() {
            write!(f, "{base}")
        } else {
            write!(f, "shift({base}, {})", self.offset)
        }
    }
}

/// Wire form of a point: `{"kind":"closing","params":{"n":2},"offset":"0"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointDescriptor {
    pub kind: String,
    pub params: serde_json::Value,
    pub offset: String,
}

impl Serialize for SymbolicPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.descriptor().serialize(s)
    }
}

impl<'de> Deserialize<'de> for SymbolicPoint {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let desc = PointDescriptor::deserialize(d)?;
        SymbolicPoint::from_descriptor(&desc).map_err(serde::de::Error::custom)
    }
}

/// Basic open set `[w]`: all points beginning with `w`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cylinder {
    pub word: RleWord,
}

impl Cylinder {
    pub fn new(word: RleWord) -> Result<Self> {
        if word.is_empty() {
            return Err(Error::Precondition("cylinder word must be nonempty".into()));
        }
        Ok(Cylinder { word })
    }

    pub fn binary(digits: &str) -> Result<Self> {
        Cylinder::new(RleWord::binary(digits)?)
    }

    pub fn len(&self) -> &BigUint {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl fmt::Display for Cylinder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.word)
    }
}

/// Lazy stream of a point's maximal runs up to a position limit.
pub struct RunStream {
    point: SymbolicPoint,
    pos: BigUint,
    limit: BigUint,
}

impl Iterator for RunStream {
    type Item = Run;

    fn next(&mut self) -> Option<Run> {
        if self.pos >= self.limit {
            return None;
        }
        let span = self.point.run_span(&self.pos);
        let stop = match span.end {
            Some(end) if end < self.limit => end + 1u32,
            _ => self.limit.clone(),
        };
        let count = &stop - &self.pos;
        self.pos = stop;
        Some(Run {
            symbol: span.symbol,
            count,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: u64) -> BigUint {
        BigUint::from(v)
    }

    fn naive(p: &SymbolicPoint, n: usize) -> Vec<Symbol> {
        (0..n).map(|i| p.symbol_at(&b(i as u64))).collect()
    }

    #[test]
    fn constant_points() {
        let zero = SymbolicPoint::constant(0);
        assert_eq!(zero.symbol_at(&BigUint::from(10u32).pow(30)), 0);
        assert_eq!(
            zero.run_locate(&b(7)),
            Err(Error::InfiniteRun {
                symbol: 0,
                start: b(0)
            })
        );
    }

    #[test]
    fn ten_infinity() {
        let p = SymbolicPoint::binary_periodic("1", "0").unwrap();
        assert_eq!(p.symbol_at(&b(0)), 1);
        assert_eq!(p.symbol_at(&b(1)), 0);
        assert_eq!(p.symbol_at(&b(12345)), 0);
        assert!(!p.in_cylinder(&Cylinder::binary("11").unwrap()));
        assert!(p.in_cylinder(&Cylinder::binary("1000").unwrap()));
        assert_eq!(
            p.run_locate(&b(0)).unwrap(),
            RunLocation {
                symbol: 1,
                start: b(0),
                end: b(0)
            }
        );
        assert!(matches!(
            p.run_locate(&b(5)),
            Err(Error::InfiniteRun { symbol: 0, .. })
        ));
    }

    #[test]
    fn periodic_runs_match_naive_expansion() {
        for (pre, per) in [
            ("", "10"),
            ("1", "10"),
            ("0", "0110"),
            ("11", "1100"),
            ("0", "001"),
        ] {
            let p = SymbolicPoint::binary_periodic(pre, per).unwrap();
            let s = naive(&p, 60);
            for q in 0..40usize {
                let loc = p.run_locate(&b(q as u64)).unwrap();
                let start = loc.start.to_usize().unwrap();
                let end = loc.end.to_usize().unwrap();
                assert!(start <= q && q <= end, "{pre}/{per} at {q}");
                assert!(s[start..=end].iter().all(|&c| c == loc.symbol));
                if start > 0 {
                    assert_ne!(s[start - 1], loc.symbol, "{pre}/{per} at {q}");
                }
                assert_ne!(s[end + 1], loc.symbol, "{pre}/{per} at {q}");
            }
        }
    }

    #[test]
    fn shift_is_additive() {
        let p = SymbolicPoint::binary_periodic("110", "10").unwrap();
        let a = p.shift(&b(3)).shift(&b(4));
        assert_eq!(a, p.shift(&b(7)));
        assert_eq!(p.shift(&b(0)), p);
    }

    #[test]
    fn descriptor_round_trip() {
        let p = SymbolicPoint::binary_periodic("1", "0")
            .unwrap()
            .shift(&b(5));
        let text = serde_json::to_string(&p).unwrap();
        let back: SymbolicPoint = serde_json::from_str(&text).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn prefix_of_constant() {
        let zero = SymbolicPoint::constant(0);
        assert_eq!(
            zero.prefix(&b(5)).unwrap(),
            RleWord::binary("00000").unwrap()
        );
    }
}
