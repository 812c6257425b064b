//! Recurrence evidence: ω-limit membership and periodic-point scans.

use num_bigint::BigUint;
use serde::Serialize;

use super::model::SpaceModel;
use crate::error::{Error, Result};
use crate::rle_word::{find_first, RleWord, Symbol};
use crate::symbolic_point::SymbolicPoint;

/// Number of starting points `N` tried across the horizon.
const OMEGA_STEPS: u64 = 10;
/// Runs of `σ^N(p)` read while looking for the next occurrence.
const OMEGA_RUN_BUDGET: usize = 100_000;

/// Whether the first `depth` symbols of `candidate` occur in `p` at or after
/// every `N` in `0, horizon/10, .., horizon`. The search past each `N` is
/// bounded by a run budget rather than a position window, since occurrences
/// in sparse points can be astronomically far apart while the runs between
/// them are few.
pub fn omega_membership_evidence(
    p: &SymbolicPoint,
    candidate: &SymbolicPoint,
    depth: u32,
    horizon: u64,
) -> Result<bool> {
    if depth == 0 {
        return Err(Error::Precondition("depth must be >= 1".into()));
    }
    let pattern = candidate.prefix(&BigUint::from(depth))?;
    let unbounded: BigUint = BigUint::from(1u32) << 4096usize;
    for i in 0..=OMEGA_STEPS {
        let start = BigUint::from(horizon) * i / OMEGA_STEPS;
        let runs = p
            .shift(&start)
            .runs_until(unbounded.clone())
            .take(OMEGA_RUN_BUDGET);
        if find_first(runs, &pattern, &unbounded)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RepetitionCap {
    pub period: usize,
    pub repetitions: u64,
    pub cap: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodicScan {
    pub max_period: usize,
    pub horizon: u64,
    pub candidates: usize,
    pub survivors: Vec<String>,
    pub caps: Vec<RepetitionCap>,
    pub evidence_only: bool,
}

fn is_primitive(w: &[Symbol]) -> bool {
    let n = w.len();
    (1..n)
        .filter(|d| n.is_multiple_of(*d))
        .all(|d| (d..n).any(|i| w[i] != w[i - d]))
}

fn words_of_length(alphabet: u16, len: usize) -> Vec<Vec<Symbol>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..alphabet).map(move |s| {
                    let mut v = w.clone();
                    v.push(s as Symbol);
                    v
                })
            })
            .collect();
    }
    out
}

/// Primitive words `w` with `|w| <= max_period` such that `w^j` starts at or
/// before `horizon` in some generator, where `j = max(1, horizon/|w|)`.
/// Survival at `j` implies survival at every smaller repetition count.
pub fn periodic_scan(model: &SpaceModel, max_period: usize, horizon: u64) -> Result<PeriodicScan> {
    if max_period == 0 {
        return Err(Error::Precondition("max period must be >= 1".into()));
    }
    if u64::from(model.alphabet)
        .checked_pow(max_period as u32)
        .is_none_or(|c| c > 1 << 16)
    {
        return Err(Error::Precondition("too many candidate words".into()));
    }
    let h = BigUint::from(horizon);
    let mut survivors = Vec::new();
    let mut caps = Vec::new();
    let mut candidates = 0;
    for len in 1..=max_period {
        let cap = 8.max(horizon / len as u64);
        let reps = (horizon / len as u64).clamp(1, cap);
        caps.push(RepetitionCap {
            period: len,
            repetitions: reps,
            cap,
        });
        for w in words_of_length(model.alphabet, len)
            .into_iter()
            .filter(|w| is_primitive(w))
        {
            candidates += 1;
            let pattern = RleWord::from_symbols(model.alphabet, &w)?.power(reps)?;
            let limit = &h + pattern.len();
            let mut found = false;
            for g in &model.generators {
                if find_first(g.runs_until(limit.clone()), &pattern, &h)?.is_some() {
                    found = true;
                    break;
                }
            }
            if found {
                survivors.push(w.iter().map(|&s| char::from(b'0' + s)).collect());
            }
        }
    }
    Ok(PeriodicScan {
        max_period,
        horizon,
        candidates,
        survivors,
        caps,
        evidence_only: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_words() {
        assert!(is_primitive(&[1, 0]));
        assert!(!is_primitive(&[1, 0, 1, 0]));
        assert!(!is_primitive(&[0, 0]));
        assert!(is_primitive(&[0, 0, 1]));
        assert_eq!(words_of_length(2, 3).len(), 8);
    }

    #[test]
    fn ten_infinity_leaves_one() {
        let p = SymbolicPoint::binary_periodic("1", "0").unwrap();
        let one = SymbolicPoint::constant(1);
        assert!(!omega_membership_evidence(&p, &one, 1, 100).unwrap());
        let zero = SymbolicPoint::constant(0);
        assert!(omega_membership_evidence(&p, &zero, 5, 100).unwrap());
    }
}
