//! Hitting-time, sensitivity and splitting sets over sampled points.
//!
//! These sets use `n >= 1`, unlike the first-hitting time `τ` which allows
//! `t = 0`.

use serde::Serialize;

use super::bits::Bits;
use super::model::{SampleInfo, Source, SpaceModel};
use crate::error::{Error, Result};
use crate::rle_word::{Symbol, MATERIALIZATION_CAP};
use crate::symbolic_point::Cylinder;

/// Largest horizon accepted, so times fit a JSON integer array comfortably.
pub const MAX_HORIZON: u64 = 1 << 31;

/// `D_k`: pairs of points agreeing on their first `k` symbols.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EntourageDepth(u32);

impl EntourageDepth {
    pub fn new(k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::Precondition("entourage depth must be >= 1".into()));
        }
        Ok(EntourageDepth(k))
    }

    pub fn k(&self) -> u32 {
        self.0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HittingReport {
    pub times: Vec<u64>,
    pub horizon: u64,
    pub max_gap: u64,
    pub longest_run: u64,
    pub complement_count: u64,
    pub sampled: SampleInfo,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub syndetic_evidence: u64,
    pub thick_evidence: u64,
    pub cofinite_evidence: u64,
}

/// Gap, run and complement statistics of `times` within `[1, horizon]`.
pub fn classify_times(times: &[u64], horizon: u64) -> Classification {
    let mut max_gap = 0;
    let mut prev = 0;
    let mut longest = 0;
    let mut run = 0;
    for &t in times {
        max_gap = max_gap.max(t - prev);
        run = if t == prev + 1 && run > 0 { run + 1 } else { 1 };
        longest = longest.max(run);
        prev = t;
    }
    max_gap = max_gap.max(horizon - prev);
    Classification {
        syndetic_evidence: max_gap,
        thick_evidence: longest,
        cofinite_evidence: horizon - times.len() as u64,
    }
}

pub fn classify(report: &HittingReport) -> Classification {
    classify_times(&report.times, report.horizon)
}

impl HittingReport {
    fn new(times: Vec<u64>, horizon: u64, sampled: SampleInfo) -> Self {
        let c = classify_times(&times, horizon);
        HittingReport {
            times,
            horizon,
            max_gap: c.syndetic_evidence,
            longest_run: c.thick_evidence,
            complement_count: c.cofinite_evidence,
            sampled,
        }
    }
}

pub(crate) fn check_horizon(horizon: u64) -> Result<()> {
    if horizon == 0 || horizon > MAX_HORIZON {
        return Err(Error::Precondition(format!(
            "horizon must be in 1..=2^31, got {horizon}"
        )));
    }
    Ok(())
}

pub(crate) fn small_word(c: &Cylinder) -> Result<Vec<Symbol>> {
    c.word.expand(MATERIALIZATION_CAP)
}

fn matches_at(w: &[Symbol], at: usize, pat: &[Symbol]) -> bool {
    w.get(at..at + pat.len()) == Some(pat)
}

/// A source's window together with the shifts `j <= depth` lying in `U`.
struct Sampled {
    window: Vec<Symbol>,
    in_u: Vec<usize>,
}

fn sample(sources: &[Source], u: &[Symbol], extra: u64) -> Result<Vec<Sampled>> {
    sources
        .iter()
        .map(|s| {
            let window = s.window(extra.max(u.len() as u64) + 1)?;
            let in_u = (0..=s.depth as usize)
                .filter(|&j| matches_at(&window, j, u))
                .collect();
            Ok(Sampled { window, in_u })
        })
        .collect()
}

fn times_from(bits: &Bits) -> Vec<u64> {
    bits.ones().filter(|&n| n >= 1).map(|n| n as u64).collect()
}

fn hitting_bits(samples: &[Sampled], v: &[Symbol], horizon: u64) -> Bits {
    let mut times = Bits::new(horizon as usize + 1);
    for s in samples.iter().filter(|s| !s.in_u.is_empty()) {
        let hits = Bits::from_fn(s.window.len(), |t| matches_at(&s.window, t, v));
        for &j in &s.in_u {
            times.or_window(&hits, j);
        }
    }
    times.clear(0);
    times
}

fn sensitivity_bits(samples: &[Sampled], alphabet: u16, k: u32, horizon: u64) -> Bits {
    let span = horizon as usize + k as usize;
    // present[s][m]: some sampled point of U reads symbol s at relative position m.
    let mut present = vec![Bits::new(span); alphabet as usize];
    for s in samples.iter().filter(|s| !s.in_u.is_empty()) {
        for (sym, acc) in present.iter_mut().enumerate() {
            let bits = Bits::from_fn(s.window.len(), |t| s.window[t] as usize == sym);
            for &j in &s.in_u {
                acc.or_window(&bits, j);
            }
        }
    }
    let mixed = Bits::from_fn(span, |m| present.iter().filter(|p| p.get(m)).count() >= 2);
    let mut times = Bits::new(horizon as usize + 1);
    for i in 0..k as usize {
        times.or_window(&mixed, i);
    }
    times.clear(0);
    times
}

/// Times `n` in `[1, horizon]` at which some sampled point of `U` lands in
/// `V` after `n` shifts: a lower approximation of `N(U, V)`.
pub fn hitting_times(
    model: &SpaceModel,
    u: &Cylinder,
    v: &Cylinder,
    horizon: u64,
) -> Result<HittingReport> {
    check_horizon(horizon)?;
    let (uw, vw) = (small_word(u)?, small_word(v)?);
    let samples = sample(&model.sources(), &uw, horizon + vw.len() as u64)?;
    let bits = hitting_bits(&samples, &vw, horizon);
    Ok(HittingReport::new(
        times_from(&bits),
        horizon,
        model.sample_info(),
    ))
}

/// Times `n` in `[1, horizon]` at which two sampled points of `U` disagree
/// within their first `k` symbols after `n` shifts.
pub fn sensitivity_times(
    model: &SpaceModel,
    u: &Cylinder,
    d: EntourageDepth,
    horizon: u64,
) -> Result<HittingReport> {
    check_horizon(horizon)?;
    let uw = small_word(u)?;
    let samples = sample(&model.sources(), &uw, horizon + u64::from(d.k()))?;
    let bits = sensitivity_bits(&samples, model.alphabet, d.k(), horizon);
    Ok(HittingReport::new(
        times_from(&bits),
        horizon,
        model.sample_info(),
    ))
}

/// `N(U, V) ∩ N_D(U)` over one shared sample pool.
pub fn splitting_times(
    model: &SpaceModel,
    u: &Cylinder,
    v: &Cylinder,
    d: EntourageDepth,
    horizon: u64,
) -> Result<HittingReport> {
    check_horizon(horizon)?;
    let (uw, vw) = (small_word(u)?, small_word(v)?);
    let extra = horizon + (vw.len() as u64).max(u64::from(d.k()));
    let samples = sample(&model.sources(), &uw, extra)?;
    let mut bits = hitting_bits(&samples, &vw, horizon);
    bits.and_assign(&sensitivity_bits(&samples, model.alphabet, d.k(), horizon));
    Ok(HittingReport::new(
        times_from(&bits),
        horizon,
        model.sample_info(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classification_examples() {
        let all: Vec<u64> = (1..=100).collect();
        let c = classify_times(&all, 100);
        assert_eq!(
            (c.syndetic_evidence, c.thick_evidence, c.cofinite_evidence),
            (1, 100, 0)
        );
        let evens: Vec<u64> = (1..=50).map(|i| 2 * i).collect();
        let c = classify_times(&evens, 100);
        assert_eq!(
            (c.syndetic_evidence, c.thick_evidence, c.cofinite_evidence),
            (2, 1, 50)
        );
        assert_eq!(classify_times(&[1], 100).syndetic_evidence, 99);
        assert_eq!(classify_times(&[], 100).syndetic_evidence, 100);
    }
}
