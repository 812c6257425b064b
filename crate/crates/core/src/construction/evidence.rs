//! Finite-horizon evidence that `(x, 0^∞)` satisfies the even continuity
//! condition with `U = [C_0..C_n]` and `V = O = [0^n]`.

use serde::Serialize;

use super::words::{c_prefix, point_x, point_y};
use crate::error::{Error, Result};
use crate::rle_word::{RleWord, Symbol, MATERIALIZATION_CAP};
use crate::symbolic_point::Cylinder;

/// At most this many violations are listed individually.
const LISTED_VIOLATIONS: usize = 32;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EvpViolation {
    pub time: u64,
    /// Shift of `y` (or `None` for `x` itself) whose image left `O`.
    pub y_offset: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EvidenceReport {
    pub n: u32,
    pub horizon: u64,
    pub orbit_depth: u64,
    #[serde(rename = "U")]
    pub u: Cylinder,
    #[serde(rename = "V")]
    pub v: Cylinder,
    /// Sampled points of `U`: `x` plus every `σ^j(y)` in `U` with `j <= orbit_depth`.
    pub points_checked: usize,
    /// Times `l` in `1..=horizon` with `σ^l(x)` in `V`.
    pub trigger_times: usize,
    pub violation_count: usize,
    pub violations: Vec<EvpViolation>,
    pub sampled: bool,
}

fn starts_with(s: &[Symbol], at: usize, w: &[Symbol]) -> bool {
    s.get(at..at + w.len()) == Some(w)
}

pub fn check_evp_x_0inf(n: u32, horizon: u64, orbit_depth: u64) -> Result<EvidenceReport> {
    if n == 0 {
        return Err(Error::Precondition("need n >= 1".into()));
    }
    let uword = c_prefix(n);
    let ulen = u64::try_from(uword.len())
        .ok()
        .filter(|&l| l <= MATERIALIZATION_CAP);
    let Some(ulen) = ulen else {
        return Err(Error::MaterializationRefused {
            requested: uword.len().clone(),
            cap: MATERIALIZATION_CAP,
        });
    };
    let u = uword.expand(MATERIALIZATION_CAP)?;
    let nn = u64::from(n);
    let y = point_y().expand(orbit_depth + (horizon + nn).max(ulen) + 1)?;
    let x = point_x().expand(horizon + nn + 1)?;
    let mut samples: Vec<Option<u64>> = vec![None];
    samples.extend(
        (0..=orbit_depth)
            .filter(|&j| starts_with(&y, j as usize, &u))
            .map(Some),
    );
    let in_v = |s: &[Symbol], at: u64| s[at as usize..(at + nn) as usize].iter().all(|&c| c == 0);
    let mut triggers = 0usize;
    let mut violations = Vec::new();
    let mut count = 0usize;
    for l in 1..=horizon {
        if !in_v(&x, l) {
            continue;
        }
        triggers += 1;
        for s in &samples {
            let ok = match s {
                None => true,
                Some(j) => in_v(&y, j + l),
            };
            if !ok {
                count += 1;
                if violations.len() < LISTED_VIOLATIONS {
                    violations.push(EvpViolation {
                        time: l,
                        y_offset: *s,
                    });
                }
            }
        }
    }
    Ok(EvidenceReport {
        n,
        horizon,
        orbit_depth,
        u: Cylinder::new(uword)?,
        v: Cylinder::new(RleWord::repeat(2, 0, n)?)?,
        points_checked: samples.len(),
        trigger_times: triggers,
        violation_count: count,
        violations,
        sampled: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_horizon_has_no_violations() {
        let r = check_evp_x_0inf(1, 10_000, 10_000).unwrap();
        assert_eq!(r.violation_count, 0);
        assert!(r.trigger_times > 0);
        assert!(r.points_checked > 1);
        assert!(check_evp_x_0inf(0, 10, 10).is_err());
    }
}
