//! Finite-depth checks of the equicontinuity and even-continuity conditions.
//!
//! For a pair `(x, y)` and `O = [y_0..y_{o-1}]`, a candidate `(U, V)` is a
//! pair of cylinders `U = [x_0..x_{dU-1}]`, `V = [y_0..y_{dV-1}]`. At a time
//! `n` in `[1, horizon]` the candidate fails
//!
//! * for `EqP` when some sampled point of `U` lands in `V` while some sampled
//!   point of `U` lands outside `O`;
//! * for `EvP` when `x` itself lands in `V` while some sampled point of `U`
//!   lands outside `O`.
//!
//! Everything reduces to longest-common-prefix lengths: with `A(p, n)` the
//! agreement of `σ^n(p)` with `y` and `B(p)` the agreement of `p` with `x`,
//! a sampled `p` is in `U` iff `B(p) >= dU`, lands in `V` iff
//! `A(p, n) >= dV` and lands in `O` iff `A(p, n) >= o`. Sweeping `dU`
//! downward adds samples monotonically, so every candidate is decided from
//! running per-time maxima and minima of `A`.

use std::collections::HashMap;

use serde::Serialize;

use super::hitting::{check_horizon, hitting_times};
use super::model::{SampleInfo, SpaceModel};
use crate::error::{Error, Result};
use crate::rle_word::Symbol;
use crate::symbolic_point::{Cylinder, SymbolicPoint};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum PairKind {
    EqP,
    EvP,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairViolation {
    pub u_depth: u32,
    pub v_depth: u32,
    pub time: u64,
    /// A sampled point of `U` whose image at `time` leaves `O`.
    pub point: SymbolicPoint,
    pub image_prefix: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum PairStatus {
    Satisfied {
        u_depth: u32,
        v_depth: u32,
    },
    ViolatedUpTo {
        depth: u32,
        witnesses: Vec<PairViolation>,
    },
    Inconclusive {
        reason: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub kind: PairKind,
    #[serde(flatten)]
    pub status: PairStatus,
    pub o_depth: u32,
    pub max_uv_depth: u32,
    pub horizon: u64,
    pub depths_tried: usize,
    pub sampled: SampleInfo,
}

/// Outcome of one fixed `(U, V)` candidate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairCheck {
    pub kind: PairKind,
    pub u_depth: u32,
    pub v_depth: u32,
    pub o_depth: u32,
    pub horizon: u64,
    pub satisfied: bool,
    pub violation: Option<PairViolation>,
}

fn lcp(w: &[Symbol], at: usize, target: &[Symbol]) -> u32 {
    w[at..]
        .iter()
        .zip(target)
        .take_while(|(a, b)| a == b)
        .count() as u32
}

struct Table {
    points: Vec<SymbolicPoint>,
    windows: Vec<Vec<Symbol>>,
    /// `a[s][t]`: agreement of `σ^t(source s)` with `y`.
    a: Vec<Vec<u32>>,
    /// Samples `(source, j)` with their agreement with `x`, at least 1.
    samples: Vec<(usize, usize, u32)>,
    /// Agreement of `σ^n(x)` with `y`.
    a_x: Vec<u32>,
}

fn build_table(
    model: &SpaceModel,
    x: &SymbolicPoint,
    y: &SymbolicPoint,
    cap: u32,
    horizon: u64,
) -> Result<Table> {
    let cap64 = u64::from(cap);
    let yw = y.expand(cap64)?;
    let xw = x.expand(cap64)?;
    let mut sources = model.sources();
    sources.push(super::model::Source {
        point: x.clone(),
        depth: 0,
    });
    let mut table = Table {
        points: Vec::new(),
        windows: Vec::new(),
        a: Vec::new(),
        samples: Vec::new(),
        a_x: Vec::new(),
    };
    for (si, s) in sources.iter().enumerate() {
        let window = s.window(horizon + cap64 + 1)?;
        let span = s.depth as usize + horizon as usize + 1;
        let a: Vec<u32> = (0..span).map(|t| lcp(&window, t, &yw)).collect();
        for j in 0..=s.depth as usize {
            let b = lcp(&window, j, &xw);
            if b >= 1 {
                table.samples.push((si, j, b));
            }
        }
        if si + 1 == sources.len() {
            table.a_x = a[..=horizon as usize].to_vec();
        }
        table.points.push(s.point.clone());
        table.windows.push(window);
        table.a.push(a);
    }
    Ok(table)
}

impl Table {
    /// A sample in `U` (agreement with `x` at least `du`) whose image at `n`
    /// agrees with `y` on fewer than `o` symbols.
    fn escaping_sample(&self, du: u32, n: usize, o: u32) -> Option<(usize, usize)> {
        self.samples
            .iter()
            .find(|&&(s, j, b)| b >= du && self.a[s][j + n] < o)
            .map(|&(s, j, _)| (s, j))
    }

    fn violation(&self, du: u32, dv: u32, n: usize, o: u32) -> PairViolation {
        let (s, j) = self
            .escaping_sample(du, n, o)
            .expect("violation times always have an escaping sample");
        let image: String = self.windows[s][j + n..j + n + o as usize]
            .iter()
            .map(|&c| char::from_digit(u32::from(c), 36).expect("symbol below 36"))
            .collect();
        PairViolation {
            u_depth: du,
            v_depth: dv,
            time: n as u64,
            point: self.points[s].shift(&j.into()),
            image_prefix: image,
        }
    }
}

/// For each `dU` in `1..=max`, the earliest violating time for every `dV`
/// (index `dV`; `None` when `(dU, dV)` passes).
fn earliest_violations(
    t: &Table,
    kind: PairKind,
    o: u32,
    max: u32,
    horizon: u64,
) -> Vec<Vec<Option<usize>>> {
    let h = horizon as usize;
    let mut max_a = vec![0u32; h + 1];
    let mut min_a = vec![u32::MAX; h + 1];
    let mut by_depth: Vec<Vec<(usize, usize)>> = vec![Vec::new(); max as usize + 1];
    for &(s, j, b) in &t.samples {
        by_depth[b.min(max) as usize].push((s, j));
    }
    let mut out = vec![Vec::new(); max as usize + 1];
    for du in (1..=max).rev() {
        for &(s, j) in &by_depth[du as usize] {
            let a = &t.a[s][j..];
            for n in 1..=h {
                max_a[n] = max_a[n].max(a[n]);
                min_a[n] = min_a[n].min(a[n]);
            }
        }
        let mut earliest = vec![None; max as usize + 1];
        let mut filled = 0u32;
        for n in 1..=h {
            if min_a[n] >= o {
                continue;
            }
            let trig = match kind {
                PairKind::EqP => max_a[n],
                PairKind::EvP => t.a_x[n],
            }
            .min(max);
            while filled < trig {
                filled += 1;
                earliest[filled as usize] = Some(n);
            }
            if filled == max {
                break;
            }
        }
        out[du as usize] = earliest;
    }
    out
}

fn check_inputs(x: &SymbolicPoint, y: &SymbolicPoint, o_depth: u32, horizon: u64) -> Result<()> {
    check_horizon(horizon)?;
    if o_depth == 0 {
        return Err(Error::Precondition("O depth must be >= 1".into()));
    }
    if x.alphabet() != y.alphabet() {
        return Err(Error::AlphabetMismatch {
            left: x.alphabet(),
            right: y.alphabet(),
        });
    }
    Ok(())
}

/// Candidate depth pairs in increasing `max(dU, dV)`; within one level,
/// `(1,s)..(s-1,s)` then `(s,1)..(s,s)`.
pub fn search_order(max: u32) -> Vec<(u32, u32)> {
    let mut order = Vec::new();
    for s in 1..=max {
        order.extend((1..s).map(|du| (du, s)));
        order.extend((1..=s).map(|dv| (s, dv)));
    }
    order
}

/// Searches cylinder pairs `(U, V)` around `(x, y)` with depths up to
/// `max_uv_depth`, returning the first candidate passing every time up to
/// `horizon` over the model's samples.
pub fn check_pair(
    model: &SpaceModel,
    kind: PairKind,
    x: &SymbolicPoint,
    y: &SymbolicPoint,
    o_depth: u32,
    max_uv_depth: u32,
    horizon: u64,
) -> Result<Verdict> {
    check_inputs(x, y, o_depth, horizon)?;
    if max_uv_depth == 0 {
        return Err(Error::Precondition("U/V depth bound must be >= 1".into()));
    }
    let table = build_table(model, x, y, max_uv_depth.max(o_depth), horizon)?;
    let earliest = earliest_violations(&table, kind, o_depth, max_uv_depth, horizon);
    let mut witnesses = Vec::new();
    let mut cache: HashMap<(u32, usize), PairViolation> = HashMap::new();
    let mut tried = 0;
    let mut status = None;
    for (du, dv) in search_order(max_uv_depth) {
        tried += 1;
        match earliest[du as usize][dv as usize] {
            None => {
                status = Some(PairStatus::Satisfied {
                    u_depth: du,
                    v_depth: dv,
                });
                break;
            }
            Some(n) => {
                let mut w = cache
                    .entry((du, n))
                    .or_insert_with(|| table.violation(du, dv, n, o_depth))
                    .clone();
                w.v_depth = dv;
                witnesses.push(w);
            }
        }
    }
    let status = status.unwrap_or(PairStatus::ViolatedUpTo {
        depth: max_uv_depth,
        witnesses,
    });
    Ok(Verdict {
        kind,
        status,
        o_depth,
        max_uv_depth,
        horizon,
        depths_tried: tried,
        sampled: model.sample_info(),
    })
}

/// Checks a single candidate `(U, V)` of the given depths.
#[allow(clippy::too_many_arguments)]
pub fn check_pair_at(
    model: &SpaceModel,
    kind: PairKind,
    x: &SymbolicPoint,
    y: &SymbolicPoint,
    o_depth: u32,
    u_depth: u32,
    v_depth: u32,
    horizon: u64,
) -> Result<PairCheck> {
    check_inputs(x, y, o_depth, horizon)?;
    if u_depth == 0 || v_depth == 0 {
        return Err(Error::Precondition("U and V depths must be >= 1".into()));
    }
    let max = u_depth.max(v_depth);
    let table = build_table(model, x, y, max.max(o_depth), horizon)?;
    let earliest = earliest_violations(&table, kind, o_depth, max, horizon);
    let violation = earliest[u_depth as usize][v_depth as usize]
        .map(|n| table.violation(u_depth, v_depth, n, o_depth));
    Ok(PairCheck {
        kind,
        u_depth,
        v_depth,
        o_depth,
        horizon,
        satisfied: violation.is_none(),
        violation,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrivialPairScan {
    pub depth: u32,
    pub horizon: u64,
    pub hits: usize,
    pub last_hit: Option<u64>,
    /// No hit in the final half of the horizon.
    pub eventually_empty_evidence: bool,
    pub sampled: SampleInfo,
}

/// Hitting times from `[x_0..x_{d-1}]` to `[y_0..y_{d-1}]`; a hit-free
/// second half of the horizon is evidence that `y` is outside the
/// non-wandering set of `x`.
pub fn trivial_pair_scan(
    model: &SpaceModel,
    x: &SymbolicPoint,
    y: &SymbolicPoint,
    depth: u32,
    horizon: u64,
) -> Result<TrivialPairScan> {
    if depth == 0 {
        return Err(Error::Precondition("depth must be >= 1".into()));
    }
    let d = u64::from(depth).into();
    let u = Cylinder::new(x.prefix(&d)?)?;
    let v = Cylinder::new(y.prefix(&d)?)?;
    let report = hitting_times(model, &u, &v, horizon)?;
    let last_hit = report.times.last().copied();
    Ok(TrivialPairScan {
        depth,
        horizon,
        hits: report.times.len(),
        eventually_empty_evidence: last_hit.is_none_or(|t| t <= horizon / 2),
        last_hit,
        sampled: report.sampled,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_by_max_depth() {
        assert_eq!(search_order(2), vec![(1, 1), (1, 2), (2, 1), (2, 2)]);
        assert_eq!(
            search_order(3)[4..],
            [(1, 3), (2, 3), (3, 1), (3, 2), (3, 3)]
        );
    }

    #[test]
    fn constant_system_is_satisfied_at_depth_one() {
        let zero = SymbolicPoint::constant(0);
        let model = SpaceModel::single_point(zero.clone(), 100);
        let v = check_pair(&model, PairKind::EqP, &zero, &zero, 1, 3, 100).unwrap();
        assert_eq!(
            v.status,
            PairStatus::Satisfied {
                u_depth: 1,
                v_depth: 1
            }
        );
    }
}
