//! Finite stand-ins for closure spaces: generator orbits up to a depth plus
//! declared limit points.

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::construction::{closing_point, point_x, point_y};
use crate::error::{Error, Result};
use crate::rle_word::Symbol;
use crate::symbolic_point::{Generator, SymbolicPoint};

#[derive(Clone, Debug)]
pub struct SpaceModel {
    pub name: String,
    pub alphabet: u16,
    pub generators: Vec<SymbolicPoint>,
    pub limit_points: Vec<SymbolicPoint>,
    pub orbit_depth: u64,
    /// Position intervals `(start, length)` that are all-zero in every member
    /// of the modelled family, when the family has such a schedule.
    pub zero_block_schedule: Option<Vec<(u64, u64)>>,
}

/// Sampling parameters stamped on every report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SampleInfo {
    pub model: String,
    pub orbit_depth: u64,
    pub generators: Vec<String>,
    pub limit_points: Vec<String>,
    pub lower_approximation: bool,
}

/// A point whose shifts `0..=depth` are sampled.
#[derive(Clone, Debug)]
pub(crate) struct Source {
    pub point: SymbolicPoint,
    pub depth: u64,
}

impl Source {
    /// Symbols `0..depth + extra` of the point.
    pub(crate) fn window(&self, extra: u64) -> Result<Vec<Symbol>> {
        self.point.expand(self.depth + extra)
    }
}

/// Number of distinct shifts of an eventually periodic point, minus one.
fn periodic_depth(p: &SymbolicPoint) -> Option<u64> {
    match p.generator() {
        Generator::EventuallyPeriodic { preperiod, period } => {
            let pre = preperiod.len().to_u64()?;
            let per = period.len().to_u64()?;
            let off = p.offset().to_u64().unwrap_or(u64::MAX);
            Some((pre.saturating_sub(off) + per).saturating_sub(1))
        }
        _ => None,
    }
}

impl SpaceModel {
    pub fn new(
        name: &str,
        alphabet: u16,
        generators: Vec<SymbolicPoint>,
        limit_points: Vec<SymbolicPoint>,
        orbit_depth: u64,
    ) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::Precondition(
                "a model needs at least one generator".into(),
            ));
        }
        for p in generators.iter().chain(&limit_points) {
            if p.alphabet() != alphabet {
                return Err(Error::AlphabetMismatch {
                    left: alphabet,
                    right: p.alphabet(),
                });
            }
        }
        Ok(SpaceModel {
            name: name.to_string(),
            alphabet,
            generators,
            limit_points,
            orbit_depth,
            zero_block_schedule: None,
        })
    }

    /// A model with one point and its orbit.
    pub fn single_point(p: SymbolicPoint, orbit_depth: u64) -> Self {
        let alphabet = p.alphabet();
        SpaceModel::new("single", alphabet, vec![p], Vec::new(), orbit_depth)
            .expect("one generator")
    }

    pub fn with_orbit_depth(mut self, orbit_depth: u64) -> Self {
        self.orbit_depth = orbit_depth;
        self
    }

    pub fn sample_info(&self) -> SampleInfo {
        SampleInfo {
            model: self.name.clone(),
            orbit_depth: self.orbit_depth,
            generators: self.generators.iter().map(ToString::to_string).collect(),
            limit_points: self.limit_points.iter().map(ToString::to_string).collect(),
            lower_approximation: true,
        }
    }

    /// Every sampled point is `σ^j(source.point)` for some source and
    /// `j <= source.depth`. Eventually periodic points only contribute their
    /// distinct shifts.
    pub(crate) fn sources(&self) -> Vec<Source> {
        self.generators
            .iter()
            .chain(&self.limit_points)
            .map(|p| Source {
                point: p.clone(),
                depth: periodic_depth(p).map_or(self.orbit_depth, |d| d.min(self.orbit_depth)),
            })
            .collect()
    }
}

/// The recursive construction: `x`, `y` and the first closing points, with
/// limit points `0^∞`, `1^∞` and `10^∞`.
pub fn construction_model(orbit_depth: u64) -> SpaceModel {
    let generators = vec![point_x(), point_y(), closing_point(1), closing_point(2)];
    let limits = vec![
        SymbolicPoint::constant(0),
        SymbolicPoint::constant(1),
        SymbolicPoint::binary_periodic("1", "0").expect("binary"),
    ];
    SpaceModel::new("construction", 2, generators, limits, orbit_depth).expect("binary points")
}
