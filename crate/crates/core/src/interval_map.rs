//! Exact-rational piecewise-linear maps of `[0, 1]`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Denominators may grow to this many bits along an orbit.
pub const DEFAULT_BIT_CAP: u64 = 4096;

pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `"p/q"` or an integer `"p"`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("not a rational p/q: {text:?}"));
    let int = |s: &str| s.trim().parse::<BigInt>().map_err(|_| bad());
    match text.split_once('/') {
        Some((p, q)) => {
            let q = int(q)?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(int(p)?, q))
        }
        None => Ok(Rational::from_integer(int(text)?)),
    }
}

/// `"p/q"` in lowest terms, with `q >= 1`.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Lossy decimal rendering with `digits` places, rounded half up.
pub fn format_decimal(r: &Rational, digits: u32) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = (r * Rational::from_integer(scale.clone()) + rat(1, 2))
        .floor()
        .to_integer();
    let neg = scaled.is_negative();
    let mag = scaled.abs();
    let (int, frac) = (&mag / &scale, &mag % &scale);
    let frac = format!("{:0>width$}", frac.to_string(), width = digits as usize);
    format!("{}{int}.{frac}", if neg { "-" } else { "" })
}

fn ser_rational<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}

/// `x -> slope·x + intercept` on `[lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Piece {
    #[serde(serialize_with = "ser_rational")]
    pub lo: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub hi: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub slope: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub intercept: Rational,
}

impl Piece {
    fn at(&self, x: &Rational) -> Rational {
        &self.slope * x + &self.intercept
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PiecewiseLinearMap {
    pieces: Vec<Piece>,
}

impl PiecewiseLinearMap {
    /// Validates that the pieces tile `[0, 1]`, agree at every breakpoint and
    /// map into `[0, 1]`.
    pub fn new(pieces: Vec<Piece>) -> Result<Self> {
        let unit = Rational::one();
        let fail = |msg: String| Err(Error::Precondition(msg));
        match (pieces.first(), pieces.last()) {
            (Some(a), Some(b)) if a.lo.is_zero() && b.hi == unit => {}
            _ => return fail("pieces must cover [0,1]".into()),
        }
        for p in &pieces {
            if p.lo >= p.hi {
                return fail(format!("empty piece [{}, {}]", p.lo, p.hi));
            }
            for v in [p.at(&p.lo), p.at(&p.hi)] {
                if v.is_negative() || v > unit {
                    return fail(format!("piece on [{}, {}] leaves [0,1]", p.lo, p.hi));
                }
            }
        }
        for w in pieces.windows(2) {
            if w[0].hi != w[1].lo {
                return fail(format!("gap or overlap at {}", w[0].hi));
            }
            if w[0].at(&w[0].hi) != w[1].at(&w[1].lo) {
                return fail(format!("discontinuity at {}", w[0].hi));
            }
        }
        Ok(PiecewiseLinearMap { pieces })
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    /// Interior breakpoints.
    pub fn breakpoints(&self) -> Vec<Rational> {
        self.pieces[1..].iter().map(|p| p.lo.clone()).collect()
    }

    /// Left and right piece values at every interior breakpoint.
    pub fn breakpoint_values(&self) -> Vec<(Rational, Rational, Rational)> {
        self.pieces
            .windows(2)
            .map(|w| (w[0].hi.clone(), w[0].at(&w[0].hi), w[1].at(&w[1].lo)))
            .collect()
    }

    fn check_domain(x: &Rational) -> Result<()> {
        if x.is_negative() || *x > Rational::one() {
            return Err(Error::Domain {
                value: format_rational(x),
            });
        }
        Ok(())
    }

    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        Self::check_domain(x)?;
        let piece = self
            .pieces
            .iter()
            .find(|p| p.lo <= *x && *x <= p.hi)
            .expect("pieces cover [0,1]");
        Ok(piece.at(x))
    }

    /// `[x0, f(x0), .., f^n(x0)]`, failing once a denominator needs more
    /// than `bit_cap` bits.
    pub fn orbit_capped(&self, x0: &Rational, n: usize, bit_cap: u64) -> Result<Vec<Rational>> {
        let mut out = Vec::with_capacity(n + 1);
        let mut x = x0.clone();
        Self::check_domain(&x)?;
        for step in 0..=n {
            if x.denom().bits() > bit_cap {
                return Err(Error::PrecisionCap { cap: bit_cap, step });
            }
            out.push(x.clone());
            if step < n {
                x = self.eval(&x)?;
            }
        }
        Ok(out)
    }

    pub fn orbit(&self, x0: &Rational, n: usize) -> Result<Vec<Rational>> {
        self.orbit_capped(x0, n, DEFAULT_BIT_CAP)
    }

    fn iterate(&self, x: &Rational, k: usize) -> Result<Rational> {
        let mut x = x.clone();
        for _ in 0..k {
            x = self.eval(&x)?;
        }
        Ok(x)
    }

    /// The constant value when one slope-zero piece covers `[lo, hi]`.
    pub fn constant_on(&self, lo: &Rational, hi: &Rational) -> Option<Rational> {
        self.pieces
            .iter()
            .find(|p| p.slope.is_zero() && p.lo <= *lo && *hi <= p.hi && lo <= hi)
            .map(|p| p.intercept.clone())
    }

    /// Exact image of `[lo, hi]`, as the hull of the piece images.
    pub fn image(&self, lo: &Rational, hi: &Rational) -> Result<(Rational, Rational)> {
        Self::check_domain(lo)?;
        Self::check_domain(hi)?;
        if lo > hi {
            return Err(Error::Precondition("interval with lo > hi".into()));
        }
        let mut min: Option<Rational> = None;
        let mut max: Option<Rational> = None;
        for p in self.pieces.iter().filter(|p| p.lo <= *hi && *lo <= p.hi) {
            let a = if p.lo > *lo { p.lo.clone() } else { lo.clone() };
            let b = if p.hi < *hi { p.hi.clone() } else { hi.clone() };
            for v in [p.at(&a), p.at(&b)] {
                if min.as_ref().is_none_or(|m| v < *m) {
                    min = Some(v.clone());
                }
                if max.as_ref().is_none_or(|m| v > *m) {
                    max = Some(v);
                }
            }
        }
        Ok((min.expect("nonempty"), max.expect("nonempty")))
    }

    /// Whether `f([lo, hi]) ⊆ [lo, hi]`.
    pub fn is_invariant(&self, lo: &Rational, hi: &Rational) -> Result<bool> {
        let (a, b) = self.image(lo, hi)?;
        Ok(*lo <= a && b <= *hi)
    }

    /// `count` equally spaced points of `[0, 1]` plus every breakpoint, sorted.
    pub fn plot_samples(&self, count: usize) -> Result<Vec<(Rational, Rational)>> {
        if count < 2 {
            return Err(Error::Precondition("need at least 2 samples".into()));
        }
        let mut xs: Vec<Rational> = (0..count)
            .map(|i| rat(i as i64, count as i64 - 1))
            .chain(self.breakpoints())
            .collect();
        xs.sort();
        xs.dedup();
        xs.into_iter()
            .map(|x| {
                let y = self.eval(&x)?;
                Ok((x, y))
            })
            .collect()
    }
}

/// The map that is eventually sensitive but not sensitive: a tent map on
/// `[0, 1/2]`, a flat piece at `1/3` on `[3/5, 4/5]` and the fixed point 1.
pub fn example_es_map() -> PiecewiseLinearMap {
    let piece = |lo: Rational, hi: Rational, slope: Rational, intercept: Rational| Piece {
        lo,
        hi,
        slope,
        intercept,
    };
    PiecewiseLinearMap::new(vec![
        piece(rat(0, 1), rat(1, 4), rat(2, 1), rat(0, 1)),
        piece(rat(1, 4), rat(1, 2), rat(-2, 1), rat(1, 1)),
        piece(rat(1, 2), rat(3, 5), rat(10, 3), rat(-5, 3)),
        piece(rat(3, 5), rat(4, 5), rat(0, 1), rat(1, 3)),
        piece(rat(4, 5), rat(1, 1), rat(10, 3), rat(-7, 3)),
    ])
    .expect("valid map")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EventualSensitivityWitness {
    #[serde(serialize_with = "ser_rational")]
    pub x: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub eps: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub delta: Rational,
    pub n: usize,
    pub k: usize,
    #[serde(serialize_with = "ser_rational")]
    pub y: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub fn_x: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub separation: Rational,
}

/// First `(n, y, k)` in lexicographic order with `1 <= n <= n_max`, `y` a
/// multiple of `1/grid` in `B_eps(f^n(x)) ∩ [0,1]`, `1 <= k <= k_max` and
/// `|f^{n+k}(x) - f^k(y)| >= delta`.
pub fn eventual_sensitivity_witness(
    f: &PiecewiseLinearMap,
    x: &Rational,
    eps: &Rational,
    delta: &Rational,
    n_max: usize,
    k_max: usize,
    grid: &BigUint,
) -> Result<Option<EventualSensitivityWitness>> {
    if !eps.is_positive() || !delta.is_positive() {
        return Err(Error::Precondition("eps and delta must be positive".into()));
    }
    if grid.is_zero() {
        return Err(Error::Precondition(
            "grid denominator must be positive".into(),
        ));
    }
    let g = BigInt::from(grid.clone());
    let gr = Rational::from_integer(g.clone());
    let x_orbit = f.orbit(x, n_max + k_max)?;
    for n in 1..=n_max {
        let c = &x_orbit[n];
        // Grid indices i with |i/g - c| < eps and 0 <= i/g <= 1.
        let lo_r = (c - eps) * &gr;
        let hi_r = (c + eps) * &gr;
        let mut i: BigInt = lo_r.floor().to_integer() + 1;
        if i.is_negative() {
            i = BigInt::zero();
        }
        let mut top = hi_r.ceil().to_integer() - 1;
        if top > g {
            top = g.clone();
        }
        while i <= top {
            let y = Rational::new(i.clone(), g.clone());
            let mut fy = y.clone();
            for k in 1..=k_max {
                fy = f.eval(&fy)?;
                let sep = (&x_orbit[n + k] - &fy).abs();
                if sep >= *delta {
                    return Ok(Some(EventualSensitivityWitness {
                        x: x.clone(),
                        eps: eps.clone(),
                        delta: delta.clone(),
                        n,
                        k,
                        y,
                        fn_x: c.clone(),
                        separation: sep,
                    }));
                }
            }
            i += 1;
        }
    }
    Ok(None)
}

/// Recomputes a witness's claims exactly.
pub fn check_witness(f: &PiecewiseLinearMap, w: &EventualSensitivityWitness) -> Result<bool> {
    let fnx = f.iterate(&w.x, w.n)?;
    let near = (&w.y - &fnx).abs() < w.eps;
    let sep = (f.iterate(&fnx, w.k)? - f.iterate(&w.y, w.k)?).abs();
    Ok(near && fnx == w.fn_x && sep == w.separation && sep >= w.delta)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn piece_values() {
        let f = example_es_map();
        assert_eq!(f.eval(&rat(3, 4)).unwrap(), rat(1, 3));
        assert_eq!(f.eval(&rat(1, 1)).unwrap(), rat(1, 1));
        assert_eq!(f.eval(&rat(1, 2)).unwrap(), rat(0, 1));
        assert_eq!(f.eval(&rat(1, 4)).unwrap(), rat(1, 2));
        assert_eq!(f.eval(&rat(3, 5)).unwrap(), rat(1, 3));
        assert_eq!(f.eval(&rat(1, 3)).unwrap(), rat(1, 3));
        assert!(matches!(f.eval(&rat(-1, 5)), Err(Error::Domain { .. })));
        assert!(matches!(f.eval(&rat(6, 5)), Err(Error::Domain { .. })));
    }

    #[test]
    fn continuity_at_breakpoints() {
        let f = example_es_map();
        let vals = f.breakpoint_values();
        assert_eq!(vals.len(), 4);
        assert!(vals.iter().all(|(_, l, r)| l == r));
    }

    #[test]
    fn orbits() {
        let f = example_es_map();
        assert_eq!(
            f.orbit(&rat(7, 10), 2).unwrap(),
            vec![rat(7, 10), rat(1, 3), rat(1, 3)]
        );
        assert!(f
            .orbit(&rat(1, 1), 5)
            .unwrap()
            .iter()
            .all(|v| *v == rat(1, 1)));
        assert!(f.orbit(&rat(0, 1), 3).unwrap().iter().all(Zero::is_zero));
        let err = f.orbit_capped(&rat(1, 3 * 1024 + 1), 10, 8).unwrap_err();
        assert!(matches!(err, Error::PrecisionCap { cap: 8, step: 0 }));
    }

    #[test]
    fn constant_and_invariant_intervals() {
        let f = example_es_map();
        assert_eq!(f.constant_on(&rat(3, 5), &rat(4, 5)), Some(rat(1, 3)));
        assert_eq!(f.constant_on(&rat(7, 10), &rat(3, 4)), Some(rat(1, 3)));
        assert_eq!(f.constant_on(&rat(0, 1), &rat(1, 4)), None);
        assert!(f.is_invariant(&rat(0, 1), &rat(1, 2)).unwrap());
        assert!(f.is_invariant(&rat(0, 1), &rat(1, 1)).unwrap());
        assert!(!f.is_invariant(&rat(0, 1), &rat(1, 4)).unwrap());
    }

    #[test]
    fn plot_includes_breakpoints() {
        let f = example_es_map();
        let s = f.plot_samples(5).unwrap();
        assert!(s.contains(&(rat(3, 5), rat(1, 3))));
        assert!(s.contains(&(rat(4, 5), rat(1, 3))));
        assert!(s.contains(&(rat(1, 1), rat(1, 1))));
        assert!(s.windows(2).all(|w| w[0].0 < w[1].0));
    }

    #[test]
    fn decimal_format() {
        assert_eq!(format_decimal(&rat(1, 3), 12), "0.333333333333");
        assert_eq!(format_decimal(&rat(2, 3), 12), "0.666666666667");
        assert_eq!(format_decimal(&rat(1, 1), 3), "1.000");
        assert_eq!(parse_rational("6/8").unwrap(), rat(3, 4));
        assert_eq!(format_rational(&rat(2, 1)), "2/1");
    }

    #[test]
    fn delta_two_is_never_reached() {
        let f = example_es_map();
        let w = eventual_sensitivity_witness(
            &f,
            &rat(7, 10),
            &rat(1, 10),
            &rat(2, 1),
            3,
            8,
            &BigUint::from(64u32),
        )
        .unwrap();
        assert!(w.is_none());
    }
}
