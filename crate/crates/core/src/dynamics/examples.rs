//! Generators and models for the two auxiliary example systems.
//!
//! The block family: sequences `W_1 0 W_2 0^2 W_3 0^3 ...` where each `W_k`
//! is a word of length `k` over `{1..m}`. Because every `W_k` has fixed
//! length, the zero blocks sit at the same positions for every member.
//!
//! The growing-zeros point `10 100 1000 ...` together with its truncations
//! `z_n = X_1..X_n 0^∞`, where `X_n = 1 0^n`.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde_json::json;

use super::model::SpaceModel;
use crate::construction::{Claim, Fact, WitnessCertificate};
use crate::error::{Error, Result};
use crate::rle_word::{RleWord, Symbol};
use crate::symbolic_point::{Cylinder, Generator, RunSpan, SymbolicPoint};

/// Deterministic rule picking the symbols of each block `W_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Chooser {
    /// Every block is `s^k`.
    Constant(Symbol),
    /// `W_k[i] = 1 + ((i + k + offset) mod m)`; every run has length one.
    Cyclic(u64),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FamilyMember {
    m: u8,
    chooser: Chooser,
}

impl FamilyMember {
    pub fn new(m: u8, chooser: Chooser) -> Result<Self> {
        if m < 2 {
            return Err(Error::Precondition(
                "block alphabet bound m must be >= 2".into(),
            ));
        }
        if let Chooser::Constant(s) = chooser {
            if s == 0 || s > m {
                return Err(Error::Precondition(format!(
                    "constant chooser symbol {s} outside 1..={m}"
                )));
            }
        }
        Ok(FamilyMember { m, chooser })
    }

    pub fn alphabet(&self) -> u16 {
        u16::from(self.m) + 1
    }

    pub(crate) fn params_json(&self) -> serde_json::Value {
        let chooser = match self.chooser {
            Chooser::Constant(s) => json!({ "constant": s }),
            Chooser::Cyclic(o) => json!({ "cyclic": o }),
        };
        json!({ "m": self.m, "chooser": chooser })
    }

    pub(crate) fn from_params(params: &serde_json::Value) -> Result<Self> {
        let bad = || Error::Parse("family_member needs m and chooser".into());
        let m = params["m"]
            .as_u64()
            .and_then(|m| u8::try_from(m).ok())
            .ok_or_else(bad)?;
        let c = &params["chooser"];
        let chooser = if let Some(s) = c["constant"].as_u64() {
            Chooser::Constant(u8::try_from(s).map_err(|_| bad())?)
        } else if let Some(o) = c["cyclic"].as_u64() {
            Chooser::Cyclic(o)
        } else {
            return Err(bad());
        };
        FamilyMember::new(m, chooser)
    }

    /// Block index `k` with `k(k-1) <= q < k(k+1)`.
    fn block(q: &BigUint) -> BigUint {
        let s = (q * 4u32 + 1u32).sqrt();
        (s + 1u32) / 2u32
    }

    fn choose(&self, k: &BigUint, i: &BigUint) -> Symbol {
        match self.chooser {
            Chooser::Constant(s) => s,
            Chooser::Cyclic(off) => {
                let r = (i + k + off) % u64::from(self.m);
                1 + r.to_u8().expect("below m")
            }
        }
    }

    pub(crate) fn symbol_at(&self, q: &BigUint) -> Symbol {
        let k = Self::block(q);
        let w_start = &k * (&k - 1u32);
        let z_start = &k * &k;
        if *q < z_start {
            self.choose(&k, &(q - w_start))
        } else {
            0
        }
    }

    pub(crate) fn run_span(&self, q: &BigUint) -> RunSpan {
        let k = Self::block(q);
        let w_start = &k * (&k - 1u32);
        let z_start = &k * &k;
        if *q >= z_start {
            return RunSpan {
                symbol: 0,
                end: Some(&z_start + &k - 1u32),
                start: z_start,
            };
        }
        let symbol = self.choose(&k, &(q - &w_start));
        match self.chooser {
            Chooser::Constant(_) => RunSpan {
                symbol,
                start: w_start,
                end: Some(z_start - 1u32),
            },
            Chooser::Cyclic(_) => RunSpan {
                symbol,
                start: q.clone(),
                end: Some(q.clone()),
            },
        }
    }
}

/// Position intervals `(start, length)` that are all-zero in every member of
/// the block family: the `k`-th zero block starts at `k^2` and has length `k`.
pub fn zero_block_schedule(count: u64) -> Vec<(u64, u64)> {
    (1..=count).map(|k| (k * k, k)).collect()
}

/// The point `X_1 X_2 X_3 ...` with `X_n = 1 0^n`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct GrowingZeros;

impl GrowingZeros {
    /// Start of `X_n`: `(n-1)(n+2)/2`.
    fn start(n: &BigUint) -> BigUint {
        (n - 1u32) * (n + 2u32) / 2u32
    }

    fn block(q: &BigUint) -> BigUint {
        let mut n = (q * 2u32).sqrt().max(BigUint::one());
        while Self::start(&(&n + 1u32)) <= *q {
            n += 1u32;
        }
        while Self::start(&n) > *q {
            n -= 1u32;
        }
        n
    }

    pub(crate) fn symbol_at(&self, q: &BigUint) -> Symbol {
        let n = Self::block(q);
        u8::from(Self::start(&n) == *q)
    }

    pub(crate) fn run_span(&self, q: &BigUint) -> RunSpan {
        let n = Self::block(q);
        let s = Self::start(&n);
        if s == *q {
            RunSpan {
                symbol: 1,
                start: s.clone(),
                end: Some(s),
            }
        } else {
            RunSpan {
                symbol: 0,
                end: Some(&s + &n),
                start: s + 1u32,
            }
        }
    }
}

/// `X_1 .. X_n`.
pub fn growing_zeros_word(n: u64) -> RleWord {
    let mut runs = Vec::new();
    for k in 1..=n {
        runs.push((1u8, BigUint::one()));
        runs.push((0u8, BigUint::from(k)));
    }
    RleWord::new(2, runs).expect("valid runs")
}

/// `z_n = X_1 .. X_n 0^∞`.
pub fn truncated_growing_zeros(n: u64) -> SymbolicPoint {
    SymbolicPoint::eventually_periodic(growing_zeros_word(n), RleWord::binary("0").expect("binary"))
        .expect("nonempty period")
}

pub fn family_member(m: u8, chooser: Chooser) -> Result<SymbolicPoint> {
    Ok(SymbolicPoint::new(Generator::FamilyMember(
        FamilyMember::new(m, chooser)?,
    )))
}

/// The first `count` choosers used for sampled members: alternately a
/// constant block symbol and a cyclic pattern.
pub fn default_choosers(m: u8, count: usize) -> Vec<Chooser> {
    (0..count)
        .map(|i| {
            if i % 2 == 0 {
                Chooser::Constant(1 + ((i / 2) % usize::from(m)) as u8)
            } else {
                Chooser::Cyclic((i / 2) as u64)
            }
        })
        .collect()
}

/// Model of the block family: sampled members plus `0^∞`.
pub fn block_family_model(m: u8, choosers: &[Chooser], depth: u64) -> Result<SpaceModel> {
    if choosers.is_empty() {
        return Err(Error::Precondition(
            "need at least one sampled member".into(),
        ));
    }
    let mut generators = choosers
        .iter()
        .map(|&c| family_member(m, c))
        .collect::<Result<Vec<_>>>()?;
    let zero = SymbolicPoint::eventually_periodic(
        RleWord::empty(u16::from(m) + 1),
        RleWord::repeat(u16::from(m) + 1, 0, 1u32)?,
    )?;
    generators.push(zero);
    let mut model = SpaceModel::new(
        "block_family",
        u16::from(m) + 1,
        generators,
        Vec::new(),
        depth,
    )?;
    let blocks = (depth as f64).sqrt() as u64 + 2;
    model.zero_block_schedule = Some(zero_block_schedule(blocks));
    Ok(model)
}

/// Whether, for every `t <= horizon`, membership of `σ^t(member)` in `[0^n]`
/// is the same for every member of the model.
pub fn zero_membership_is_member_independent(
    members: &[SymbolicPoint],
    n: u64,
    horizon: u64,
) -> Result<bool> {
    let windows = members
        .iter()
        .map(|p| p.expand(horizon + n + 1))
        .collect::<Result<Vec<_>>>()?;
    let n = n as usize;
    for t in 0..=horizon as usize {
        let mut verdicts = windows.iter().map(|w| w[t..t + n].iter().all(|&s| s == 0));
        let first = verdicts.next().expect("at least one member");
        if verdicts.any(|v| v != first) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Model of the growing-zeros system: `x`, `z_1..z_{z_bound}`, `0^∞`, with
/// limit points `0^k 1 0^∞` for `k <= limit_bound`.
pub fn growing_zeros_model(z_bound: u64, limit_bound: u64, depth: u64) -> Result<SpaceModel> {
    let mut generators = vec![SymbolicPoint::new(Generator::GrowingZeros(GrowingZeros))];
    generators.extend((1..=z_bound).map(truncated_growing_zeros));
    generators.push(SymbolicPoint::constant(0));
    let limits = (0..=limit_bound)
        .map(|k| {
            let mut pre = "0".repeat(k as usize);
            pre.push('1');
            SymbolicPoint::binary_periodic(&pre, "0")
        })
        .collect::<Result<Vec<_>>>()?;
    SpaceModel::new("growing_zeros", 2, generators, limits, depth)
}

/// Refutes the equicontinuity condition for `(x, 0^∞)` with `O = [0]`:
/// for `U` the first `u_depth` symbols of `x` and `V = [0^v_depth]`, take the
/// least `N` with `|X_1..X_N| >= u_depth`. At time `k = |X_1..X_N|`, `x`
/// reads the 1 opening `X_{N+1}` while `z_N` reads only zeros.
pub fn growing_zeros_eqp_refutation(u_depth: u64, v_depth: u64) -> Result<WitnessCertificate> {
    if u_depth == 0 || v_depth == 0 {
        return Err(Error::Precondition("U and V depths must be >= 1".into()));
    }
    let n = (1..)
        .find(|&n| n * (n + 3) / 2 >= u_depth)
        .expect("unbounded");
    let x = SymbolicPoint::new(Generator::GrowingZeros(GrowingZeros));
    let z = truncated_growing_zeros(n);
    let time = BigUint::from(n * (n + 3) / 2);
    let u = Cylinder::new(x.prefix(&BigUint::from(u_depth))?)?;
    let v = Cylinder::new(RleWord::repeat(2, 0, v_depth)?)?;
    let o = Cylinder::binary("0")?;
    let fact = |label: &str, p: &SymbolicPoint, at_time: bool, c: &Cylinder, expect: bool| Fact {
        label: label.to_string(),
        point: p.clone(),
        at_time,
        cylinder: c.clone(),
        expect_member: expect,
    };
    let facts = vec![
        fact("x in U", &x, false, &u, true),
        fact("z in U", &z, false, &u, true),
        fact("shift(z, time) in V", &z, true, &v, true),
        fact("shift(x, time) not in O", &x, true, &o, false),
    ];
    Ok(WitnessCertificate {
        claim: Claim::NotEqP_growing_zeros_0inf,
        params: [("u_depth", u_depth), ("v_depth", v_depth), ("n", n)]
            .iter()
            .map(|&(k, v)| (k.to_string(), v))
            .collect(),
        o,
        u,
        v,
        comparison_point: z,
        time,
        facts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn expand(p: &SymbolicPoint, n: u64) -> Vec<Symbol> {
        p.expand(n).unwrap()
    }

    #[test]
    fn member_layout() {
        let p = family_member(2, Chooser::Constant(1)).unwrap();
        // 1 0 11 00 111 000
        assert_eq!(expand(&p, 12), vec![1, 0, 1, 1, 0, 0, 1, 1, 1, 0, 0, 0]);
        let c = family_member(2, Chooser::Cyclic(0)).unwrap();
        let s = expand(&c, 12);
        for (start, len) in zero_block_schedule(3) {
            for i in start..start + len {
                assert_eq!(s[i as usize], 0);
            }
        }
        assert!(s[..2].iter().zip(&[2, 0]).all(|(a, b)| a == b));
    }

    #[test]
    fn growing_zeros_refutation_validates() {
        use crate::construction::validate_certificate;
        for d in [1, 3, 9, 20] {
            let w = growing_zeros_eqp_refutation(d, 4).unwrap();
            assert!(validate_certificate(&w).valid, "depth {d}");
            for t in [&w.time + 1u32, &w.time - 1u32] {
                assert!(!validate_certificate(&w.with_time(t)).valid);
            }
        }
    }

    #[test]
    fn zero_blocks_start_at_squares() {
        let starts: Vec<u64> = zero_block_schedule(4).iter().map(|b| b.0).collect();
        assert_eq!(starts, vec![1, 4, 9, 16]);
    }

    #[test]
    fn growing_zeros_layout() {
        let x = SymbolicPoint::new(Generator::GrowingZeros(GrowingZeros));
        let s: String = expand(&x, 14)
            .iter()
            .map(|d| char::from(b'0' + d))
            .collect();
        assert_eq!(s, "10100100010000");
        let big = BigUint::from(10u32).pow(30);
        let loc = x.run_locate(&big).unwrap();
        assert!(loc.start <= big && big <= loc.end);
    }

    #[test]
    fn run_spans_agree_with_expansion() {
        let points = [
            family_member(3, Chooser::Constant(2)).unwrap(),
            family_member(2, Chooser::Cyclic(1)).unwrap(),
            SymbolicPoint::new(Generator::GrowingZeros(GrowingZeros)),
        ];
        for p in &points {
            let s = expand(p, 400);
            for q in 0..300usize {
                let loc = p.run_locate(&BigUint::from(q)).unwrap();
                let (a, b) = (loc.start.to_usize().unwrap(), loc.end.to_usize().unwrap());
                assert!(a <= q && q <= b);
                assert!(s[a..=b].iter().all(|&c| c == loc.symbol));
                assert!(a == 0 || s[a - 1] != loc.symbol);
                assert_ne!(s[b + 1], loc.symbol);
            }
        }
    }
}
