//! Closed-form refutation certificates and their validation by simulation.
//!
//! A certificate names three cylinders `O`, `U`, `V`, a time and a list of
//! membership facts about concrete points. Facts marked `at_time` are
//! checked on the point shifted by the certificate's time; the others are
//! checked on the point itself. Validation never expands a sequence: every
//! fact is a handful of run lookups at (possibly astronomically large)
//! positions.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::lengths::{cum_c, cum_w, len_c, len_w, one_part, zero_part};
use super::words::{c_prefix, closing_point, point_x, point_y, q_word, tau, w_prefix, w_word};
use crate::error::{Error, Result};
use crate::rle_word::{find_first, word_runs, RleWord};
use crate::symbolic_point::{Cylinder, SymbolicPoint};

#[allow(non_camel_case_types)]
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Claim {
    /// `(x, 10^∞)` is not an even continuity pair.
    NotEvP_x_10inf,
    /// `(y, 0^∞)` is not an equicontinuity pair.
    NotEqP_y_0inf,
    /// `(y, 1^∞)` is not an equicontinuity pair.
    NotEqP_y_1inf,
    /// `(y, w)` is not an equicontinuity pair for `w` in a two-symbol cylinder.
    NotEqP_y_general,
    /// In the growing-zeros system, `(x, 0^∞)` is not an equicontinuity pair.
    NotEqP_growing_zeros_0inf,
}

/// One membership statement checked during validation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fact {
    pub label: String,
    pub point: SymbolicPoint,
    pub at_time: bool,
    pub cylinder: Cylinder,
    pub expect_member: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessCertificate {
    pub claim: Claim,
    pub params: BTreeMap<String, u64>,
    #[serde(rename = "O")]
    pub o: Cylinder,
    #[serde(rename = "U")]
    pub u: Cylinder,
    #[serde(rename = "V")]
    pub v: Cylinder,
    pub comparison_point: SymbolicPoint,
    #[serde(
        serialize_with = "crate::serde_dec::ser",
        deserialize_with = "crate::serde_dec::de"
    )]
    pub time: BigUint,
    pub facts: Vec<Fact>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckedFact {
    pub label: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Validation {
    pub valid: bool,
    pub checked_facts: Vec<CheckedFact>,
}

impl WitnessCertificate {
    /// The same certificate with a different time.
    pub fn with_time(&self, time: BigUint) -> WitnessCertificate {
        WitnessCertificate {
            time,
            ..self.clone()
        }
    }
}

fn fact(
    label: &str,
    point: &SymbolicPoint,
    at_time: bool,
    cylinder: &Cylinder,
    expect: bool,
) -> Fact {
    Fact {
        label: label.to_string(),
        point: point.clone(),
        at_time,
        cylinder: cylinder.clone(),
        expect_member: expect,
    }
}

pub fn validate_certificate(w: &WitnessCertificate) -> Validation {
    let checked_facts: Vec<CheckedFact> = w
        .facts
        .iter()
        .map(|f| {
            let p = if f.at_time {
                f.point.shift(&w.time)
            } else {
                f.point.clone()
            };
            CheckedFact {
                label: f.label.clone(),
                holds: p.in_cylinder(&f.cylinder) == f.expect_member,
            }
        })
        .collect();
    Validation {
        valid: checked_facts.iter().all(|c| c.holds),
        checked_facts,
    }
}

fn params(pairs: &[(&str, u64)]) -> BTreeMap<String, u64> {
    pairs.iter().map(|&(k, v)| (k.to_string(), v)).collect()
}

fn cyl(word: RleWord) -> Cylinder {
    Cylinder::new(word).expect("nonempty word")
}

/// With `O = [10]`, `U = [C_0..C_m]`, `V = [10^l]`: at time
/// `|C_0..C_m| + 8^{m+1}|C_0..C_m| - 1`, `x` sits on the last 1 of the
/// 1-part of `C_{m+1}` (so lands in `V`), while the closing point
/// `C_0..C_m Q_{m+1} ...` is deep inside `Q_{m+1}` and lies outside `O`.
pub fn witness_not_evp_x_10inf(m: u32, l: u32) -> Result<WitnessCertificate> {
    if l < 1 || m < l {
        return Err(Error::Precondition(format!(
            "need m >= l >= 1, got m={m}, l={l}"
        )));
    }
    let t = cum_c(m);
    let k = one_part(m + 1);
    let time = &t + &k - 1u32;
    let x = point_x();
    let p = closing_point(m);
    let o = Cylinder::binary("10")?;
    let u = cyl(c_prefix(m));
    let mut vword = String::from("1");
    vword.push_str(&"0".repeat(l as usize));
    let v = Cylinder::binary(&vword)?;
    // The 0-part of C_{m+1} is long enough to hold the whole tail of V.
    debug_assert!(zero_part(m + 1) >= BigUint::from(l));
    let zeros = cyl(RleWord::repeat(2, 0, 2u64.pow(m + 1))?);
    let facts = vec![
        fact("x in U", &x, false, &u, true),
        fact("p in U", &p, false, &u, true),
        fact("shift(x, time) in V", &x, true, &v, true),
        fact("shift(p, time) not in O", &p, true, &o, false),
        fact("shift(p, time) in [0^(2^(m+1))]", &p, true, &zeros, true),
    ];
    Ok(WitnessCertificate {
        claim: Claim::NotEvP_x_10inf,
        params: params(&[("m", m.into()), ("l", l.into())]),
        o,
        u,
        v,
        comparison_point: p,
        time,
        facts,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FixedTarget {
    Zero,
    One,
}

/// Smallest `m` such that `s^n` is a factor of `C_m`.
fn block_level(symbol: u8, n: u64) -> u32 {
    let n = BigUint::from(n);
    (0..)
        .find(|&m| {
            let run = if m == 0 {
                BigUint::from(1u32)
            } else if symbol == 1 {
                one_part(m)
            } else {
                zero_part(m)
            };
            run >= n
        })
        .expect("runs grow without bound")
}

/// `|W_0..W_{l-1}| + 2|W_0..W_{l-2}| + |C_0..C_{l-1}|`: where `y` holds the
/// copy of `Q_l C_0..C_l` at the end of the `W_{l-1}` inside `W_l`.
fn anchor(l: u32) -> BigUint {
    cum_w(l - 1) + cum_w(l - 2) * 2u32 + cum_c(l - 1)
}

fn anchor_cylinder(l: u32) -> Result<Cylinder> {
    Cylinder::new(q_word(l)?.concat(&c_prefix(l))?)
}

/// `(y, s^∞)` for `s` in `{0, 1}`. With `z = σ^{|W_0..W_{l-1}|}(y)`, which
/// begins with `W_l`, both points lie in `U = [W_0..W_n]`. At the anchor
/// time `y` enters `Q_l` while `z` sits in the 1-part of `C_l`.
pub fn witness_not_eqp_y_fixed(target: FixedTarget, n: u32) -> Result<WitnessCertificate> {
    if n == 0 {
        return Err(Error::Precondition("need n >= 1".into()));
    }
    let symbol = match target {
        FixedTarget::Zero => 0u8,
        FixedTarget::One => 1u8,
    };
    let m = block_level(symbol, n.into());
    let l = (n + 2).max(m + 2);
    let y = point_y();
    let z = y.shift(&cum_w(l - 1));
    let c = anchor(l);
    let u = cyl(w_prefix(n));
    let zeros_n = cyl(RleWord::repeat(2, 0, n)?);
    let ones_n = cyl(RleWord::repeat(2, 1, n)?);
    let ones_n1 = cyl(RleWord::repeat(2, 1, n + 1)?);
    let zero = Cylinder::binary("0")?;
    let one = Cylinder::binary("1")?;
    let anchor_cyl = anchor_cylinder(l)?;
    let mut facts = vec![
        fact("y in U", &y, false, &u, true),
        fact("z in U", &z, false, &u, true),
        fact(
            "shift(y, time) in [Q_l C_0..C_l]",
            &y,
            true,
            &anchor_cyl,
            true,
        ),
    ];
    let (claim, o, v) = match target {
        FixedTarget::Zero => {
            facts.push(fact("shift(y, time) in V", &y, true, &zeros_n, true));
            facts.push(fact(
                "shift(z, time) in [1^(n+1)]",
                &z,
                true,
                &ones_n1,
                true,
            ));
            facts.push(fact("shift(z, time) not in O", &z, true, &zero, false));
            (Claim::NotEqP_y_0inf, zero, zeros_n)
        }
        FixedTarget::One => {
            facts.push(fact("shift(z, time) in V", &z, true, &ones_n, true));
            facts.push(fact("shift(y, time) in [0]", &y, true, &zero, true));
            facts.push(fact("shift(y, time) not in O", &y, true, &one, false));
            (Claim::NotEqP_y_1inf, one, ones_n)
        }
    };
    Ok(WitnessCertificate {
        claim,
        params: params(&[("n", n.into()), ("m", m.into()), ("l", l.into())]),
        o,
        u,
        v,
        comparison_point: z,
        time: c,
        facts,
    })
}

/// Horizon for locating the first occurrence of the prefix in `y`.
const PREFIX_SEARCH_HORIZON: u64 = 1_000_000;

/// `(y, w)` for any `w` whose cylinder `O = [prefix]` contains both symbols.
/// `V` is the `n+1`-symbol extension of the prefix read off `y` at its first
/// occurrence; the time is the first occurrence of `V` in the copy of
/// `W_{l-1}` inside `W_l`, where `z = σ^{|W_0..W_{l-1}|}(y)` reads only 1s.
pub fn witness_not_eqp_y_general(prefix: &RleWord, n: u32) -> Result<WitnessCertificate> {
    if prefix.alphabet() != 2 || !prefix.contains_symbol(0) || !prefix.contains_symbol(1) {
        return Err(Error::Precondition(
            "prefix must be binary and contain both 0 and 1".into(),
        ));
    }
    if BigUint::from(n) < *prefix.len() {
        return Err(Error::Precondition("need n >= |prefix|".into()));
    }
    let y = point_y();
    let o = Cylinder::new(prefix.clone())?;
    let first = tau(&y, &o, &BigUint::from(PREFIX_SEARCH_HORIZON))?.ok_or_else(|| {
        Error::Inconclusive(format!(
            "prefix {prefix} not found in y below {PREFIX_SEARCH_HORIZON}"
        ))
    })?;
    let vword = y.shift(&first).prefix(&BigUint::from(n + 1))?;
    let v = Cylinder::new(vword.clone())?;
    let m = (0u32..)
        .find(|&m| {
            find_first(word_runs(&w_word(m)), &vword, &len_w(m))
                .expect("nonempty pattern")
                .is_some()
        })
        .expect("y's prefixes are factors of some W_m");
    let need = BigUint::from(n + 1);
    let l = ((n + 2).max(m + 2)..)
        .find(|&l| (BigUint::from(1u32) << (3 * (l - 1) as usize)) * len_c(l - 1) * 2u32 > need)
        .expect("left side grows without bound");
    let z = y.shift(&cum_w(l - 1));
    let start = cum_w(l - 1) + cum_w(l - 2);
    let stop = anchor(l);
    let offset = tau(&y.shift(&start), &v, &(&stop - &start))?.ok_or_else(|| {
        Error::Inconclusive(format!(
            "{v} does not occur in the W_{} copy inside W_{l}",
            l - 1
        ))
    })?;
    let time = start + offset;
    let u = cyl(w_prefix(n));
    let ones = cyl(RleWord::repeat(2, 1, n + 1)?);
    let facts = vec![
        fact("y in U", &y, false, &u, true),
        fact("z in U", &z, false, &u, true),
        fact("shift(y, time) in V", &y, true, &v, true),
        fact("shift(z, time) in [1^(n+1)]", &z, true, &ones, true),
        fact("shift(z, time) not in O", &z, true, &o, false),
    ];
    Ok(WitnessCertificate {
        claim: Claim::NotEqP_y_general,
        params: params(&[("n", n.into()), ("m", m.into()), ("l", l.into())]),
        o,
        u,
        v,
        comparison_point: z,
        time,
        facts,
    })
}
