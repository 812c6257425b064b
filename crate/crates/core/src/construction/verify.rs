//! Exact checks of the length inequalities and the hitting-order chain.

use num_bigint::BigUint;
use serde::Serialize;

use super::lengths::{cum_c, cum_w, len_c, len_w, one_part};
use super::words::{c_runs, closing_point, point_x, q_word, tau};
use crate::error::{Error, Result};
use crate::symbolic_point::Cylinder;

/// One evaluated inequality `lhs >= rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub lemma: &'static str,
    pub n: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(serialize_with = "crate::serde_dec::ser")]
    pub lhs: BigUint,
    #[serde(serialize_with = "crate::serde_dec::ser")]
    pub rhs: BigUint,
    pub holds: bool,
}

fn pow8(e: u32) -> BigUint {
    BigUint::from(1u32) << (3 * e as usize)
}

/// `6·8^{n+1}|C_{n+1}|` against `|W_0..W_n C_0..C_{n+1}| + 2|W_n|`.
pub fn verify_claim1(n: u32) -> LemmaReport {
    let lhs = pow8(n + 1) * len_c(n + 1) * 6u32;
    let rhs = cum_w(n) + cum_c(n + 1) + len_w(n) * 2u32;
    LemmaReport {
        lemma: "claim1",
        n,
        k: None,
        holds: lhs >= rhs,
        lhs,
        rhs,
    }
}

/// `6·8^{n+1+k}|C_{n+1+k}|` against
/// `|W_0..W_{n+k} C_0..C_{n+1+k}| + Σ_{i<k} |W_{n+1+i}|`.
pub fn verify_corollary(n: u32, k: u32) -> LemmaReport {
    let lhs = pow8(n + 1 + k) * len_c(n + 1 + k) * 6u32;
    let mut rhs = cum_w(n + k) + cum_c(n + 1 + k);
    for i in 0..k {
        rhs += len_w(n + 1 + i);
    }
    LemmaReport {
        lemma: "corollary",
        n,
        k: Some(k),
        holds: lhs >= rhs,
        lhs,
        rhs,
    }
}

/// The 1-part of `C_{n+2}` against the claim's left side plus two more
/// multiples of `8^{n+1}|C_{n+1}|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OnePartReport {
    pub lemma: &'static str,
    pub n: u32,
    #[serde(serialize_with = "crate::serde_dec::ser")]
    pub one_part_len: BigUint,
    #[serde(serialize_with = "crate::serde_dec::ser")]
    pub claim1_lhs: BigUint,
    #[serde(serialize_with = "crate::serde_dec::ser")]
    pub rhs: BigUint,
    pub holds: bool,
}

pub fn verify_one_part_remark(n: u32) -> OnePartReport {
    let one = one_part(n + 2);
    let unit = pow8(n + 1) * len_c(n + 1);
    let claim1_lhs = &unit * 6u32;
    let rhs = &claim1_lhs + &unit * 2u32;
    OnePartReport {
        lemma: "one_part",
        n,
        holds: one >= rhs,
        one_part_len: one,
        claim1_lhs,
        rhs,
    }
}

/// One level of the chain `τ(x,[C_k]) <= τ(z,[Q_k C_0]) <= 6·8^{k-1}|C_{k-1}|`
/// closed by the entry time of `x` into the 0-part of `C_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HittingOrderRow {
    pub k: u32,
    #[serde(rename = "tauX_Ck", serialize_with = "crate::serde_dec::ser")]
    pub tau_x_ck: BigUint,
    #[serde(rename = "tauZ_QkC0", serialize_with = "crate::serde_dec::ser_opt")]
    pub tau_z_qkc0: Option<BigUint>,
    #[serde(serialize_with = "crate::serde_dec::ser")]
    pub bound: BigUint,
    #[serde(serialize_with = "crate::serde_dec::ser")]
    pub x_zero_part_entry: BigUint,
    pub holds: bool,
}

/// Evaluates the chain for `z = closing_point(n)` and every `k` in
/// `n+1..=k_max`. Both hitting times are found by search; `τ(z, ·)` is
/// searched no further than the bound it must respect.
pub fn verify_hitting_order(n: u32, k_max: u32) -> Result<Vec<HittingOrderRow>> {
    if n >= k_max {
        return Err(Error::Precondition(format!(
            "need n < k_max, got n={n}, k_max={k_max}"
        )));
    }
    let x = point_x();
    let z = closing_point(n);
    let mut rows = Vec::new();
    for k in n + 1..=k_max {
        let bound = pow8(k - 1) * len_c(k - 1) * 6u32;
        let entry = cum_c(k - 1) + one_part(k);
        let ck = Cylinder::new(c_runs(k))?;
        let tau_x = tau(&x, &ck, &entry)?.ok_or_else(|| {
            Error::Inconclusive(format!("x does not enter [C_{k}] before its 1-part ends"))
        })?;
        let qc = Cylinder::new(q_word(k)?.concat(&c_runs(0))?)?;
        let tau_z = tau(&z, &qc, &bound)?;
        let holds = match &tau_z {
            Some(t) => tau_x <= *t && *t <= bound && bound <= entry,
            None => false,
        };
        rows.push(HittingOrderRow {
            k,
            tau_x_ck: tau_x,
            tau_z_qkc0: tau_z,
            bound,
            x_zero_part_entry: entry,
            holds,
        });
    }
    Ok(rows)
}
