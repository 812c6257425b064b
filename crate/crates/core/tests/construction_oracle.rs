mod common;

use num_bigint::BigUint;
use proptest::prelude::*;
use symdyn_core::construction::{
    check_evp_x_0inf, closing_point, cum_c, cum_w, len_c, len_w, point_x, validate_certificate,
    verify_claim1, verify_corollary, verify_hitting_order, verify_one_part_remark,
    witness_not_eqp_y_fixed, witness_not_eqp_y_general, witness_not_evp_x_10inf, FixedTarget,
    WitnessCertificate,
};
use symdyn_core::{Error, RleWord};

fn b(v: u64) -> BigUint {
    BigUint::from(v)
}

/// Lengths from the recurrences, independent of the library's closed forms:
/// `(|C_n|, |C_0..C_n|, |W_n|, |W_0..W_n|)` for `n <= top`.
fn length_table(top: usize) -> Vec<(BigUint, BigUint, BigUint, BigUint)> {
    let mut c = vec![b(2)];
    let mut cc = vec![b(2)];
    for n in 1..=top + 1 {
        let prev = cc[n - 1].clone();
        let len = (BigUint::from(8u32).pow(n as u32) + BigUint::from(2u32).pow(n as u32)) * &prev;
        cc.push(&prev + &len);
        c.push(len);
    }
    let mut w = vec![&c[0] + &c[1]];
    let mut cw = vec![w[0].clone()];
    for n in 1..=top {
        // W_n = W_0..W_{n-1} C_0..C_n Q_{n+1}
        let len = &cw[n - 1] + &cc[n] + &c[n + 1];
        cw.push(&cw[n - 1] + &len);
        w.push(len);
    }
    (0..=top)
        .map(|n| (c[n].clone(), cc[n].clone(), w[n].clone(), cw[n].clone()))
        .collect()
}

#[test]
fn lengths_match_recurrence_oracle() {
    for (n, (c, cc, w, cw)) in length_table(40).into_iter().enumerate() {
        let n = n as u32;
        assert_eq!(
            (len_c(n), cum_c(n), len_w(n), cum_w(n)),
            (c, cc, w, cw),
            "n = {n}"
        );
    }
}

#[test]
fn claim1_holds_for_n_up_to_64_with_exact_sides() {
    let t = length_table(65);
    for n in 0..=64usize {
        let r = verify_claim1(n as u32);
        let lhs = BigUint::from(6u32) * BigUint::from(8u32).pow(n as u32 + 1) * &t[n + 1].0;
        let rhs = &t[n].3 + &t[n + 1].1 + &t[n].2 * 2u32;
        assert_eq!((&r.lhs, &r.rhs), (&lhs, &rhs), "n = {n}");
        assert!(r.holds && lhs >= rhs);
    }
    assert_eq!(
        (verify_claim1(0).lhs, verify_claim1(0).rhs),
        (b(960), b(88))
    );
    assert_eq!(
        (verify_claim1(1).lhs, verify_claim1(1).rhs),
        (b(574_464), b(6160))
    );
}

#[test]
fn corollary_and_one_part() {
    let t = length_table(30);
    for n in 0..8usize {
        for k in 0..8usize {
            let r = verify_corollary(n as u32, k as u32);
            let mut rhs = &t[n + k].3 + &t[n + 1 + k].1;
            for i in 0..k {
                rhs += &t[n + 1 + i].2;
            }
            assert_eq!(r.rhs, rhs);
            assert!(r.holds);
        }
    }
    for n in 0..20 {
        assert!(verify_one_part_remark(n).holds);
    }
    let o = verify_one_part_remark(0);
    assert_eq!(
        (o.one_part_len, o.claim1_lhs, o.rhs),
        (b(1408), b(960), b(1280))
    );
}

#[test]
fn hitting_order_rows() {
    let rows = verify_hitting_order(1, 6).unwrap();
    assert_eq!(rows.len(), 5);
    assert!(rows.iter().all(|r| r.holds));
    let pinned = [
        (2, 22u64, 22u64, 960u64, 1430u64),
        (3, 1518, 4598, 574_464, 778_734),
    ];
    for (row, (k, tx, tz, bound, entry)) in rows.iter().zip(pinned) {
        assert_eq!(row.k, k);
        assert_eq!(row.tau_x_ck, b(tx));
        assert_eq!(row.tau_z_qkc0, Some(b(tz)));
        assert_eq!(
            (row.bound.clone(), row.x_zero_part_entry.clone()),
            (b(bound), b(entry))
        );
    }
    let last = &rows[4];
    assert_eq!(last.tau_x_ck, b(106_697_756_700_414));
    assert_eq!(last.tau_z_qkc0, Some(b(320_106_287_978_070)));
    assert_eq!(last.bound.to_string(), "20976993006885273600");
    assert_eq!(last.x_zero_part_entry.to_string(), "27970283430230028030");

    // The small rows against a plain substring search.
    let x = common::x_prefix(800_000);
    let z = common::closing_prefix(1, 800_000);
    let c = common::c_strings(3);
    let digits = |s: &str| s.bytes().map(|d| d - b'0').collect::<Vec<u8>>();
    for (row, k) in rows.iter().take(2).zip(2..) {
        let ck = digits(&c[k]);
        let qc: Vec<u8> = std::iter::repeat_n(0, c[k].len()).chain([1, 0]).collect();
        assert_eq!(
            common::naive_find(&x, &ck, x.len()),
            Some((&row.tau_x_ck).try_into().unwrap())
        );
        let tz: usize = row.tau_z_qkc0.clone().unwrap().try_into().unwrap();
        assert_eq!(common::naive_find(&z, &qc, z.len()), Some(tz));
    }
}

fn assert_sharp(w: &WitnessCertificate) {
    let v = validate_certificate(w);
    assert!(v.valid, "{:?}: {:?}", w.claim, v.checked_facts);
    assert!(
        !validate_certificate(&w.with_time(&w.time + 1u32)).valid,
        "{:?} +1",
        w.claim
    );
    assert!(
        !validate_certificate(&w.with_time(&w.time - 1u32)).valid,
        "{:?} -1",
        w.claim
    );
}

#[test]
fn certificates_validate_and_are_sharp() {
    let evp = [
        (1, 1, "1429"),
        (2, 1, "778733"),
        (2, 2, "778733"),
        (3, 2, "3240227165"),
    ];
    for (m, l, time) in evp {
        let w = witness_not_evp_x_10inf(m, l).unwrap();
        assert_eq!(w.time.to_string(), time);
        assert_sharp(&w);
    }
    for (n, l, time) in [
        (1, 3, "798644"),
        (2, 4, "3256848100"),
        (3, 5, "106714027458500"),
    ] {
        let w = witness_not_eqp_y_fixed(FixedTarget::Zero, n).unwrap();
        assert_eq!((w.params["l"], w.time.to_string()), (l, time.to_string()));
        assert_sharp(&w);
        assert_sharp(&witness_not_eqp_y_fixed(FixedTarget::One, n).unwrap());
    }
    for (p, time) in [("10", "3255263220"), ("01", "3255263241")] {
        let w = witness_not_eqp_y_general(&RleWord::binary(p).unwrap(), 2).unwrap();
        assert_eq!(w.time.to_string(), time);
        assert_sharp(&w);
    }
    // Times past 2^64 still validate.
    let w = witness_not_eqp_y_general(&RleWord::binary("10").unwrap(), 4).unwrap();
    assert!(w.time > b(u64::MAX) / 2u32);
    assert_sharp(&w);
}

#[test]
fn evp_certificate_against_expanded_x() {
    let w = witness_not_evp_x_10inf(1, 1).unwrap();
    let x = common::x_prefix(2000);
    let p = common::closing_prefix(1, 2000);
    assert_eq!(&x[1429..1431], &[1, 0]);
    assert_eq!(p[1429], 0);
    assert_eq!(&x[..22], &p[..22]);
    assert_eq!(w.comparison_point, closing_point(1));
}

#[test]
fn certificate_json_keeps_big_times_exact() {
    let w = witness_not_eqp_y_fixed(FixedTarget::One, 3).unwrap();
    let v = serde_json::to_value(&w).unwrap();
    assert_eq!(v["time"], serde_json::Value::String(w.time.to_string()));
    let back: WitnessCertificate = serde_json::from_value(v).unwrap();
    assert_eq!(back, w);
}

#[test]
fn evp_x_zero_evidence_is_clean() {
    let r = check_evp_x_0inf(2, 100_000, 100_000).unwrap();
    assert_eq!(r.violation_count, 0);
    assert!(r.violations.is_empty());
    assert!(r.trigger_times > 0);
    assert_eq!(point_x().symbol_at(&b(0)), 1);
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::with_cases(12) })]

    #[test]
    fn general_certificates_for_mixed_prefixes(bits in prop::collection::vec(0u8..2, 2..5), extra in 0u32..2) {
        prop_assume!(bits.contains(&0) && bits.contains(&1));
        let n = bits.len() as u32 + extra;
        let prefix = RleWord::from_symbols(2, &bits).unwrap();
        match witness_not_eqp_y_general(&prefix, n) {
            Ok(w) => assert_sharp(&w),
            Err(Error::Inconclusive(_)) => {}
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }
}
