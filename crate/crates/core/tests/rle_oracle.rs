mod common;

use num_bigint::BigUint;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use symdyn_core::rle_word::word_runs;
use symdyn_core::{find_first, Error, RleWord};

fn digits(w: &[u8]) -> String {
    w.iter().map(|&d| char::from(b'0' + d)).collect()
}

/// Random binary word whose runs are drawn short or long, so patterns both
/// straddle and sit inside runs.
fn random_word(rng: &mut ChaCha8Rng, max_len: usize) -> Vec<u8> {
    let len = rng.gen_range(1..=max_len);
    let mut out = Vec::with_capacity(len);
    let mut sym = rng.gen_range(0..2u8);
    while out.len() < len {
        let run = if rng.gen_bool(0.2) {
            rng.gen_range(1..=64)
        } else {
            rng.gen_range(1..=4)
        };
        out.extend(std::iter::repeat_n(sym, run.min(len - out.len())));
        sym ^= 1;
    }
    out
}

#[test]
fn find_first_agrees_with_naive_search_on_10k_cases() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for case in 0..10_000 {
        let text = random_word(&mut rng, if case % 10 == 0 { 10_000 } else { 400 });
        let pat = if rng.gen_bool(0.5) && text.len() > 2 {
            // Lift a factor of the text so matches are common.
            let a = rng.gen_range(0..text.len() - 1);
            let b = rng.gen_range(a + 1..=text.len().min(a + 12));
            text[a..b].to_vec()
        } else {
            random_word(&mut rng, 8)
        };
        let horizon = if rng.gen_bool(0.8) {
            text.len()
        } else {
            rng.gen_range(0..text.len())
        };
        let tw = RleWord::from_symbols(2, &text).unwrap();
        let pw = RleWord::from_symbols(2, &pat).unwrap();
        let got = find_first(word_runs(&tw), &pw, &BigUint::from(horizon)).unwrap();
        let want = common::naive_find(&text, &pat, horizon).map(BigUint::from);
        assert_eq!(
            got,
            want,
            "case {case}: pattern {} horizon {horizon}",
            digits(&pat)
        );
    }
}

#[test]
fn find_first_rejects_empty_pattern() {
    let t = RleWord::binary("101").unwrap();
    let e = find_first(word_runs(&t), &RleWord::empty(2), &BigUint::from(5u32));
    assert_eq!(e, Err(Error::InvalidPattern));
}

fn word_strategy() -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(0u8..2, 0..200)
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::with_cases(300) })]

    #[test]
    fn symbol_at_concat_power_match_naive(a in word_strategy(), b in word_strategy(), k in 1u64..5) {
        let wa = RleWord::from_symbols(2, &a).unwrap();
        let wb = RleWord::from_symbols(2, &b).unwrap();
        let cat = wa.concat(&wb).unwrap();
        let mut naive = a.clone();
        naive.extend(&b);
        prop_assert_eq!(cat.expand(1_000_000).unwrap(), naive.clone());
        prop_assert_eq!(cat.len(), &BigUint::from(naive.len()));
        for (i, &s) in naive.iter().enumerate() {
            prop_assert_eq!(cat.symbol_at(&BigUint::from(i)).unwrap(), s);
        }
        prop_assert!(cat.symbol_at(&BigUint::from(naive.len())).is_err());
        if !a.is_empty() {
            let p = wa.power(k).unwrap();
            prop_assert_eq!(p.expand(1_000_000).unwrap(), a.repeat(k as usize));
        }
    }

    #[test]
    fn concat_is_associative(a in word_strategy(), b in word_strategy(), c in word_strategy()) {
        let (wa, wb, wc) = (
            RleWord::from_symbols(2, &a).unwrap(),
            RleWord::from_symbols(2, &b).unwrap(),
            RleWord::from_symbols(2, &c).unwrap(),
        );
        let left = wa.concat(&wb).unwrap().concat(&wc).unwrap();
        let right = wa.concat(&wb.concat(&wc).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn normal_form_is_idempotent(runs in prop::collection::vec((0u8..3, 1u32..50), 1..30)) {
        let w = RleWord::new(3, runs.iter().copied()).unwrap();
        let again = RleWord::new(3, w.runs().iter().map(|r| (r.symbol, r.count.clone()))).unwrap();
        prop_assert_eq!(&again, &w);
        prop_assert!(w.runs().windows(2).all(|p| p[0].symbol != p[1].symbol));
        let total: u64 = runs.iter().map(|r| u64::from(r.1)).sum();
        prop_assert_eq!(w.len(), &BigUint::from(total));
    }

    #[test]
    fn json_round_trip_is_exact(runs in prop::collection::vec((0u8..2, 1u64..u64::MAX), 1..10)) {
        let w = RleWord::new(2, runs.iter().copied()).unwrap();
        let text = serde_json::to_string(&w).unwrap();
        let back: RleWord = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, w);
    }
}
