mod common;

use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use proptest::prelude::*;
use symdyn_core::construction::{
    c_runs, closing_point, cum_c, cum_w, len_c, len_q, len_w, point_x, point_y, q_word, tau,
};
use symdyn_core::{Cylinder, RleWord, SymbolicPoint};

const N: usize = 100_000;

fn b(v: u64) -> BigUint {
    BigUint::from(v)
}

#[test]
fn x_and_y_match_full_expansion_below_1e5() {
    for (p, oracle) in [
        (point_x(), common::x_prefix(N)),
        (point_y(), common::y_prefix(N)),
    ] {
        let fast = p.expand(N as u64).unwrap();
        assert_eq!(fast, oracle);
        // symbol_at resolves each position independently of the run stream.
        for q in (0..N).step_by(7) {
            assert_eq!(p.symbol_at(&b(q as u64)), oracle[q], "{p} at {q}");
        }
    }
}

#[test]
fn closing_points_match_expansion() {
    for n in 0..=2 {
        let oracle = common::closing_prefix(n, 50_000);
        assert_eq!(
            closing_point(n as u32).expand(50_000).unwrap(),
            oracle,
            "closing({n})"
        );
    }
}

#[test]
fn lengths_match_expanded_words() {
    let c = common::c_strings(3);
    let w = common::w_strings(2);
    let mut cum = 0;
    for (n, s) in c.iter().enumerate() {
        cum += s.len();
        assert_eq!(len_c(n as u32), b(s.len() as u64));
        assert_eq!(cum_c(n as u32), b(cum as u64));
        if n >= 1 {
            assert_eq!(len_q(n as u32), b(s.len() as u64));
        }
    }
    let mut cum = 0;
    for (n, s) in w.iter().enumerate() {
        cum += s.len();
        assert_eq!(len_w(n as u32), b(s.len() as u64));
        assert_eq!(cum_w(n as u32), b(cum as u64));
    }
}

#[test]
fn tau_values_are_minimal() {
    let x = point_x();
    let y = point_y();
    let c2 = Cylinder::new(c_runs(2)).unwrap();
    let q1c0 = Cylinder::new(q_word(1).unwrap().concat(&c_runs(0)).unwrap()).unwrap();
    let z4 = Cylinder::binary("0000").unwrap();
    let h = b(10_000);
    for (p, c, expected) in [(&x, &c2, 22u64), (&y, &q1c0, 2), (&x, &z4, 18)] {
        assert_eq!(tau(p, c, &h).unwrap(), Some(b(expected)));
        for t in 0..expected {
            assert!(!p.shift(&b(t)).in_cylinder(c), "{c} already at {t}");
        }
        assert!(p.shift(&b(expected)).in_cylinder(c));
    }
}

#[test]
fn run_locate_at_huge_positions_is_consistent() {
    let x = point_x();
    let y = point_y();
    let big = BigUint::from(10u32).pow(40);
    for p in [&x, &y, &closing_point(3)] {
        for q in [
            big.clone(),
            &big * 3u32 + 17u32,
            cum_w(20) - 1u32,
            cum_c(25),
        ] {
            let r = p.run_locate(&q).unwrap();
            assert!(r.start <= q && q <= r.end);
            assert_eq!(p.symbol_at(&r.start), r.symbol);
            assert_eq!(p.symbol_at(&r.end), r.symbol);
            assert_ne!(p.symbol_at(&(&r.end + 1u32)), r.symbol);
            if r.start > BigUint::default() {
                assert_ne!(p.symbol_at(&(&r.start - 1u32)), r.symbol);
            }
        }
    }
}

fn y_oracle() -> &'static [u8] {
    // Covers the 0-run that starts inside W_2 and ends at 794000.
    static Y: OnceLock<Vec<u8>> = OnceLock::new();
    Y.get_or_init(|| {
        let mut y = common::y_prefix(800_000);
        assert_eq!(y.len(), 794_002);
        // W_3 opens with W_0 = 1 0 ..
        y.extend([1, 0]);
        y
    })
}

fn points() -> Vec<SymbolicPoint> {
    vec![
        point_x(),
        point_y(),
        closing_point(1),
        closing_point(4),
        SymbolicPoint::binary_periodic("1", "0").unwrap(),
        SymbolicPoint::binary_periodic("0110", "100").unwrap(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::with_cases(200) })]

    #[test]
    fn shift_and_symbol_cohere(which in 0usize..6, t in any::<u128>(), q in any::<u64>()) {
        let p = &points()[which];
        let t = BigUint::from(t);
        let q = BigUint::from(q);
        prop_assert_eq!(p.shift(&t).symbol_at(&q), p.symbol_at(&(&t + &q)));
        let a = BigUint::from(3u32);
        prop_assert_eq!(p.shift(&t).shift(&a), p.shift(&(&t + &a)));
    }

    #[test]
    fn run_locate_agrees_with_symbol_at(which in 0usize..4, q in any::<u128>()) {
        let p = &points()[which];
        let q = BigUint::from(q);
        let r = p.run_locate(&q).unwrap();
        prop_assert!(r.start <= q && q <= r.end);
        prop_assert_eq!(p.symbol_at(&q), r.symbol);
        prop_assert_ne!(p.symbol_at(&(&r.end + 1u32)), r.symbol);
        if r.start > BigUint::default() {
            prop_assert_ne!(p.symbol_at(&(&r.start - 1u32)), r.symbol);
        }
    }

    #[test]
    fn run_locate_small_positions_match_oracle(q in 0usize..20_000) {
        let oracle = y_oracle();
        let r = point_y().run_locate(&b(q as u64)).unwrap();
        let (s, e) = (r.start.to_usize().unwrap(), r.end.to_usize().unwrap());
        prop_assert!(oracle[s..=e].iter().all(|&c| c == r.symbol));
        prop_assert!(s == 0 || oracle[s - 1] != r.symbol);
        prop_assert_ne!(oracle[e + 1], r.symbol);
    }
}

#[test]
fn prefixes_are_run_words() {
    let x = point_x();
    let expected = RleWord::new(2, [(1u8, 1u32), (0, 1), (1, 16), (0, 4)]).unwrap();
    assert_eq!(x.prefix(&b(22)).unwrap(), expected);
    // A prefix reaching far past 2^64 still has only a few runs.
    let w = x.prefix(&cum_c(12)).unwrap();
    assert_eq!(w.runs().len(), 26);
    assert_eq!(*w.len(), cum_c(12));
}
