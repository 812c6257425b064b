//! The construction's points and finite words, and first-hitting times.

use num_bigint::BigUint;

use super::blocks::{Block, Stream};
use super::lengths::{len_q, one_part, zero_part};
use crate::error::{Error, Result};
use crate::rle_word::{find_first, Position, RleWord};
use crate::symbolic_point::{Cylinder, Generator, SymbolicPoint};

/// `C_n` in run form: `[(1,1),(0,1)]` for `n = 0`, otherwise the 1-part and
/// 0-part as two runs.
pub fn c_runs(n: u32) -> RleWord {
    if n == 0 {
        return RleWord::binary("10").expect("binary");
    }
    RleWord::new(2, [(1u8, one_part(n)), (0u8, zero_part(n))]).expect("positive runs")
}

/// `Q_n = 0^{|C_n|}` for `n >= 1`.
pub fn q_word(n: u32) -> Result<RleWord> {
    if n == 0 {
        return Err(Error::Precondition("Q_n is defined for n >= 1".into()));
    }
    RleWord::repeat(2, 0, len_q(n))
}

/// `W_n` in run form. The run count roughly doubles with `n`.
pub fn w_word(n: u32) -> RleWord {
    Block::W(n).to_word()
}

/// `C_0 C_1 .. C_n`.
pub fn c_prefix(n: u32) -> RleWord {
    (1..=n).fold(c_runs(0), |acc, k| acc.concat(&c_runs(k)).expect("binary"))
}

/// `W_0 W_1 .. W_n`.
pub fn w_prefix(n: u32) -> RleWord {
    (1..=n).fold(w_word(0), |acc, k| acc.concat(&w_word(k)).expect("binary"))
}

/// `x = C_0 C_1 C_2 ...`
pub fn point_x() -> SymbolicPoint {
    SymbolicPoint::new(Generator::Construction(Stream::X))
}

/// `y = W_0 W_1 W_2 ...`
pub fn point_y() -> SymbolicPoint {
    SymbolicPoint::new(Generator::Construction(Stream::Y))
}

/// `C_0 .. C_n Q_{n+1} W_{n+1} W_{n+2} ...`
pub fn closing_point(n: u32) -> SymbolicPoint {
    SymbolicPoint::new(Generator::Construction(Stream::Closing(n)))
}

/// Least `t` in `0..=horizon` with `σ^t(p)` in the cylinder. Unlike the
/// hitting-time sets of the dynamics module, `t = 0` counts.
pub fn tau(p: &SymbolicPoint, c: &Cylinder, horizon: &BigUint) -> Result<Option<Position>> {
    let limit = horizon + c.len();
    find_first(p.runs_until(limit), &c.word, horizon)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn c_run_forms() {
        assert_eq!(c_runs(1), RleWord::new(2, [(1u8, 16u32), (0, 4)]).unwrap());
        assert_eq!(
            c_runs(2),
            RleWord::new(2, [(1u8, 1408u32), (0, 88)]).unwrap()
        );
        assert_eq!(*c_runs(0).len(), b(2));
        assert_eq!(c_runs(2).symbol_at(&b(1495)).unwrap(), 0);
    }

    #[test]
    fn point_prefixes() {
        assert_eq!(
            point_x().prefix(&b(2)).unwrap(),
            RleWord::binary("10").unwrap()
        );
        let y22 = RleWord::new(2, [(1u8, 1u32), (0, 21)]).unwrap();
        assert_eq!(point_y().prefix(&b(22)).unwrap(), y22);
        let cyl = Cylinder::new(c_prefix(1).concat(&q_word(2).unwrap()).unwrap()).unwrap();
        assert!(closing_point(1).in_cylinder(&cyl));
        assert_eq!(
            point_y().shift(&b(2)).prefix(&b(20)).unwrap(),
            RleWord::repeat(2, 0, 20u32).unwrap()
        );
    }

    #[test]
    fn hitting_times_of_the_construction() {
        let h = b(10_000);
        let c2 = Cylinder::new(c_runs(2)).unwrap();
        assert_eq!(tau(&point_x(), &c2, &h).unwrap(), Some(b(22)));
        let q1c0 = Cylinder::new(q_word(1).unwrap().concat(&c_runs(0)).unwrap()).unwrap();
        assert_eq!(tau(&point_y(), &q1c0, &h).unwrap(), Some(b(2)));
        let zeros = Cylinder::binary("0000").unwrap();
        assert_eq!(tau(&point_x(), &zeros, &h).unwrap(), Some(b(18)));
        assert_eq!(tau(&point_x(), &zeros, &b(17)).unwrap(), None);
    }

    #[test]
    fn run_locate_on_x() {
        let x = point_x();
        let r = x.run_locate(&b(5)).unwrap();
        assert_eq!((r.symbol, r.start, r.end), (1, b(2), b(17)));
        let r = x.run_locate(&b(19)).unwrap();
        assert_eq!((r.symbol, r.start, r.end), (0, b(18), b(21)));
    }
}
