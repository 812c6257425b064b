//! Exact lengths of the construction's words.
//!
//! `|C_0| = 2`, `|C_n| = (8^n + 2^n) |C_0..C_{n-1}|`, `|Q_n| = |C_n|`,
//! `|W_0| = |C_0| + |Q_1|` and `|W_n| = |W_0..W_{n-1}| + |C_0..C_n| + |Q_{n+1}|`.
//! Rows are memoized in a process-wide table; concurrent fills write
//! identical values so readers never observe a partially computed row.

use std::sync::{Arc, RwLock};

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq)]
struct Row {
    /// Length of the 1-part of `C_n` (for `n = 0`, the single leading 1).
    one_part: BigUint,
    /// Length of the 0-part of `C_n`.
    zero_part: BigUint,
    len_c: BigUint,
    cum_c: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct WRow {
    len_w: BigUint,
    cum_w: BigUint,
}

static C_ROWS: RwLock<Vec<Arc<Row>>> = RwLock::new(Vec::new());
static W_ROWS: RwLock<Vec<Arc<WRow>>> = RwLock::new(Vec::new());

fn c_row(n: u32) -> Arc<Row> {
    let n = n as usize;
    if let Some(row) = C_ROWS.read().expect("length table poisoned").get(n) {
        return Arc::clone(row);
    }
    let mut rows = C_ROWS.write().expect("length table poisoned");
    while rows.len() <= n {
        let k = rows.len();
        let row = if k == 0 {
            Row {
                one_part: BigUint::one(),
                zero_part: BigUint::one(),
                len_c: BigUint::from(2u32),
                cum_c: BigUint::from(2u32),
            }
        } else {
            let prev = &rows[k - 1].cum_c;
            let one_part = (BigUint::one() << (3 * k)) * prev;
            let zero_part = (BigUint::one() << k) * prev;
            let len_c = &one_part + &zero_part;
            let cum_c = prev + &len_c;
            Row {
                one_part,
                zero_part,
                len_c,
                cum_c,
            }
        };
        rows.push(Arc::new(row));
    }
    Arc::clone(&rows[n])
}

fn w_row(n: u32) -> Arc<WRow> {
    let idx = n as usize;
    if let Some(row) = W_ROWS.read().expect("length table poisoned").get(idx) {
        return Arc::clone(row);
    }
    // Compute C rows first: never hold both locks.
    let needed: Vec<(BigUint, BigUint)> = (0..=n + 1)
        .map(|k| {
            let r = c_row(k);
            (r.len_c.clone(), r.cum_c.clone())
        })
        .collect();
    let mut rows = W_ROWS.write().expect("length table poisoned");
    while rows.len() <= idx {
        let k = rows.len();
        let len_q_next = &needed[k + 1].0;
        let cum_c_k = &needed[k].1;
        let len_w = if k == 0 {
            &needed[0].0 + len_q_next
        } else {
            &rows[k - 1].cum_w + cum_c_k + len_q_next
        };
        let cum_w = if k == 0 {
            len_w.clone()
        } else {
            &rows[k - 1].cum_w + &len_w
        };
        rows.push(Arc::new(WRow { len_w, cum_w }));
    }
    Arc::clone(&rows[idx])
}

/// `|C_n|`.
pub fn len_c(n: u32) -> BigUint {
    c_row(n).len_c.clone()
}

/// `|Q_n|`; defined for `n >= 1` and equal to `|C_n|`.
pub fn len_q(n: u32) -> BigUint {
    len_c(n)
}

/// `|C_0 C_1 .. C_n|`.
pub fn cum_c(n: u32) -> BigUint {
    c_row(n).cum_c.clone()
}

/// Length of the 1-part of `C_n`: `8^n |C_0..C_{n-1}|` for `n >= 1`.
pub fn one_part(n: u32) -> BigUint {
    c_row(n).one_part.clone()
}

/// Length of the 0-part of `C_n`: `2^n |C_0..C_{n-1}|` for `n >= 1`.
pub fn zero_part(n: u32) -> BigUint {
    c_row(n).zero_part.clone()
}

/// `|W_n|`.
pub fn len_w(n: u32) -> BigUint {
    w_row(n).len_w.clone()
}

/// `|W_0 W_1 .. W_n|`.
pub fn cum_w(n: u32) -> BigUint {
    w_row(n).cum_w.clone()
}

/// One slice of the length table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LengthRow {
    pub n: u32,
    #[serde(serialize_with = "crate::serde_dec::ser")]
    pub len_c: BigUint,
    #[serde(serialize_with = "crate::serde_dec::ser")]
    pub len_q: BigUint,
    #[serde(serialize_with = "crate::serde_dec::ser")]
    pub len_w: BigUint,
    #[serde(serialize_with = "crate::serde_dec::ser")]
    pub cum_c: BigUint,
    #[serde(serialize_with = "crate::serde_dec::ser")]
    pub cum_w: BigUint,
}

/// All tabulated lengths at level `n`. `len_q` at level 0 is reported as 0
/// since `Q_0` is not part of the construction.
pub fn lengths(n: u32) -> LengthRow {
    LengthRow {
        n,
        len_c: len_c(n),
        len_q: if n == 0 { BigUint::default() } else { len_q(n) },
        len_w: len_w(n),
        cum_c: cum_c(n),
        cum_w: cum_w(n),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn small_values() {
        assert_eq!(len_c(0), b(2));
        assert_eq!(len_c(1), b(20));
        assert_eq!(cum_c(1), b(22));
        assert_eq!(len_w(0), b(22));
        assert_eq!(len_c(2), b(1496));
        assert_eq!(len_w(1), b(1540));
        assert_eq!(one_part(2), b(1408));
        assert_eq!(zero_part(2), b(88));
    }

    #[test]
    fn leaves_u64_at_six() {
        use num_traits::ToPrimitive;
        assert_eq!(len_c(5).to_u64(), Some(106_694_503_819_200));
        assert!(len_c(6).to_u64().is_none());
    }

    #[test]
    fn concurrent_fills_agree() {
        let handles: Vec<_> = (0..8)
            .map(|i| std::thread::spawn(move || (len_w(30 + i % 3), cum_c(40))))
            .collect();
        let results: Vec<_> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        for (i, (w, c)) in results.iter().enumerate() {
            assert_eq!(*w, len_w(30 + (i as u32) % 3));
            assert_eq!(*c, cum_c(40));
        }
    }
}
