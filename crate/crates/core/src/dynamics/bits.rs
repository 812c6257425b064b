//! Fixed-length bitsets over time indices.

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Bits {
    words: Vec<u64>,
    len: usize,
}

impl Bits {
    pub(crate) fn new(len: usize) -> Self {
        Bits {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub(crate) fn from_fn(len: usize, f: impl Fn(usize) -> bool) -> Self {
        let mut b = Bits::new(len);
        for i in 0..len {
            if f(i) {
                b.set(i);
            }
        }
        b
    }

    pub(crate) fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub(crate) fn clear(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    pub(crate) fn get(&self, i: usize) -> bool {
        i < self.len && self.words[i / 64] >> (i % 64) & 1 == 1
    }

    /// 64 bits starting at bit `i`; bits past the end read as zero.
    fn word_at(&self, i: usize) -> u64 {
        let (w, b) = (i / 64, i % 64);
        let lo = self.words.get(w).copied().unwrap_or(0) >> b;
        if b == 0 {
            lo
        } else {
            lo | self.words.get(w + 1).copied().unwrap_or(0) << (64 - b)
        }
    }

    fn trim(&mut self) {
        if !self.len.is_multiple_of(64) {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << (self.len % 64)) - 1;
            }
        }
    }

    /// `self[n] |= src[offset + n]` for every `n`.
    pub(crate) fn or_window(&mut self, src: &Bits, offset: usize) {
        for (w, word) in self.words.iter_mut().enumerate() {
            *word |= src.word_at(offset + 64 * w);
        }
        self.trim();
    }

    pub(crate) fn and_assign(&mut self, other: &Bits) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub(crate) fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(64 * w + b)
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shifted_or_matches_naive() {
        let src = Bits::from_fn(300, |i| i % 7 == 3 || i % 11 == 0);
        for offset in [0, 1, 5, 63, 64, 65, 130, 299, 400] {
            let mut dst = Bits::new(100);
            dst.or_window(&src, offset);
            for n in 0..100 {
                assert_eq!(dst.get(n), src.get(offset + n), "offset {offset} n {n}");
            }
        }
    }

    #[test]
    fn ones_lists_set_bits() {
        let b = Bits::from_fn(200, |i| i % 50 == 1);
        assert_eq!(b.ones().collect::<Vec<_>>(), vec![1, 51, 101, 151]);
    }
}
