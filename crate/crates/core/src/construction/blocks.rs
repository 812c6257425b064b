//! Structural resolution of the construction's words and infinite points.
//!
//! A word is a tree of blocks: `C_n` and `Q_n` are leaves of one or two runs,
//! `W_n` expands to `W_0..W_{n-1} C_0..C_n Q_{n+1}`. The points `x`, `y` and
//! the closing-segment points are infinite sequences of such blocks. Queries
//! descend the tree, so their cost depends on the structural depth of the
//! position, never on its magnitude.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::lengths::{len_c, len_q, len_w, one_part, zero_part};
use crate::rle_word::{RleWord, Symbol};
use crate::symbolic_point::RunSpan;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Block {
    Run(Symbol, BigUint),
    C(u32),
    Q(u32),
    W(u32),
}

impl Block {
    pub(crate) fn len(&self) -> BigUint {
        match self {
            Block::Run(_, n) => n.clone(),
            Block::C(n) => len_c(*n),
            Block::Q(n) => len_q(*n),
            Block::W(n) => len_w(*n),
        }
    }

    pub(crate) fn children(&self) -> Vec<Block> {
        match *self {
            Block::Run(..) => Vec::new(),
            Block::C(0) => vec![Block::Run(1, BigUint::one()), Block::Run(0, BigUint::one())],
            Block::C(n) => vec![Block::Run(1, one_part(n)), Block::Run(0, zero_part(n))],
            Block::Q(n) => vec![Block::Run(0, len_q(n))],
            Block::W(0) => vec![Block::C(0), Block::Q(1)],
            Block::W(n) => (0..n)
                .map(Block::W)
                .chain((0..=n).map(Block::C))
                .chain(std::iter::once(Block::Q(n + 1)))
                .collect(),
        }
    }

    pub(crate) fn uniform(&self) -> Option<Symbol> {
        match self {
            Block::Run(s, _) => Some(*s),
            Block::Q(_) => Some(0),
            Block::C(_) | Block::W(_) => None,
        }
    }

    /// The maximal run at the start of the block.
    pub(crate) fn leading(&self) -> (Symbol, BigUint) {
        if let Block::Run(s, n) = self {
            return (*s, n.clone());
        }
        edge_run(self.children().iter())
    }

    /// The maximal run at the end of the block.
    pub(crate) fn trailing(&self) -> (Symbol, BigUint) {
        if let Block::Run(s, n) = self {
            return (*s, n.clone());
        }
        let children = self.children();
        let mut it = children.iter().rev();
        let first = it.next().expect("composite blocks are nonempty");
        let (sym, mut n) = first.trailing();
        if first.uniform().is_some() {
            for b in it {
                match b.uniform() {
                    Some(t) if t == sym => n += b.len(),
                    Some(_) => break,
                    None => {
                        let (t, m) = b.trailing();
                        if t == sym {
                            n += m;
                        }
                        break;
                    }
                }
            }
        }
        (sym, n)
    }

    /// Expands the block into an RLE word. Run count grows roughly like
    /// `2^n` for `W_n`, so this is meant for modest `n`.
    pub(crate) fn to_word(&self) -> RleWord {
        let mut out = RleWord::empty(2);
        self.append_to(&mut out);
        out
    }

    fn append_to(&self, out: &mut RleWord) {
        match self {
            Block::Run(s, n) => {
                *out = out
                    .concat(&RleWord::repeat(2, *s, n.clone()).expect("valid run"))
                    .expect("binary alphabet");
            }
            _ => {
                for child in self.children() {
                    child.append_to(out);
                }
            }
        }
    }
}

fn edge_run<'a>(mut it: impl Iterator<Item = &'a Block>) -> (Symbol, BigUint) {
    let first = it.next().expect("composite blocks are nonempty");
    let (sym, mut n) = first.leading();
    if first.uniform().is_some() {
        for b in it {
            match b.uniform() {
                Some(t) if t == sym => n += b.len(),
                Some(_) => break,
                None => {
                    let (t, m) = b.leading();
                    if t == sym {
                        n += m;
                    }
                    break;
                }
            }
        }
    }
    (sym, n)
}

/// The infinite points of the construction, as sequences of blocks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Stream {
    /// `x = C_0 C_1 C_2 ...`
    X,
    /// `y = W_0 W_1 W_2 ...`
    Y,
    /// `C_0 .. C_n Q_{n+1} W_{n+1} W_{n+2} ...`, the point sitting at the
    /// start of the closing segment of `W_n`.
    Closing(u32),
}

impl Stream {
    pub(crate) fn block(&self, i: u32) -> Block {
        match *self {
            Stream::X => Block::C(i),
            Stream::Y => Block::W(i),
            Stream::Closing(n) => {
                if i <= n {
                    Block::C(i)
                } else if i == n + 1 {
                    Block::Q(n + 1)
                } else {
                    Block::W(i - 1)
                }
            }
        }
    }

    /// Index and start position of the top-level block containing `q`.
    fn locate(&self, q: &BigUint) -> (u32, BigUint) {
        let mut start = BigUint::zero();
        let mut i = 0u32;
        loop {
            let end = &start + self.block(i).len();
            if *q < end {
                return (i, start);
            }
            start = end;
            i += 1;
        }
    }

    pub(crate) fn symbol_at(&self, q: &BigUint) -> Symbol {
        let (i, start) = self.locate(q);
        let mut block = self.block(i);
        let mut off = q - start;
        loop {
            if let Block::Run(s, _) = block {
                return s;
            }
            let (child, child_start) = locate_child(&block.children(), &off);
            off -= child_start;
            block = child;
        }
    }

    /// The maximal run containing absolute position `q`.
    pub(crate) fn run_span(&self, q: &BigUint) -> RunSpan {
        let (top, top_start) = self.locate(q);
        // Path of (children, index, start of child) from the top block down.
        let mut path: Vec<(Vec<Block>, usize, BigUint)> = Vec::new();
        let mut block = self.block(top);
        let mut block_start = top_start;
        while !matches!(block, Block::Run(..)) {
            let children = block.children();
            let off = q - &block_start;
            let (idx, rel) = locate_child_index(&children, &off);
            let child = children[idx].clone();
            let child_start = &block_start + rel;
            path.push((children, idx, child_start.clone()));
            block = child;
            block_start = child_start;
        }
        let Block::Run(symbol, count) = block else {
            unreachable!()
        };
        let mut start = block_start.clone();
        let mut end = &block_start + &count - 1u32;

        // Extend to the right through siblings, then through ancestors.
        let mut open = true;
        for (children, idx, _) in path.iter().rev() {
            open = extend(children[idx + 1..].iter(), symbol, &mut end, true);
            if !open {
                break;
            }
        }
        if open {
            let mut j = top + 1;
            loop {
                let b = self.block(j);
                if !extend(std::iter::once(&b), symbol, &mut end, true) {
                    break;
                }
                j += 1;
            }
        }

        let mut back = BigUint::zero();
        let mut open = true;
        for (children, idx, _) in path.iter().rev() {
            open = extend(children[..*idx].iter().rev(), symbol, &mut back, false);
            if !open {
                break;
            }
        }
        if open {
            for j in (0..top).rev() {
                let b = self.block(j);
                if !extend(std::iter::once(&b), symbol, &mut back, false) {
                    break;
                }
            }
        }
        start -= back;
        RunSpan {
            symbol,
            start,
            end: Some(end),
        }
    }
}

/// Grows `acc` across `blocks` while they continue the run of `symbol`.
/// Returns whether the run is still open after consuming every block.
fn extend<'a>(
    blocks: impl Iterator<Item = &'a Block>,
    symbol: Symbol,
    acc: &mut BigUint,
    forward: bool,
) -> bool {
    for b in blocks {
        match b.uniform() {
            Some(s) if s == symbol => *acc += b.len(),
            Some(_) => return false,
            None => {
                let (s, n) = if forward { b.leading() } else { b.trailing() };
                if s == symbol {
                    *acc += n;
                }
                return false;
            }
        }
    }
    true
}

fn locate_child(children: &[Block], off: &BigUint) -> (Block, BigUint) {
    let (idx, start) = locate_child_index(children, off);
    (children[idx].clone(), start)
}

fn locate_child_index(children: &[Block], off: &BigUint) -> (usize, BigUint) {
    let mut start = BigUint::zero();
    for (i, child) in children.iter().enumerate() {
        let end = &start + child.len();
        if *off < end {
            return (i, start);
        }
        start = end;
    }
    panic!("offset {off} beyond block of length {start}");
}
