//! Naive string oracles built straight from the word definitions.
#![allow(dead_code)]

/// `C_0..C_n` as strings of '0'/'1'.
pub fn c_strings(n: usize) -> Vec<String> {
    let mut out = vec!["10".to_string()];
    let mut cum = 2usize;
    for k in 1..=n {
        let c = "1".repeat(8usize.pow(k as u32) * cum) + &"0".repeat(2usize.pow(k as u32) * cum);
        cum += c.len();
        out.push(c);
    }
    out
}

/// `W_0..W_n` as strings.
pub fn w_strings(n: usize) -> Vec<String> {
    let c = c_strings(n + 1);
    let q = |k: usize| "0".repeat(c[k].len());
    let mut w = vec![c[0].clone() + &q(1)];
    for k in 1..=n {
        let mut s: String = w.concat();
        for ci in c.iter().take(k + 1) {
            s.push_str(ci);
        }
        s.push_str(&q(k + 1));
        w.push(s);
    }
    w
}

pub fn x_prefix(len: usize) -> Vec<u8> {
    let s: String = c_strings(3).concat();
    s.bytes().take(len).map(|b| b - b'0').collect()
}

pub fn y_prefix(len: usize) -> Vec<u8> {
    let s: String = w_strings(2).concat();
    s.bytes().take(len).map(|b| b - b'0').collect()
}

/// `C_0..C_n Q_{n+1} W_{n+1} ..` truncated to `len` (at most about 1.5e6).
pub fn closing_prefix(n: usize, len: usize) -> Vec<u8> {
    let c = c_strings(n + 1);
    let mut s: String = c[..=n].concat();
    s.push_str(&"0".repeat(c[n + 1].len()));
    // W_2 already has 792440 symbols, enough for any prefix these tests take.
    let w = w_strings(2);
    for wk in w.iter().skip(n + 1) {
        s.push_str(wk);
    }
    // W_3 opens with W_0 W_1 W_2.
    for wk in &w {
        if s.len() >= len {
            break;
        }
        s.push_str(wk);
    }
    s.bytes().take(len).map(|b| b - b'0').collect()
}

pub fn naive_find(text: &[u8], pat: &[u8], horizon: usize) -> Option<usize> {
    if pat.len() > text.len() {
        return None;
    }
    (0..=text.len() - pat.len())
        .take_while(|&q| q <= horizon)
        .find(|&q| &text[q..q + pat.len()] == pat)
}
