//! Brute-force reference implementation used as an oracle.
//!
//! Automata are plain transition tables and elements are strings over
//! `a`, `b`, `c` with upper case for inverses (`"Cb"` is `c^-1 b`). Nothing
//! here calls into the library.

#![allow(dead_code)]

/// `table[state][letter] = (output, next)` over the alphabet {0, 1}.
pub type Table = Vec<[(u8, usize); 2]>;

fn t(a: [(u8, usize); 2], b: [(u8, usize); 2], c: [(u8, usize); 2]) -> Table {
    vec![a, b, c]
}

/// Binary odometer: state 0 adds one, state 1 is the identity.
pub fn odometer() -> Table {
    vec![[(1, 1), (0, 0)], [(0, 1), (1, 1)]]
}

pub const A: usize = 0;
pub const B: usize = 1;
pub const C: usize = 2;

pub fn table(key: u32) -> Table {
    match key {
        749 => t([(1, B), (0, A)], [(0, C), (1, A)], [(0, A), (1, A)]),
        861 => t([(1, C), (0, B)], [(0, C), (1, B)], [(0, B), (1, A)]),
        882 => t([(1, C), (0, C)], [(0, B), (1, C)], [(0, B), (1, A)]),
        887 => t([(1, B), (0, B)], [(0, C), (1, C)], [(0, B), (1, A)]),
        920 => t([(1, B), (0, A)], [(0, A), (1, B)], [(0, C), (1, A)]),
        969 => t([(1, C), (0, B)], [(0, C), (1, C)], [(0, C), (1, A)]),
        2361 => t([(1, C), (0, A)], [(1, B), (0, A)], [(0, C), (1, A)]),
        2365 => t([(1, A), (0, C)], [(1, B), (0, A)], [(0, C), (1, A)]),
        2402 => t([(1, B), (0, C)], [(1, C), (0, B)], [(0, C), (1, A)]),
        2427 => t([(1, C), (0, B)], [(1, C), (0, C)], [(0, C), (1, A)]),
        _ => panic!("no table for {key}"),
    }
}

/// Signed state: (state, inverted).
pub type Gen = (usize, bool);

pub fn gens(s: &str) -> Vec<Gen> {
    s.chars()
        .map(|ch| {
            let state = (ch.to_ascii_lowercase() as u8 - b'a') as usize;
            (state, ch.is_ascii_uppercase())
        })
        .collect()
}

/// The same element in library notation.
pub fn notation(s: &str) -> String {
    if s.is_empty() {
        return "1".into();
    }
    s.chars()
        .map(|ch| if ch.is_ascii_uppercase() { format!("{}^-1", ch.to_ascii_lowercase()) } else { ch.to_string() })
        .collect::<Vec<_>>()
        .join("*")
}

pub fn power(s: &str, n: usize) -> String {
    s.repeat(n)
}

fn step(tab: &Table, (s, inv): Gen, x: u8) -> (u8, Gen) {
    if !inv {
        let (y, next) = tab[s][x as usize];
        (y, (next, false))
    } else {
        let pre = (0..2).find(|&p| tab[s][p].0 == x).expect("bijective");
        (pre as u8, (tab[s][pre].1, true))
    }
}

/// Image of `word` and the section there, one letter at a time.
pub fn act_section(tab: &Table, element: &[Gen], word: &[u8]) -> (Vec<u8>, Vec<Gen>) {
    let mut states = element.to_vec();
    let mut out = Vec::with_capacity(word.len());
    for &x in word {
        let mut letter = x;
        for st in states.iter_mut().rev() {
            let (y, next) = step(tab, *st, letter);
            *st = next;
            letter = y;
        }
        out.push(letter);
    }
    (out, states)
}

pub fn act(tab: &Table, element: &[Gen], word: &[u8]) -> Vec<u8> {
    act_section(tab, element, word).0
}

pub fn words(len: usize) -> impl Iterator<Item = Vec<u8>> {
    (0..1usize << len).map(move |i| (0..len).map(|j| ((i >> (len - 1 - j)) & 1) as u8).collect())
}

pub fn index(word: &[u8]) -> usize {
    word.iter().fold(0, |acc, &x| acc * 2 + x as usize)
}

/// Permutation of level `n` as a table of indices.
pub fn level_perm(tab: &Table, element: &[Gen], n: usize) -> Vec<usize> {
    words(n).map(|w| index(&act(tab, element, &w))).collect()
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn perm_order(perm: &[usize]) -> u64 {
    let mut seen = vec![false; perm.len()];
    let mut order = 1u64;
    for start in 0..perm.len() {
        let mut len = 0u64;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        if len > 0 {
            order = order / gcd(order, len) * len;
        }
    }
    order
}

/// Letters of an eventually periodic word, unrolled to `len`.
pub fn unroll(pre: &str, period: &str, len: usize) -> Vec<u8> {
    let digits = |s: &str| s.bytes().map(|b| b - b'0').collect::<Vec<u8>>();
    let (p, w) = (digits(pre), digits(period));
    p.iter().copied().chain(w.iter().copied().cycle()).take(len).collect()
}

pub fn bits(s: &str) -> Vec<u8> {
    s.bytes().map(|b| b - b'0').collect()
}
