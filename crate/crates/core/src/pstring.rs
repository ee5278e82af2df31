//! Balanced parenthesis strings: parsing, nesting analysis, exhaustive
//! enumeration and exact-uniform random sampling.
//!
//! A string of `s` matched pairs is the seed object of the meander model;
//! sampling is done by drawing a uniform integer below the Catalan number
//! `C_s` and unranking it, so uniformity reduces to the integer draw.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::RngCore;
use thiserror::Error;

/// Default cap for exhaustive enumeration (`C_8 = 1430` strings).
pub const ENUMERATION_CAP: usize = 8;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PStringError {
    #[error("input has odd length {0}")]
    OddLength(usize),
    #[error("illegal character {ch:?} at position {pos}")]
    IllegalChar { ch: char, pos: usize },
    #[error("unbalanced parentheses (first offense at position {0})")]
    Unbalanced(usize),
    #[error("enumeration of {s} pairs exceeds the cap of {cap}")]
    CapExceeded { s: usize, cap: usize },
    #[error("rank {index} out of range for {s} pairs (bound {bound})")]
    IndexOutOfRange {
        s: usize,
        index: BigUint,
        bound: BigUint,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Paren {
    Open,
    Close,
}

/// A balanced string of `s` pairs of parentheses.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PString {
    word: Vec<Paren>,
}

impl PString {
    /// Parses a string over `(` and `)`; rejects odd length, foreign
    /// characters and unbalanced prefixes, each distinctly.
    pub fn parse(text: &str) -> Result<Self, PStringError> {
        let mut word = Vec::with_capacity(text.len());
        let mut depth: isize = 0;
        for (idx, ch) in text.chars().enumerate() {
            let p = match ch {
                '(' => Paren::Open,
                ')' => Paren::Close,
                _ => return Err(PStringError::IllegalChar { ch, pos: idx + 1 }),
            };
            depth += if p == Paren::Open { 1 } else { -1 };
            if depth < 0 {
                return Err(PStringError::Unbalanced(idx + 1));
            }
            word.push(p);
        }
        if word.len() % 2 == 1 {
            return Err(PStringError::OddLength(word.len()));
        }
        if depth != 0 {
            return Err(PStringError::Unbalanced(word.len()));
        }
        Ok(PString { word })
    }

    /// Number of pairs `s`.
    pub fn pairs(&self) -> usize {
        self.word.len() / 2
    }

    /// Total length `2s`.
    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// Symbol at 1-based position `i`.
    pub fn at(&self, i: usize) -> Paren {
        self.word[i - 1]
    }

    /// Matched pairs as 1-based character positions `(open, close)`,
    /// ordered by the opening position.
    pub fn matched_pairs(&self) -> Vec<(usize, usize)> {
        let mut stack = Vec::new();
        let mut pairs = vec![(0, 0); self.pairs()];
        let mut next = 0;
        for (idx, &p) in self.word.iter().enumerate() {
            match p {
                Paren::Open => {
                    stack.push((idx + 1, next));
                    next += 1;
                }
                Paren::Close => {
                    let (open, slot) = stack.pop().expect("balanced by construction");
                    pairs[slot] = (open, idx + 1);
                }
            }
        }
        pairs
    }

    /// Positions of all nestings: 1-based indices `i` with `(` at `i`
    /// immediately closed at `i + 1`.
    pub fn nestings(&self) -> NestingSet {
        let positions = self
            .word
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] == Paren::Open && w[1] == Paren::Close)
            .map(|(idx, _)| idx + 1)
            .collect();
        NestingSet { positions }
    }
}

impl FromStr for PString {
    type Err = PStringError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PString::parse(s)
    }
}

impl fmt::Display for PString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &p in &self.word {
            f.write_str(if p == Paren::Open { "(" } else { ")" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for PString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PString({self})")
    }
}

/// Sorted 1-based positions of the nestings of one string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NestingSet {
    positions: Vec<usize>,
}

impl NestingSet {
    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn contains(&self, position: usize) -> bool {
        self.positions.binary_search(&position).is_ok()
    }
}

/// Prefix-completion counts (ballot numbers) for words of `s` pairs.
///
/// `count(m, h)` is the number of ways to finish a balanced word with `m`
/// symbols left from nesting depth `h`. Built once and reused: unranking,
/// ranking and sampling are all table walks.
pub struct BallotTable {
    s: usize,
    /// counts[m][h] for 0 <= m <= 2s, 0 <= h <= m.
    counts: Vec<Vec<BigUint>>,
}

impl BallotTable {
    pub fn new(s: usize) -> Self {
        let n = 2 * s;
        let mut counts: Vec<Vec<BigUint>> = Vec::with_capacity(n + 1);
        counts.push(vec![BigUint::one()]);
        for m in 1..=n {
            let prev = &counts[m - 1];
            let mut row = Vec::with_capacity(m + 1);
            for h in 0..=m {
                let mut c = BigUint::zero();
                if let Some(up) = prev.get(h + 1) {
                    c += up;
                }
                if h > 0 {
                    if let Some(down) = prev.get(h - 1) {
                        c += down;
                    }
                }
                row.push(c);
            }
            counts.push(row);
        }
        BallotTable { s, counts }
    }

    pub fn pairs(&self) -> usize {
        self.s
    }

    /// Completions with `m` symbols left from depth `h`; zero out of range.
    pub fn count(&self, m: usize, h: usize) -> &BigUint {
        static ZERO: std::sync::OnceLock<BigUint> = std::sync::OnceLock::new();
        self.counts
            .get(m)
            .and_then(|row| row.get(h))
            .unwrap_or_else(|| ZERO.get_or_init(BigUint::zero))
    }

    /// Total number of words, the Catalan number `C_s`.
    pub fn total(&self) -> &BigUint {
        &self.counts[2 * self.s][0]
    }

    /// Word at `index` in lexicographic order with `(` < `)`.
    pub fn unrank(&self, index: &BigUint) -> Result<PString, PStringError> {
        if index >= self.total() {
            return Err(PStringError::IndexOutOfRange {
                s: self.s,
                index: index.clone(),
                bound: self.total().clone(),
            });
        }
        let n = 2 * self.s;
        let mut rest = index.clone();
        let mut depth = 0usize;
        let mut word = Vec::with_capacity(n);
        for pos in 0..n {
            let left = n - pos - 1;
            let with_open = self.count(left, depth + 1);
            if &rest < with_open {
                word.push(Paren::Open);
                depth += 1;
            } else {
                rest -= with_open;
                word.push(Paren::Close);
                depth -= 1;
            }
        }
        Ok(PString { word })
    }

    /// Inverse of [`BallotTable::unrank`].
    pub fn rank(&self, p: &PString) -> BigUint {
        assert_eq!(p.pairs(), self.s, "table built for {} pairs", self.s);
        let n = 2 * self.s;
        let mut depth = 0usize;
        let mut index = BigUint::zero();
        for (pos, &sym) in p.word.iter().enumerate() {
            let left = n - pos - 1;
            match sym {
                Paren::Open => depth += 1,
                Paren::Close => {
                    index += self.count(left, depth + 1);
                    depth -= 1;
                }
            }
        }
        index
    }

    /// Exactly uniform sample over all `C_s` words.
    pub fn sample<R: RngCore + ?Sized>(&self, rng: &mut R) -> PString {
        let index = uniform_below(rng, self.total());
        self.unrank(&index).expect("index drawn below the bound")
    }
}

/// Uniform `BigUint` in `[0, bound)` by masked rejection sampling.
fn uniform_below<R: RngCore + ?Sized>(rng: &mut R, bound: &BigUint) -> BigUint {
    assert!(!bound.is_zero());
    if bound.is_one() {
        return BigUint::zero();
    }
    let bits = bound.bits();
    let bytes = bits.div_ceil(8) as usize;
    let mask = 0xffu8 >> (bytes as u64 * 8 - bits);
    let mut buf = vec![0u8; bytes];
    loop {
        rng.fill_bytes(&mut buf);
        buf[0] &= mask;
        let candidate = BigUint::from_bytes_be(&buf);
        if &candidate < bound {
            return candidate;
        }
    }
}

/// Word of `s` pairs at `index` in lexicographic order.
pub fn unrank(s: usize, index: &BigUint) -> Result<PString, PStringError> {
    BallotTable::new(s).unrank(index)
}

/// Lexicographic rank of a word among all words of the same length.
pub fn rank(p: &PString) -> BigUint {
    BallotTable::new(p.pairs()).rank(p)
}

/// Uniform random word of `s` pairs.
pub fn sample_uniform<R: RngCore + ?Sized>(s: usize, rng: &mut R) -> PString {
    BallotTable::new(s).sample(rng)
}

/// All `C_s` words in lexicographic order, refusing `s` above
/// [`ENUMERATION_CAP`].
pub fn enumerate_all(s: usize) -> Result<Vec<PString>, PStringError> {
    enumerate_with_cap(s, ENUMERATION_CAP)
}

pub fn enumerate_with_cap(s: usize, cap: usize) -> Result<Vec<PString>, PStringError> {
    if s > cap {
        return Err(PStringError::CapExceeded { s, cap });
    }
    let mut out = Vec::new();
    let mut word = Vec::with_capacity(2 * s);
    generate(s, 0, 0, &mut word, &mut out);
    Ok(out)
}

fn generate(s: usize, open: usize, close: usize, word: &mut Vec<Paren>, out: &mut Vec<PString>) {
    if open == s && close == s {
        out.push(PString { word: word.clone() });
        return;
    }
    if open < s {
        word.push(Paren::Open);
        generate(s, open + 1, close, word, out);
        word.pop();
    }
    if close < open {
        word.push(Paren::Close);
        generate(s, open, close + 1, word, out);
        word.pop();
    }
}
