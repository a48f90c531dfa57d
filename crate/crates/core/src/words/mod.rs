//! Words in Fibonacci generators and their formal sums.
//!
//! Generators are numbered from 0 and written `a`, `b`, `c`, ... . Every
//! generator is self-dual with `x x = 1 + x`, so a word with an adjacent
//! repeat is never simple and [`normalize`] expands it away.

mod derive;
mod eval;
mod presentation;

pub use derive::{
    derive_collapse, Conclusion, DeriveBudget, DeriveOutcome, Derivation, Rule, SearchStats, Step,
};
pub use eval::{check_presentation_consistency, evaluate, evaluate_word, replay_derivation, word_end_dim, Assignment, Consistency};
pub use presentation::Presentation;

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::{Error, Result};

/// Largest generator count accepted by the letter syntax.
pub const MAX_GENERATORS: usize = 26;

/// A sequence of generator indices; ordered by length, then lexicographically.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<u8>);

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(x: u8) -> Self {
        Word(vec![x])
    }

    pub fn from_letters(letters: Vec<u8>) -> Self {
        Word(letters)
    }

    /// Parses `"aba"`; `""` and `"1"` denote the empty word.
    pub fn parse(s: &str, generators: usize) -> Result<Self> {
        if s == "1" {
            return Ok(Word::empty());
        }
        let mut letters = Vec::with_capacity(s.len());
        for ch in s.chars() {
            let x = (ch as u32).wrapping_sub('a' as u32) as usize;
            if !ch.is_ascii_lowercase() || x >= generators {
                return Err(Error::BadWord(alloc::format!(
                    "letter {ch:?} in {s:?} is not one of the {generators} generators"
                )));
            }
            letters.push(x as u8);
        }
        Ok(Word(letters))
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<u8> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<u8> {
        self.0.last().copied()
    }

    /// No two equal adjacent letters.
    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|w| w[0] != w[1])
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// The word with the letters in `start..end` replaced by `middle`.
    pub(crate) fn splice(&self, start: usize, end: usize, middle: &[u8]) -> Word {
        let mut v = Vec::with_capacity(self.0.len() - (end - start) + middle.len());
        v.extend_from_slice(&self.0[..start]);
        v.extend_from_slice(middle);
        v.extend_from_slice(&self.0[end..]);
        Word(v)
    }

    pub(crate) fn slice(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].to_vec())
    }

    /// Start positions of `pattern` inside this word.
    pub fn occurrences<'a>(&'a self, pattern: &'a Word) -> impl Iterator<Item = usize> + 'a {
        let n = pattern.len();
        (0..=self.len().saturating_sub(n))
            .filter(move |&i| n > 0 && n <= self.len() && self.0[i..i + n] == pattern.0[..])
    }

    pub fn max_letter(&self) -> Option<u8> {
        self.0.iter().copied().max()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for &x in &self.0 {
            write!(f, "{}", (b'a' + x) as char)?;
        }
        Ok(())
    }
}

/// A formal sum of words with positive multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WordSum(BTreeMap<Word, u64>);

impl WordSum {
    pub fn zero() -> Self {
        WordSum(BTreeMap::new())
    }

    pub fn word(w: Word) -> Self {
        let mut m = BTreeMap::new();
        m.insert(w, 1);
        WordSum(m)
    }

    pub fn unit() -> Self {
        WordSum::word(Word::empty())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add_word(&mut self, w: Word, m: u64) {
        if m > 0 {
            *self.0.entry(w).or_insert(0) += m;
        }
    }

    pub fn add(&mut self, other: &WordSum) {
        for (w, &m) in &other.0 {
            self.add_word(w.clone(), m);
        }
    }

    /// Removes `m` copies of `w`; returns false if there are fewer.
    pub fn remove_word(&mut self, w: &Word, m: u64) -> bool {
        match self.0.get_mut(w) {
            Some(k) if *k >= m => {
                *k -= m;
                if *k == 0 {
                    self.0.remove(w);
                }
                true
            }
            _ => false,
        }
    }

    /// Words with multiplicities, in increasing word order.
    pub fn terms(&self) -> impl Iterator<Item = (&Word, u64)> {
        self.0.iter().map(|(w, &m)| (w, m))
    }

    pub fn multiplicity(&self, w: &Word) -> u64 {
        self.0.get(w).copied().unwrap_or(0)
    }

    /// Number of words counted with multiplicity.
    pub fn count(&self) -> u64 {
        self.0.values().sum()
    }

    /// The word, if this sum is a single word with multiplicity one.
    pub fn as_word(&self) -> Option<&Word> {
        match self.0.iter().next() {
            Some((w, 1)) if self.0.len() == 1 => Some(w),
            _ => None,
        }
    }

    /// Total letters plus words, with multiplicity.
    pub fn weight(&self) -> usize {
        self.0.iter().map(|(w, &m)| (w.len() + 1) * m as usize).sum()
    }

    pub fn max_len(&self) -> usize {
        self.0.keys().map(Word::len).max().unwrap_or(0)
    }

    pub fn is_reduced(&self) -> bool {
        self.0.keys().all(Word::is_reduced)
    }

    pub fn map_words(&self, f: impl Fn(&Word) -> Word) -> WordSum {
        let mut out = WordSum::zero();
        for (w, &m) in &self.0 {
            out.add_word(f(w), m);
        }
        out
    }

    /// Expands every word with [`normalize`].
    pub fn normalized(&self) -> WordSum {
        let mut out = WordSum::zero();
        for (w, &m) in &self.0 {
            for (v, k) in normalize(w).terms() {
                out.add_word(v.clone(), k * m);
            }
        }
        out
    }

    pub fn reversed(&self) -> WordSum {
        self.map_words(Word::reversed)
    }
}

impl fmt::Display for WordSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        for (i, (w, &m)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if m > 1 {
                write!(f, "{m}")?;
            }
            write!(f, "{w}")?;
        }
        Ok(())
    }
}

/// Expands adjacent repeats with `u x x v = u v + u x v` until every
/// summand is reduced.
pub fn normalize(w: &Word) -> WordSum {
    let mut out = WordSum::zero();
    let mut stack: Vec<(Vec<u8>, u64)> = vec![(w.0.clone(), 1)];
    while let Some((letters, m)) = stack.pop() {
        match letters.windows(2).position(|p| p[0] == p[1]) {
            None => out.add_word(Word(letters), m),
            Some(i) => {
                let mut kept = letters.clone();
                kept.remove(i + 1);
                let mut dropped = letters;
                dropped.drain(i..i + 2);
                stack.push((kept, m));
                stack.push((dropped, m));
            }
        }
    }
    out
}

/// Pairwise concatenation followed by normalization.
pub fn word_tensor(s1: &WordSum, s2: &WordSum) -> WordSum {
    let mut out = WordSum::zero();
    for (u, m) in s1.terms() {
        for (v, n) in s2.terms() {
            for (w, k) in normalize(&u.concat(v)).terms() {
                out.add_word(w.clone(), k * m * n);
            }
        }
    }
    out
}

/// The length-`n` word cycling through `start, start+1, ...` modulo `generators`.
pub fn cyclic_word(start: u8, n: usize, generators: usize) -> Word {
    Word((0..n).map(|i| ((start as usize + i) % generators) as u8).collect())
}

/// One representative per letter subset of `n` pairwise commuting
/// generators: the letters of the subset in increasing order.
pub fn source_simple_fib(n: usize) -> Vec<Word> {
    (0..1usize << n)
        .map(|mask| Word((0..n as u8).filter(|&i| mask >> i & 1 == 1).collect()))
        .collect()
}

/// Per-factor pieces of a TT3 source-simple word over generators `t = 2i`,
/// `p = 2i+1`: empty, `t`, `p`, `tp`, `pt`, `tpt`.
pub fn tt3_factor_pieces(i: u8) -> Vec<Vec<u8>> {
    let (t, p) = (2 * i, 2 * i + 1);
    vec![vec![], vec![t], vec![p], vec![t, p], vec![p, t], vec![t, p, t]]
}

/// One representative per class of source-simple words over `m` commuting
/// TT3 factors: the factor pieces concatenated in factor order.
pub fn source_simple_tt3(m: usize) -> Vec<Word> {
    let pieces: Vec<Vec<Vec<u8>>> = (0..m as u8).map(tt3_factor_pieces).collect();
    let mut out = vec![Vec::new()];
    for factor in &pieces {
        let mut next = Vec::with_capacity(out.len() * factor.len());
        for prefix in &out {
            for piece in factor {
                let mut w: Vec<u8> = prefix.clone();
                w.extend_from_slice(piece);
                next.push(w);
            }
        }
        out = next;
    }
    out.into_iter().map(Word).collect()
}

/// All interleavings of the given letter sequences, preserving the order
/// within each sequence.
pub fn interleavings(parts: &[Vec<u8>]) -> Vec<Word> {
    fn go(parts: &[Vec<u8>], pos: &mut Vec<usize>, cur: &mut Vec<u8>, out: &mut Vec<Word>) {
        let total: usize = parts.iter().map(Vec::len).sum();
        if cur.len() == total {
            out.push(Word(cur.clone()));
            return;
        }
        for i in 0..parts.len() {
            if pos[i] < parts[i].len() {
                cur.push(parts[i][pos[i]]);
                pos[i] += 1;
                go(parts, pos, cur, out);
                pos[i] -= 1;
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(parts, &mut vec![0; parts.len()], &mut Vec::new(), &mut out);
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn w(s: &str) -> Word {
        Word::parse(s, 26).unwrap()
    }

    fn sum(words: &[&str]) -> WordSum {
        let mut s = WordSum::zero();
        for x in words {
            s.add_word(w(x), 1);
        }
        s
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize(&w("aa")), sum(&["", "a"]));
        assert_eq!(normalize(&w("abb")), sum(&["a", "ab"]));
        assert_eq!(normalize(&w("abba")), sum(&["", "a", "aba"]));
        assert_eq!(normalize(&w("aaa")), sum(&["", "a", "a"]).normalized());
        assert_eq!(normalize(&w("aaa")).count(), 3);
    }

    #[test]
    fn tensor_examples() {
        assert_eq!(word_tensor(&sum(&["ab"]), &sum(&["ba"])), sum(&["", "a", "aba"]));
        assert_eq!(word_tensor(&WordSum::unit(), &sum(&["abc"])), sum(&["abc"]));
        assert_eq!(word_tensor(&sum(&["ab"]), &sum(&["ca"])), sum(&["abca"]));
    }

    #[test]
    fn cyclic_words() {
        assert_eq!(cyclic_word(0, 5, 3), w("abcab"));
        assert_eq!(cyclic_word(1, 4, 3), w("bcab"));
        assert_eq!(cyclic_word(0, 0, 3), Word::empty());
    }

    #[test]
    fn parsing_and_display() {
        assert_eq!(Word::parse("1", 2).unwrap(), Word::empty());
        assert!(Word::parse("abc", 2).is_err());
        assert!(Word::parse("aB", 3).is_err());
        assert_eq!(w("cab").to_string(), "cab");
        assert_eq!(sum(&["", "a", "a"]).to_string(), "1 + 2a");
        assert!(w("aab") < w("abab"));
        assert!(w("ab") < w("ba"));
    }

    #[test]
    fn occurrences_and_splice() {
        let x = w("abab");
        assert_eq!(x.occurrences(&w("ab")).collect::<Vec<_>>(), vec![0, 2]);
        assert_eq!(x.splice(1, 3, &[2]), w("acb"));
        assert_eq!(w("a").occurrences(&w("ab")).count(), 0);
    }

    #[test]
    fn source_simple_counts() {
        assert_eq!(source_simple_fib(3).len(), 8);
        assert_eq!(source_simple_tt3(2).len(), 36);
        assert_eq!(interleavings(&[vec![0, 1], vec![2]]).len(), 3);
    }
}
