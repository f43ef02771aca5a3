//! Clopen subsets of n-ary Cantor space as canonical antichains of cylinders.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::word::{format_word, is_prefix, parse_word, Word};
use crate::error::{Error, Result};

/// A sorted prefix-free antichain with no complete sibling family.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ClopenSet {
    words: Vec<Word>,
}

impl ClopenSet {
    pub fn empty() -> Self {
        ClopenSet { words: Vec::new() }
    }

    pub fn full() -> Self {
        ClopenSet {
            words: vec![Vec::new()],
        }
    }

    pub fn cylinder(w: Word) -> Self {
        ClopenSet { words: vec![w] }
    }

    /// Union of the given cylinders, in canonical form.
    pub fn from_words(words: impl IntoIterator<Item = Word>, n: usize) -> Self {
        let mut words: Vec<Word> = words.into_iter().collect();
        words.sort();
        words.dedup();
        let mut kept: Vec<Word> = Vec::with_capacity(words.len());
        for w in words {
            if !kept.last().is_some_and(|k| is_prefix(k, &w)) {
                kept.push(w);
            }
        }
        ClopenSet {
            words: merge_siblings(kept, n),
        }
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.words.len() == 1 && self.words[0].is_empty()
    }

    pub fn depth(&self) -> usize {
        self.words.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn contains_word(&self, w: &[u8]) -> bool {
        self.words.iter().any(|c| is_prefix(c, w))
    }

    pub fn meet(&self, other: &ClopenSet, n: usize) -> ClopenSet {
        let mut out = Vec::new();
        for a in &self.words {
            for b in &other.words {
                if is_prefix(a, b) {
                    out.push(b.clone());
                } else if is_prefix(b, a) {
                    out.push(a.clone());
                }
            }
        }
        ClopenSet::from_words(out, n)
    }

    pub fn join(&self, other: &ClopenSet, n: usize) -> ClopenSet {
        ClopenSet::from_words(self.words.iter().chain(&other.words).cloned(), n)
    }

    pub fn complement(&self, n: usize) -> ClopenSet {
        let mut out = Vec::new();
        complement_below(&self.words, &mut Vec::new(), n, &mut out);
        ClopenSet::from_words(out, n)
    }

    pub fn leq(&self, other: &ClopenSet, n: usize) -> bool {
        self.meet(other, n) == *self
    }

    pub fn is_disjoint(&self, other: &ClopenSet, n: usize) -> bool {
        self.meet(other, n).is_empty()
    }

    /// Parses `"{0, 110}"`; `"{}"` is empty and `"{e}"` is everything.
    pub fn parse(text: &str, n: usize) -> Result<ClopenSet> {
        let t = text.trim();
        let inner = t
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(|| Error::Parse(format!("clopen set {t:?} must be written as {{w1, w2, ...}}")))?;
        if inner.trim().is_empty() {
            return Ok(ClopenSet::empty());
        }
        let words = inner.split(',').map(|w| parse_word(w, n)).collect::<Result<Vec<_>>>()?;
        Ok(ClopenSet::from_words(words, n))
    }
}

impl fmt::Display for ClopenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.words.iter().map(|w| format_word(w)).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

fn complement_below(words: &[Word], path: &mut Word, n: usize, out: &mut Vec<Word>) {
    if words.iter().any(|w| is_prefix(w, path)) {
        return;
    }
    if !words.iter().any(|w| is_prefix(path, w)) {
        out.push(path.clone());
        return;
    }
    for a in 0..n as u8 {
        path.push(a);
        complement_below(words, path, n, out);
        path.pop();
    }
}

/// Replaces every complete sibling family `{u0, …, u(n-1)}` by `u`, to a
/// fixpoint. Input must be sorted and prefix-free; output is too.
fn merge_siblings(mut words: Vec<Word>, n: usize) -> Vec<Word> {
    loop {
        let mut merged = false;
        let mut out: Vec<Word> = Vec::with_capacity(words.len());
        let mut i = 0;
        while i < words.len() {
            let w = &words[i];
            if !w.is_empty() && *w.last().unwrap() == 0 && i + n <= words.len() {
                let parent = &w[..w.len() - 1];
                let family = (0..n).all(|a| {
                    let x = &words[i + a];
                    x.len() == w.len() && x[..x.len() - 1] == *parent && x[x.len() - 1] == a as u8
                });
                if family {
                    out.push(parent.to_vec());
                    i += n;
                    merged = true;
                    continue;
                }
            }
            out.push(w.clone());
            i += 1;
        }
        words = out;
        if !merged {
            return words;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(text: &str) -> ClopenSet {
        ClopenSet::parse(text, 2).unwrap()
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(c("{0, 1}"), ClopenSet::full());
        assert_eq!(c("{00, 01, 1}"), ClopenSet::full());
        assert_eq!(c("{0, 00}"), c("{0}"));
        assert_eq!(c("{}"), ClopenSet::empty());
        assert_eq!(c("{10, 0, 110}").to_string(), "{0, 10, 110}");
    }

    #[test]
    fn boolean_operations() {
        assert_eq!(c("{0}").complement(2), c("{1}"));
        assert_eq!(c("{01}").complement(2), c("{00, 1}"));
        assert_eq!(ClopenSet::full().complement(2), ClopenSet::empty());
        assert_eq!(ClopenSet::empty().complement(2), ClopenSet::full());
        assert_eq!(c("{0}").meet(&c("{00, 01}"), 2), c("{0}"));
        assert_eq!(c("{0, 11}").meet(&c("{01, 1}"), 2), c("{01, 11}"));
        assert_eq!(c("{0}").join(&c("{1}"), 2), ClopenSet::full());
        assert!(c("{01}").leq(&c("{0}"), 2));
        assert!(!c("{0}").leq(&c("{01}"), 2));
    }

    #[test]
    fn ternary_complement() {
        let e = ClopenSet::parse("{1}", 3).unwrap();
        assert_eq!(e.complement(3), ClopenSet::parse("{0, 2}", 3).unwrap());
        assert_eq!(ClopenSet::parse("{0, 1, 2}", 3).unwrap(), ClopenSet::full());
    }

    #[test]
    fn parse_errors() {
        assert!(ClopenSet::parse("0, 1", 2).is_err());
        assert!(ClopenSet::parse("{2}", 2).is_err());
    }
}
