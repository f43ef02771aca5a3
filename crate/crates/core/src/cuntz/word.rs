//! Finite words over `{0..n-1}` and eventually periodic points of Cantor space.

use std::fmt;

use crate::error::{Error, Result};

pub type Word = Vec<u8>;

pub fn is_prefix(prefix: &[u8], word: &[u8]) -> bool {
    word.len() >= prefix.len() && word[..prefix.len()] == *prefix
}

pub fn comparable(a: &[u8], b: &[u8]) -> bool {
    is_prefix(a, b) || is_prefix(b, a)
}

/// Parses `"0110"`; `"e"`, `"ε"` and the empty string denote the empty word.
pub fn parse_word(text: &str, n: usize) -> Result<Word> {
    let t = text.trim();
    if t.is_empty() || t == "e" || t == "ε" {
        return Ok(Vec::new());
    }
    t.chars()
        .map(|c| match c.to_digit(10) {
            Some(d) if (d as usize) < n => Ok(d as u8),
            _ => Err(Error::Parse(format!(
                "letter {c:?} in {t:?} is outside the alphabet 0..{n}"
            ))),
        })
        .collect()
}

pub fn format_word(w: &[u8]) -> String {
    if w.is_empty() {
        "e".to_string()
    } else {
        w.iter().map(|d| char::from(b'0' + d)).collect()
    }
}

/// All words of length exactly `len`, in lexicographic order.
pub fn words_of_length(n: usize, len: usize) -> Vec<Word> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..n as u8).map(move |a| {
                    let mut x = w.clone();
                    x.push(a);
                    x
                })
            })
            .collect();
    }
    out
}

/// The point `prefix · period^∞`, kept in a canonical form so that equality
/// of points is equality of values.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Point {
    prefix: Word,
    period: Word,
}

impl Point {
    pub fn new(prefix: Word, period: Word) -> Self {
        assert!(!period.is_empty(), "period must be nonempty");
        let mut p = Point { prefix, period };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        let len = self.period.len();
        if let Some(d) =
            (1..=len).find(|d| len.is_multiple_of(*d) && (0..len).all(|i| self.period[i] == self.period[i % d]))
        {
            self.period.truncate(d);
        }
        while let (Some(&a), Some(&b)) = (self.prefix.last(), self.period.last()) {
            if a != b {
                break;
            }
            self.prefix.pop();
            self.period.rotate_right(1);
        }
    }

    pub fn letter(&self, i: usize) -> u8 {
        if i < self.prefix.len() {
            self.prefix[i]
        } else {
            self.period[(i - self.prefix.len()) % self.period.len()]
        }
    }

    pub fn starts_with(&self, w: &[u8]) -> bool {
        w.iter().enumerate().all(|(i, &a)| self.letter(i) == a)
    }

    /// Drops the first `k` letters.
    pub fn shift(&self, k: usize) -> Point {
        if k <= self.prefix.len() {
            Point::new(self.prefix[k..].to_vec(), self.period.clone())
        } else {
            let mut period = self.period.clone();
            let r = (k - self.prefix.len()) % period.len();
            period.rotate_left(r);
            Point::new(Vec::new(), period)
        }
    }

    pub fn prepend(&self, w: &[u8]) -> Point {
        let mut prefix = w.to_vec();
        prefix.extend_from_slice(&self.prefix);
        Point::new(prefix, self.period.clone())
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.prefix.is_empty() {
            write!(f, "{}", format_word(&self.prefix))?;
        }
        write!(f, "({})^∞", format_word(&self.period))
    }
}
