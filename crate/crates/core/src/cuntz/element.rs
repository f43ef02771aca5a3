//! Prefix-exchange maps `uξ ↦ vξ` and their canonical form.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::clopen::ClopenSet;
use super::word::{format_word, is_prefix, parse_word, Point, Word};
use crate::error::{Error, Result};

pub type Rule = (Word, Word);

/// Rules sorted by domain word; domains and ranges are prefix-free and no
/// family `u·a → v·a` over the whole alphabet is left unmerged.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CuntzElement {
    rules: Vec<Rule>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Evaluation {
    Mapped(Word),
    Undefined,
    NeedsLongerInput,
}

impl CuntzElement {
    pub fn zero() -> Self {
        CuntzElement { rules: Vec::new() }
    }

    pub fn one() -> Self {
        CuntzElement {
            rules: vec![(Vec::new(), Vec::new())],
        }
    }

    pub fn idempotent(e: &ClopenSet) -> Self {
        CuntzElement {
            rules: e.words().iter().map(|w| (w.clone(), w.clone())).collect(),
        }
    }

    /// Validates and normalizes a raw rule list.
    pub fn canonicalize(rules: Vec<Rule>, n: usize, depth_cap: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Precondition(format!(
                "alphabet size must be at least 2, got {n}"
            )));
        }
        for (u, v) in &rules {
            if u.len().max(v.len()) > depth_cap {
                return Err(Error::DepthCap { cap: depth_cap });
            }
            if let Some(&a) = u.iter().chain(v).find(|&&a| a as usize >= n) {
                return Err(Error::Precondition(format!(
                    "letter {a} is outside the alphabet 0..{n}"
                )));
            }
        }
        check_prefix_free(rules.iter().map(|r| &r.0))?;
        check_prefix_free(rules.iter().map(|r| &r.1))?;
        let mut rules = rules;
        rules.sort();
        Ok(CuntzElement {
            rules: merge_rule_families(rules, n),
        })
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn depth(&self) -> usize {
        self.rules.iter().map(|(u, v)| u.len().max(v.len())).max().unwrap_or(0)
    }

    pub fn dom(&self, n: usize) -> ClopenSet {
        ClopenSet::from_words(self.rules.iter().map(|r| r.0.clone()), n)
    }

    pub fn ran(&self, n: usize) -> ClopenSet {
        ClopenSet::from_words(self.rules.iter().map(|r| r.1.clone()), n)
    }

    pub fn inverse(&self) -> Self {
        let mut rules: Vec<Rule> = self.rules.iter().map(|(u, v)| (v.clone(), u.clone())).collect();
        rules.sort();
        CuntzElement { rules }
    }

    pub fn is_idempotent(&self) -> bool {
        self.rules.iter().all(|(u, v)| u == v)
    }

    /// The identity rules, which form the largest idempotent below `self`.
    pub fn fixed_part(&self) -> Self {
        CuntzElement {
            rules: self.rules.iter().filter(|(u, v)| u == v).cloned().collect(),
        }
    }

    /// `self · other`: apply `other`, then `self`.
    pub fn compose(&self, other: &CuntzElement, n: usize, depth_cap: usize) -> Result<Self> {
        let mut out = Vec::new();
        for (x, y) in &other.rules {
            for (u, v) in &self.rules {
                if is_prefix(u, y) {
                    let mut img = v.clone();
                    img.extend_from_slice(&y[u.len()..]);
                    out.push((x.clone(), img));
                } else if is_prefix(y, u) {
                    let mut pre = x.clone();
                    pre.extend_from_slice(&u[y.len()..]);
                    out.push((pre, v.clone()));
                }
            }
        }
        CuntzElement::canonicalize(out, n, depth_cap)
    }

    pub fn evaluate(&self, w: &[u8]) -> Evaluation {
        for (u, v) in &self.rules {
            if is_prefix(u, w) {
                let mut img = v.clone();
                img.extend_from_slice(&w[u.len()..]);
                return Evaluation::Mapped(img);
            }
            if is_prefix(w, u) {
                return Evaluation::NeedsLongerInput;
            }
        }
        Evaluation::Undefined
    }

    pub fn apply_point(&self, p: &Point) -> Option<Point> {
        self.rules
            .iter()
            .find(|(u, _)| p.starts_with(u))
            .map(|(u, v)| p.shift(u.len()).prepend(v))
    }

    /// Parses `"0->10, 11->0"`; `"0"`, `"∅"` or the empty string give zero.
    /// A JSON array of `[domain, range]` string pairs is also accepted.
    pub fn parse(text: &str, n: usize, depth_cap: usize) -> Result<Self> {
        let t = text.trim();
        if t.is_empty() || t == "0" || t == "∅" {
            return Ok(CuntzElement::zero());
        }
        if t.starts_with('[') {
            let pairs: Vec<(String, String)> =
                serde_json::from_str(t).map_err(|e| Error::Parse(format!("element JSON: {e}")))?;
            let rules = pairs
                .iter()
                .map(|(u, v)| Ok((parse_word(u, n)?, parse_word(v, n)?)))
                .collect::<Result<Vec<_>>>()?;
            return CuntzElement::canonicalize(rules, n, depth_cap);
        }
        let rules = t
            .split(',')
            .map(|part| {
                let (u, v) = part
                    .split_once("->")
                    .ok_or_else(|| Error::Parse(format!("rule {:?} must have the form u->v", part.trim())))?;
                Ok((parse_word(u, n)?, parse_word(v, n)?))
            })
            .collect::<Result<Vec<_>>>()?;
        CuntzElement::canonicalize(rules, n, depth_cap)
    }
}

impl fmt::Display for CuntzElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rules.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .rules
            .iter()
            .map(|(u, v)| format!("{}->{}", format_word(u), format_word(v)))
            .collect();
        write!(f, "{}", parts.join(", "))
    }
}

fn check_prefix_free<'a>(words: impl Iterator<Item = &'a Word>) -> Result<()> {
    let mut sorted: Vec<&Word> = words.collect();
    sorted.sort();
    for pair in sorted.windows(2) {
        if is_prefix(pair[0], pair[1]) {
            return Err(Error::PrefixOverlap(format_word(pair[0]), format_word(pair[1])));
        }
    }
    Ok(())
}

fn merge_rule_families(mut rules: Vec<Rule>, n: usize) -> Vec<Rule> {
    loop {
        let mut families: HashMap<(&[u8], &[u8]), usize> = HashMap::new();
        for (u, v) in &rules {
            if let (Some(a), Some(b)) = (u.last(), v.last()) {
                if a == b {
                    *families.entry((&u[..u.len() - 1], &v[..v.len() - 1])).or_default() += 1;
                }
            }
        }
        let complete: Vec<(Word, Word)> = families
            .into_iter()
            .filter(|&(_, count)| count == n)
            .map(|((u, v), _)| (u.to_vec(), v.to_vec()))
            .collect();
        if complete.is_empty() {
            return rules;
        }
        rules.retain(|(u, v)| {
            !complete.iter().any(|(pu, pv)| {
                u.len() == pu.len() + 1
                    && v.len() == pv.len() + 1
                    && u.last() == v.last()
                    && u.starts_with(pu)
                    && v.starts_with(pv)
            })
        });
        rules.extend(complete);
        rules.sort();
    }
}
