//! Permutations of `{1..n}` in cycle or one-line notation.

use std::fmt;

use crate::error::{Error, Result};

/// A permutation stored as its image list over `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return Err(Error::Parse(format!("{images:?} is not a permutation of 0..{n}")));
            }
        }
        Ok(Permutation(images))
    }

    /// Parses `"(1 2)(3)"`, `"[2,1,3]"` or `"2 1 3"` over `{1..n}`.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() || text == "()" || text == "id" {
            return Ok(Self::identity(n));
        }
        if text.starts_with('(') {
            let mut images: Vec<usize> = (0..n).collect();
            let mut seen = vec![false; n];
            for cycle in text.split(')') {
                let cycle = cycle.trim();
                if cycle.is_empty() {
                    continue;
                }
                let body = cycle
                    .strip_prefix('(')
                    .ok_or_else(|| Error::Parse(format!("malformed cycle in `{text}`")))?;
                let points = parse_points(body, n)?;
                for &p in &points {
                    if std::mem::replace(&mut seen[p], true) {
                        return Err(Error::Parse(format!("point {} repeated in `{text}`", p + 1)));
                    }
                }
                for (i, &p) in points.iter().enumerate() {
                    images[p] = points[(i + 1) % points.len()];
                }
            }
            return Self::from_images(images);
        }
        let body = text.trim_start_matches('[').trim_end_matches(']');
        let images = parse_points(body, n)?;
        if images.len() != n {
            return Err(Error::Parse(format!(
                "one-line permutation `{text}` must list {n} images"
            )));
        }
        Self::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&x| self.0[x]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (x, &y) in self.0.iter().enumerate() {
            inv[y] = x;
        }
        Permutation(inv)
    }

    pub fn symmetric_group(n: usize) -> Vec<Permutation> {
        fn go(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Permutation>) {
            let n = used.len();
            if prefix.len() == n {
                out.push(Permutation(prefix.clone()));
                return;
            }
            for x in 0..n {
                if !used[x] {
                    used[x] = true;
                    prefix.push(x);
                    go(prefix, used, out);
                    prefix.pop();
                    used[x] = false;
                }
            }
        }
        let mut out = Vec::new();
        go(&mut Vec::new(), &mut vec![false; n], &mut out);
        out
    }

    /// Closure of the generators under composition, sorted.
    pub fn generate(n: usize, generators: &[Permutation]) -> Vec<Permutation> {
        let mut group = vec![Self::identity(n)];
        let mut frontier = group.clone();
        while let Some(p) = frontier.pop() {
            for g in generators {
                let q = g.compose(&p);
                if !group.contains(&q) {
                    group.push(q.clone());
                    frontier.push(q);
                }
            }
        }
        group.sort();
        group
    }

    pub fn to_cycle_string(&self) -> String {
        let mut seen = vec![false; self.0.len()];
        let mut out = String::new();
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push((x + 1).to_string());
                x = self.0[x];
            }
            out.push('(');
            out.push_str(&cycle.join(" "));
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cycle_string())
    }
}

fn parse_points(body: &str, n: usize) -> Result<Vec<usize>> {
    body.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            let p: usize = t.parse().map_err(|_| Error::Parse(format!("bad point `{t}`")))?;
            if p == 0 || p > n {
                return Err(Error::Parse(format!("point {p} outside 1..={n}")));
            }
            Ok(p - 1)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_and_one_line_agree() {
        let a = Permutation::parse("(1 2 3)", 3).unwrap();
        let b = Permutation::parse("[2,3,1]", 3).unwrap();
        let c = Permutation::parse("2 3 1", 3).unwrap();
        assert_eq!(a, b);
        assert_eq!(b, c);
        assert_eq!(a.to_cycle_string(), "(1 2 3)");
    }

    #[test]
    fn rejects_non_permutations() {
        assert!(Permutation::parse("(1 1)", 3).is_err());
        assert!(Permutation::parse("[1,1,2]", 3).is_err());
        assert!(Permutation::parse("(1 4)", 3).is_err());
    }

    #[test]
    fn generated_group_orders() {
        let t = Permutation::parse("(1 2)", 3).unwrap();
        let c = Permutation::parse("(1 2 3)", 3).unwrap();
        assert_eq!(Permutation::generate(3, &[]).len(), 1);
        assert_eq!(Permutation::generate(3, std::slice::from_ref(&t)).len(), 2);
        assert_eq!(Permutation::generate(3, std::slice::from_ref(&c)).len(), 3);
        assert_eq!(Permutation::generate(3, &[t, c]).len(), 6);
    }
}
