//! The Cuntz inverse monoid `C_n`: partial maps of n-ary Cantor space that
//! exchange finitely many prefixes.
//!
//! Idempotents are clopen sets, units form Thompson's group `G_{n,1}`, and
//! there are no atoms. The witness constructions in [`witness`] return
//! certificates whose postconditions are re-checked on reload.

mod clopen;
mod element;
pub mod random;
pub mod witness;
mod word;

use serde::Serialize;

pub use clopen::ClopenSet;
pub use element::{CuntzElement, Evaluation, Rule};
pub use word::{comparable, format_word, is_prefix, parse_word, words_of_length, Point, Word};

use crate::algebra::{Basic, BasicDecomposition, BooleanInverseMonoid};
use crate::error::{Error, Result};

pub const DEFAULT_DEPTH_CAP: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CuntzMonoid {
    n: usize,
    depth_cap: usize,
}

/// A rule `u → v` with `u ≠ v` comparable: it fixes the single point
/// `shorter · w^∞` without fixing any cylinder around it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsolatedFixedPoint {
    pub rule: (String, String),
    pub fixed_point: String,
}

impl CuntzMonoid {
    pub fn new(n: usize) -> Result<Self> {
        Self::with_depth_cap(n, DEFAULT_DEPTH_CAP)
    }

    pub fn with_depth_cap(n: usize, depth_cap: usize) -> Result<Self> {
        if !(2..=10).contains(&n) {
            return Err(Error::Precondition(format!("alphabet size must be in 2..=10, got {n}")));
        }
        Ok(CuntzMonoid { n, depth_cap })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn depth_cap(&self) -> usize {
        self.depth_cap
    }

    pub fn parse(&self, text: &str) -> Result<CuntzElement> {
        CuntzElement::parse(text, self.n, self.depth_cap)
    }

    pub fn parse_clopen(&self, text: &str) -> Result<ClopenSet> {
        let e = ClopenSet::parse(text, self.n)?;
        if e.depth() > self.depth_cap {
            return Err(Error::DepthCap { cap: self.depth_cap });
        }
        Ok(e)
    }

    pub fn canonicalize(&self, rules: Vec<Rule>) -> Result<CuntzElement> {
        CuntzElement::canonicalize(rules, self.n, self.depth_cap)
    }

    pub fn d(&self, s: &CuntzElement) -> ClopenSet {
        s.dom(self.n)
    }

    pub fn r(&self, s: &CuntzElement) -> ClopenSet {
        s.ran(self.n)
    }

    pub fn fixed_clopen(&self, s: &CuntzElement) -> ClopenSet {
        s.fixed_part().dom(self.n)
    }

    pub fn support(&self, s: &CuntzElement) -> ClopenSet {
        self.fixed_clopen(s).complement(self.n).meet(&self.d(s), self.n)
    }

    pub fn idempotent(&self, e: &ClopenSet) -> CuntzElement {
        CuntzElement::idempotent(e)
    }

    pub fn restrict(&self, s: &CuntzElement, e: &ClopenSet) -> Result<CuntzElement> {
        s.compose(&CuntzElement::idempotent(e), self.n, self.depth_cap)
    }

    /// Identity rules form the idempotent part; incomparable rules are
    /// infinitesimals; a comparable rule `u ≠ v` is an obstruction. The last
    /// such rule in domain order is reported.
    pub fn basic_decompose(&self, s: &CuntzElement) -> Basic<CuntzElement, IsolatedFixedPoint> {
        let mut obstruction = None;
        let mut infinitesimals = Vec::new();
        for (u, v) in s.rules() {
            if u == v {
                continue;
            }
            if comparable(u, v) {
                obstruction = Some((u, v));
            } else {
                infinitesimals.push(
                    CuntzElement::canonicalize(vec![(u.clone(), v.clone())], self.n, self.depth_cap)
                        .expect("a single rule is canonical"),
                );
            }
        }
        if let Some((u, v)) = obstruction {
            let (short, long) = if u.len() < v.len() { (u, v) } else { (v, u) };
            let w = &long[short.len()..];
            return Basic::Obstructed(IsolatedFixedPoint {
                rule: (format_word(u), format_word(v)),
                fixed_point: Point::new(short.clone(), w.to_vec()).to_string(),
            });
        }
        Basic::Decomposed(BasicDecomposition {
            idempotent: s.fixed_part(),
            infinitesimals,
        })
    }

    /// Does `s` commute with every cylinder idempotent up to `depth`?
    pub fn commutes_with_cylinders(&self, s: &CuntzElement, depth: usize) -> Result<bool> {
        for len in 0..=depth {
            for w in words_of_length(self.n, len) {
                let e = CuntzElement::idempotent(&ClopenSet::cylinder(w));
                if self.multiply(s, &e)? != self.multiply(&e, s)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Conjugation of every subcylinder of `e` up to `depth` letters.
    pub fn conjugation_on_cylinders(&self, s: &CuntzElement, e: &ClopenSet, depth: usize) -> Result<Vec<CuntzElement>> {
        let mut out = Vec::new();
        for c in e.words() {
            for len in 0..=depth.saturating_sub(c.len()) {
                for x in words_of_length(self.n, len) {
                    let mut w = c.clone();
                    w.extend(x);
                    out.push(self.conjugate(s, &CuntzElement::idempotent(&ClopenSet::cylinder(w)))?);
                }
            }
        }
        Ok(out)
    }

    /// Bounded test of `g` fixing `e↓` pointwise: conjugation by `g` fixes
    /// every subcylinder of `e` down to the depth of `g`'s rules.
    pub fn fixes_pointwise(&self, g: &CuntzElement, e: &ClopenSet) -> Result<bool> {
        let depth = g.depth().max(e.depth());
        for c in e.words() {
            for len in 0..=depth.saturating_sub(c.len()) {
                for x in words_of_length(self.n, len) {
                    let mut w = c.clone();
                    w.extend(x);
                    let f = CuntzElement::idempotent(&ClopenSet::cylinder(w));
                    if self.conjugate(g, &f)? != f {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    pub fn is_infinitesimal_by_ranges(&self, s: &CuntzElement) -> bool {
        !s.is_empty() && self.d(s).is_disjoint(&self.r(s), self.n)
    }
}

impl BooleanInverseMonoid for CuntzMonoid {
    type Element = CuntzElement;

    fn zero(&self) -> CuntzElement {
        CuntzElement::zero()
    }

    fn one(&self) -> CuntzElement {
        CuntzElement::one()
    }

    fn multiply(&self, a: &CuntzElement, b: &CuntzElement) -> Result<CuntzElement> {
        a.compose(b, self.n, self.depth_cap)
    }

    fn inverse(&self, a: &CuntzElement) -> CuntzElement {
        a.inverse()
    }

    fn is_idempotent(&self, a: &CuntzElement) -> bool {
        a.is_idempotent()
    }

    fn phi(&self, a: &CuntzElement) -> CuntzElement {
        a.fixed_part()
    }

    fn complement(&self, e: &CuntzElement) -> Result<CuntzElement> {
        if !e.is_idempotent() {
            return Err(Error::Precondition(format!("{e} is not an idempotent")));
        }
        Ok(CuntzElement::idempotent(&e.dom(self.n).complement(self.n)))
    }

    fn join_compatible(&self, a: &CuntzElement, b: &CuntzElement) -> Result<CuntzElement> {
        let outside = self.d(a).complement(self.n);
        let rest = self.restrict(b, &outside)?;
        let rules = a.rules().iter().chain(rest.rules()).cloned().collect();
        self.canonicalize(rules)
    }

    fn is_atom(&self, _: &CuntzElement) -> bool {
        false
    }

    /// Bounded: equal domains and equal conjugation on every cylinder of the
    /// domain down to one letter past the deepest rule.
    fn mu_related(&self, a: &CuntzElement, b: &CuntzElement) -> Result<bool> {
        let da = self.d(a);
        if da != self.d(b) {
            return Ok(false);
        }
        let depth = a.depth().max(b.depth()) + 1;
        Ok(self.conjugation_on_cylinders(a, &da, depth)? == self.conjugation_on_cylinders(b, &da, depth)?)
    }

    fn render(&self, a: &CuntzElement) -> String {
        a.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c2() -> CuntzMonoid {
        CuntzMonoid::new(2).unwrap()
    }

    fn el(text: &str) -> CuntzElement {
        c2().parse(text).unwrap()
    }

    #[test]
    fn polycyclic_relations() {
        let m = c2();
        let p = el("e->0");
        let q = el("e->1");
        assert_eq!(m.multiply(&p, &q).unwrap(), el("e->01"));
        assert_eq!(m.dom(&p).unwrap(), m.one());
        assert_eq!(m.dom(&q).unwrap(), m.one());
        let pp = m.ran(&p).unwrap();
        let qq = m.ran(&q).unwrap();
        assert!(m.multiply(&pp, &qq).unwrap().is_empty());
    }

    #[test]
    fn fixpoint_and_basic() {
        let m = c2();
        let s = el("0->0, 10->11, 11->10");
        let fs = m.fixpoint_and_support(&s).unwrap();
        assert_eq!(fs.phi, el("0->0"));
        assert_eq!(fs.sigma, el("1->1"));
        let dec = m.basic_decompose(&s);
        let dec = dec.decomposition().unwrap();
        assert_eq!(dec.idempotent, el("0->0"));
        assert_eq!(dec.infinitesimals, vec![el("10->11"), el("11->10")]);
        assert!(crate::algebra::verify_basic(&m, &s, dec).unwrap());

        let g = el("0->00, 10->01, 11->1");
        let w = m.basic_decompose(&g);
        let w = w.obstruction().unwrap();
        assert_eq!(w.rule, ("11".to_string(), "1".to_string()));
        assert_eq!(w.fixed_point, "(1)^∞");
    }

    #[test]
    fn join_meet_and_complement() {
        let m = c2();
        let a = el("0->10");
        let b = el("0->11");
        assert!(matches!(m.join(&a, &b), Err(Error::Incompatible(_))));
        let c = el("11->0");
        assert_eq!(m.join(&a, &c).unwrap(), el("0->10, 11->0"));
        assert_eq!(m.meet(&el("0->1, 1->0"), &el("0->1, 1->00")).unwrap(), el("0->1"));
        assert_eq!(m.complement(&el("0->0")).unwrap(), el("1->1"));
        assert!(m.complement(&a).is_err());
    }

    #[test]
    fn classification() {
        let m = c2();
        let a = el("0->1");
        let k = m.classify(&a).unwrap();
        assert!(k.is_infinitesimal && !k.is_unit && !k.is_idempotent && !k.is_atom);
        let g = m.unit_from_infinitesimal(&a).unwrap();
        assert_eq!(g, el("0->1, 1->0"));
        assert!(m.is_unit(&g).unwrap());
        assert!(m.classify(&el("0->00, 10->01, 11->1")).unwrap().is_unit);
    }

    #[test]
    fn mu_is_equality_on_samples() {
        let m = c2();
        let a = el("0->1, 1->0");
        assert!(m.mu_related(&a, &a).unwrap());
        assert!(!m.mu_related(&a, &m.one()).unwrap());
        assert!(!m.mu_related(&el("0->00, 1->01"), &el("0->01, 1->00")).unwrap());
    }

    #[test]
    fn bounded_fundamental() {
        let m = c2();
        assert!(!m.commutes_with_cylinders(&el("0->1, 1->0"), 2).unwrap());
        assert!(m.commutes_with_cylinders(&el("0->0"), 3).unwrap());
    }

    #[test]
    fn pointwise_fixing() {
        let m = c2();
        let g = el("0->0, 10->11, 11->10");
        assert!(m.fixes_pointwise(&g, &ClopenSet::cylinder(vec![0])).unwrap());
        assert!(!m.fixes_pointwise(&g, &ClopenSet::cylinder(vec![1])).unwrap());
        assert!(!m.fixes_pointwise(&g, &ClopenSet::full()).unwrap());
    }
}
