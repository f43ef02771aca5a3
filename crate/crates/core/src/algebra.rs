//! The calculus shared by every Boolean inverse ∧-monoid engine.
//!
//! An engine supplies multiplication, inversion, the fixed-point operator,
//! complementation of idempotents and the raw join of a compatible pair.
//! Everything else (order, compatibility, meets, supports, refinements,
//! involutions built from infinitesimals) is derived here once and reused
//! by both the finite engine and the Cuntz engine.

use std::fmt::Debug;
use std::hash::Hash;

use serde::Serialize;

use crate::error::{Error, Result};

pub trait BooleanInverseMonoid {
    type Element: Clone + Eq + Hash + Debug;

    fn zero(&self) -> Self::Element;
    fn one(&self) -> Self::Element;
    fn multiply(&self, a: &Self::Element, b: &Self::Element) -> Result<Self::Element>;
    fn inverse(&self, a: &Self::Element) -> Self::Element;
    fn is_idempotent(&self, a: &Self::Element) -> bool;

    /// Largest idempotent below `a`.
    fn phi(&self, a: &Self::Element) -> Self::Element;

    /// Complement of an idempotent inside the identity.
    fn complement(&self, e: &Self::Element) -> Result<Self::Element>;

    /// Join of a pair already known to be compatible.
    fn join_compatible(&self, a: &Self::Element, b: &Self::Element) -> Result<Self::Element>;

    /// Minimal nonzero element. Atomless engines answer `false`.
    fn is_atom(&self, a: &Self::Element) -> bool;

    /// `a μ b`: both induce the same conjugation on idempotents.
    fn mu_related(&self, a: &Self::Element, b: &Self::Element) -> Result<bool>;

    fn render(&self, a: &Self::Element) -> String;

    fn is_zero(&self, a: &Self::Element) -> bool {
        *a == self.zero()
    }

    fn dom(&self, a: &Self::Element) -> Result<Self::Element> {
        self.multiply(&self.inverse(a), a)
    }

    fn ran(&self, a: &Self::Element) -> Result<Self::Element> {
        self.multiply(a, &self.inverse(a))
    }

    fn product(&self, factors: &[&Self::Element]) -> Result<Self::Element> {
        let mut acc = self.one();
        for f in factors {
            acc = self.multiply(&acc, f)?;
        }
        Ok(acc)
    }

    fn conjugate(&self, g: &Self::Element, e: &Self::Element) -> Result<Self::Element> {
        let ge = self.multiply(g, e)?;
        self.multiply(&ge, &self.inverse(g))
    }

    /// Natural partial order: `a = b·d(a)`.
    fn leq(&self, a: &Self::Element, b: &Self::Element) -> Result<bool> {
        Ok(*a == self.multiply(b, &self.dom(a)?)?)
    }

    fn compatible(&self, a: &Self::Element, b: &Self::Element) -> Result<bool> {
        let ab = self.multiply(a, &self.inverse(b))?;
        let ab_ = self.multiply(&self.inverse(a), b)?;
        Ok(self.is_idempotent(&ab) && self.is_idempotent(&ab_))
    }

    fn orthogonal(&self, a: &Self::Element, b: &Self::Element) -> Result<bool> {
        let ab = self.multiply(a, &self.inverse(b))?;
        let ab_ = self.multiply(&self.inverse(a), b)?;
        Ok(self.is_zero(&ab) && self.is_zero(&ab_))
    }

    fn relations(&self, a: &Self::Element, b: &Self::Element) -> Result<Relations> {
        Ok(Relations {
            leq: self.leq(a, b)?,
            compatible: self.compatible(a, b)?,
            orthogonal: self.orthogonal(a, b)?,
            mu_related: self.mu_related(a, b)?,
        })
    }

    /// `a ∧ b = φ(ab⁻¹)·b`.
    fn meet(&self, a: &Self::Element, b: &Self::Element) -> Result<Self::Element> {
        let ab = self.multiply(a, &self.inverse(b))?;
        self.multiply(&self.phi(&ab), b)
    }

    fn join(&self, a: &Self::Element, b: &Self::Element) -> Result<Self::Element> {
        let ab = self.multiply(a, &self.inverse(b))?;
        if !self.is_idempotent(&ab) {
            return Err(Error::Incompatible(format!(
                "{}·{}⁻¹ = {} is not idempotent",
                self.render(a),
                self.render(b),
                self.render(&ab)
            )));
        }
        let ab_ = self.multiply(&self.inverse(a), b)?;
        if !self.is_idempotent(&ab_) {
            return Err(Error::Incompatible(format!(
                "{}⁻¹·{} = {} is not idempotent",
                self.render(a),
                self.render(b),
                self.render(&ab_)
            )));
        }
        self.join_compatible(a, b)
    }

    fn join_all<'a, I>(&self, parts: I) -> Result<Self::Element>
    where
        I: IntoIterator<Item = &'a Self::Element>,
        Self::Element: 'a,
    {
        parts.into_iter().try_fold(self.zero(), |acc, p| self.join(&acc, p))
    }

    /// `σ(s) = ¬φ(s)·d(s)`.
    fn sigma(&self, s: &Self::Element) -> Result<Self::Element> {
        let not_phi = self.complement(&self.phi(s))?;
        self.multiply(&not_phi, &self.dom(s)?)
    }

    fn fixpoint_and_support(&self, s: &Self::Element) -> Result<FixpointSupport<Self::Element>> {
        let phi = self.phi(s);
        let sigma = self.sigma(s)?;
        let moving = self.multiply(s, &sigma)?;
        Ok(FixpointSupport {
            cooper: (phi.clone(), moving),
            phi,
            sigma,
        })
    }

    fn is_unit(&self, a: &Self::Element) -> Result<bool> {
        let one = self.one();
        Ok(self.dom(a)? == one && self.ran(a)? == one)
    }

    fn is_infinitesimal(&self, a: &Self::Element) -> Result<bool> {
        Ok(!self.is_zero(a) && self.is_zero(&self.multiply(a, a)?))
    }

    fn classify(&self, a: &Self::Element) -> Result<Classification> {
        Ok(Classification {
            is_idempotent: self.is_idempotent(a),
            is_infinitesimal: self.is_infinitesimal(a)?,
            is_unit: self.is_unit(a)?,
            is_atom: self.is_atom(a),
        })
    }

    /// The involution `a ∨ a⁻¹ ∨ ¬(d(a) ∨ r(a))` lying above an infinitesimal.
    fn unit_from_infinitesimal(&self, a: &Self::Element) -> Result<Self::Element> {
        if !self.is_infinitesimal(a)? {
            return Err(Error::Precondition(format!(
                "{} is not an infinitesimal",
                self.render(a)
            )));
        }
        let outside = self.complement(&self.join(&self.dom(a)?, &self.ran(a)?)?)?;
        let u = self.join(a, &self.inverse(a))?;
        self.join(&u, &outside)
    }

    /// Rewrites a compatible family as an orthogonal family with the same
    /// join, every part lying below some input part. Zero parts are dropped.
    fn orthogonal_refinement(&self, parts: &[Self::Element]) -> Result<Vec<Self::Element>> {
        for (i, a) in parts.iter().enumerate() {
            for b in &parts[i + 1..] {
                if !self.compatible(a, b)? {
                    return Err(Error::Incompatible(format!(
                        "{} and {}",
                        self.render(a),
                        self.render(b)
                    )));
                }
            }
        }
        let mut refined: Vec<Self::Element> = Vec::new();
        for s in parts {
            let ds = self.dom(s)?;
            let not_ds = self.complement(&ds)?;
            let mut covered = self.zero();
            let mut next = Vec::with_capacity(refined.len() * 2 + 1);
            for t in &refined {
                covered = self.join(&covered, &self.dom(t)?)?;
                next.push(self.multiply(t, &not_ds)?);
                next.push(self.multiply(t, &ds)?);
            }
            next.push(self.multiply(s, &self.complement(&covered)?)?);
            next.retain(|p| !self.is_zero(p));
            refined = next;
        }
        Ok(refined)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Relations {
    pub leq: bool,
    pub compatible: bool,
    pub orthogonal: bool,
    pub mu_related: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub is_idempotent: bool,
    pub is_infinitesimal: bool,
    pub is_unit: bool,
    pub is_atom: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixpointSupport<E> {
    pub phi: E,
    pub sigma: E,
    /// `(φ(s), s·σ(s))`, an orthogonal pair joining to `s`.
    pub cooper: (E, E),
}

/// `s = e ∨ s₁ ∨ … ∨ sₘ` with `e` idempotent and each `sᵢ` an infinitesimal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasicDecomposition<E> {
    pub idempotent: E,
    pub infinitesimals: Vec<E>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Basic<E, W> {
    Decomposed(BasicDecomposition<E>),
    Obstructed(W),
}

impl<E, W> Basic<E, W> {
    pub fn is_decomposed(&self) -> bool {
        matches!(self, Basic::Decomposed(_))
    }

    pub fn decomposition(&self) -> Option<&BasicDecomposition<E>> {
        match self {
            Basic::Decomposed(d) => Some(d),
            Basic::Obstructed(_) => None,
        }
    }

    pub fn obstruction(&self) -> Option<&W> {
        match self {
            Basic::Decomposed(_) => None,
            Basic::Obstructed(w) => Some(w),
        }
    }
}

/// Checks the postconditions of a basic decomposition of `s`.
pub fn verify_basic<M: BooleanInverseMonoid + ?Sized>(
    m: &M,
    s: &M::Element,
    dec: &BasicDecomposition<M::Element>,
) -> Result<bool> {
    if !m.is_idempotent(&dec.idempotent) {
        return Ok(false);
    }
    for (i, a) in dec.infinitesimals.iter().enumerate() {
        if !m.is_infinitesimal(a)? {
            return Ok(false);
        }
        for b in &dec.infinitesimals[i + 1..] {
            if !m.orthogonal(a, b)? {
                return Ok(false);
            }
        }
    }
    let moving = m.join_all(&dec.infinitesimals)?;
    if !m.orthogonal(&dec.idempotent, &moving)? {
        return Ok(false);
    }
    Ok(m.join(&dec.idempotent, &moving)? == *s)
}

/// A finite family transporting `source` into `target`:
/// `source = ⋁ d(xᵢ)` and every `r(xᵢ) ≤ target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pencil<E> {
    pub elements: Vec<E>,
    pub source: E,
    pub target: E,
}

impl<E: Clone + Eq + Hash + Debug> Pencil<E> {
    pub fn verify<M>(&self, m: &M) -> Result<bool>
    where
        M: BooleanInverseMonoid<Element = E> + ?Sized,
    {
        if self.elements.is_empty() {
            return Ok(false);
        }
        let mut cover = m.zero();
        for x in &self.elements {
            cover = m.join(&cover, &m.dom(x)?)?;
            if !m.leq(&m.ran(x)?, &self.target)? {
                return Ok(false);
            }
        }
        Ok(cover == self.source)
    }

    /// True when the domains are pairwise orthogonal.
    pub fn is_orthogonal<M>(&self, m: &M) -> Result<bool>
    where
        M: BooleanInverseMonoid<Element = E> + ?Sized,
    {
        for (i, x) in self.elements.iter().enumerate() {
            for y in &self.elements[i + 1..] {
                if !m.is_zero(&m.multiply(&m.dom(x)?, &m.dom(y)?)?) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}
