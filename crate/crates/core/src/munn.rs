//! The Munn monoid of a finite Boolean algebra.
//!
//! Elements are order-isomorphisms between principal ideals of the Boolean
//! algebra of subsets of `n` atoms, stored as explicit tables so that
//! composition is plain function composition. [`munn_monoid`] also builds the
//! atom-restriction map onto `KB(pair:n)` and checks it is an isomorphism.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::finite::FinBim;
use crate::groupoid::{FiniteGroupoid, LocalBisection};
use crate::perm::Permutation;

const MAX_ATOMS: usize = 5;

/// An order-isomorphism `e↓ → f↓`; `table[x]` is defined exactly for `x ⊆ e`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MunnMap {
    pub dom: u32,
    pub ran: u32,
    table: Vec<(u32, u32)>,
}

impl MunnMap {
    pub fn apply(&self, x: u32) -> Option<u32> {
        self.table
            .binary_search_by_key(&x, |&(k, _)| k)
            .ok()
            .map(|i| self.table[i].1)
    }

    pub fn inverse(&self) -> MunnMap {
        let mut table: Vec<(u32, u32)> = self.table.iter().map(|&(x, y)| (y, x)).collect();
        table.sort_unstable();
        MunnMap {
            dom: self.ran,
            ran: self.dom,
            table,
        }
    }

    /// `self ∘ other` on the largest ideal where it is defined.
    pub fn compose(&self, other: &MunnMap) -> MunnMap {
        let middle = other.ran & self.dom;
        let back = other.inverse().apply(middle).expect("middle lies in ran(other)");
        let mut table: Vec<(u32, u32)> = subsets(back)
            .map(|x| {
                let y = other.apply(x).expect("x below dom(other)");
                (x, self.apply(y).expect("y below dom(self)"))
            })
            .collect();
        table.sort_unstable();
        MunnMap {
            dom: back,
            ran: self.apply(other.apply(back).unwrap()).unwrap(),
            table,
        }
    }

    /// Brute-force check that the table is an order-isomorphism `dom↓ → ran↓`.
    pub fn is_order_isomorphism(&self) -> bool {
        let xs: Vec<u32> = subsets(self.dom).collect();
        let ys: Vec<u32> = subsets(self.ran).collect();
        if xs.len() != self.table.len() || ys.len() != xs.len() {
            return false;
        }
        let mut images: Vec<u32> = Vec::with_capacity(xs.len());
        for &x in &xs {
            match self.apply(x) {
                Some(y) if y & !self.ran == 0 => images.push(y),
                _ => return false,
            }
        }
        let mut sorted = images.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != xs.len() {
            return false;
        }
        xs.iter().enumerate().all(|(i, &x)| {
            xs.iter().enumerate().all(|(j, &y)| {
                let below = x & !y == 0;
                let below_img = images[i] & !images[j] == 0;
                below == below_img
            })
        })
    }
}

fn subsets(mask: u32) -> impl Iterator<Item = u32> {
    // all submasks of `mask`, including 0 and `mask`
    let mut next = Some(mask);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 { None } else { Some((cur - 1) & mask) };
        Some(cur)
    })
}

fn atoms_of(mask: u32) -> Vec<u32> {
    (0..32).filter(|i| mask & (1 << i) != 0).collect()
}

#[derive(Debug, Clone)]
pub struct MunnMonoid {
    pub atoms: usize,
    pub elements: Vec<MunnMap>,
}

impl MunnMonoid {
    /// All order-isomorphisms between principal ideals of the Boolean
    /// algebra on `n` atoms.
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_ATOMS {
            return Err(Error::SizeBound(format!(
                "Munn monoid needs 1..={MAX_ATOMS} atoms, got {n}"
            )));
        }
        let top = (1u32 << n) - 1;
        let mut elements = Vec::new();
        for e in subsets(top) {
            for f in subsets(top) {
                let ae = atoms_of(e);
                let af = atoms_of(f);
                if ae.len() != af.len() {
                    continue;
                }
                for p in Permutation::symmetric_group(ae.len()) {
                    let image_of = |x: u32| {
                        ae.iter()
                            .enumerate()
                            .filter(|(_, &a)| x & (1 << a) != 0)
                            .fold(0u32, |acc, (i, _)| acc | (1 << af[p.apply(i)]))
                    };
                    let mut table: Vec<(u32, u32)> = subsets(e).map(|x| (x, image_of(x))).collect();
                    table.sort_unstable();
                    let m = MunnMap { dom: e, ran: f, table };
                    debug_assert!(m.is_order_isomorphism());
                    elements.push(m);
                }
            }
        }
        elements.sort();
        Ok(MunnMonoid { atoms: n, elements })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn units(&self) -> Vec<&MunnMap> {
        let top = (1u32 << self.atoms) - 1;
        self.elements.iter().filter(|m| m.dom == top && m.ran == top).collect()
    }
}

#[derive(Debug, Clone)]
pub struct MunnReport {
    pub munn: MunnMonoid,
    pub target: FinBim,
    /// `iso[i]` is the image of `munn.elements[i]` in `KB(pair:n)`.
    pub iso: Vec<LocalBisection>,
}

/// Builds `T_E` for the Boolean algebra on `n` atoms together with a
/// verified isomorphism onto `KB(pair:n)`.
pub fn munn_monoid(n: usize) -> Result<MunnReport> {
    let munn = MunnMonoid::new(n)?;
    let g = FiniteGroupoid::pair(n)?;
    let to_bisection = |m: &MunnMap| -> Result<LocalBisection> {
        let arrows = atoms_of(m.dom).into_iter().map(|i| {
            let j = m.apply(1 << i).unwrap().trailing_zeros() as usize;
            g.hom_set(i as usize, j)[0]
        });
        g.bisection(arrows)
    };
    let iso = munn.elements.iter().map(to_bisection).collect::<Result<Vec<_>>>()?;
    let target = FinBim::kb(g);

    let position: HashMap<&LocalBisection, usize> = iso.iter().enumerate().map(|(i, s)| (s, i)).collect();
    if position.len() != munn.len() || munn.len() != target.len() {
        return Err(Error::Inconsistent(format!(
            "atom map is not a bijection: |T_E| = {}, |KB| = {}",
            munn.len(),
            target.len()
        )));
    }
    let munn_index: HashMap<&MunnMap, usize> = munn.elements.iter().enumerate().map(|(i, m)| (m, i)).collect();
    for (i, a) in munn.elements.iter().enumerate() {
        if iso[munn_index[&a.inverse()]] != target.inv(&iso[i]) {
            return Err(Error::Inconsistent("atom map does not preserve inverses".into()));
        }
        for (j, b) in munn.elements.iter().enumerate() {
            let ab = a.compose(b);
            let k = *munn_index
                .get(&ab)
                .ok_or_else(|| Error::Inconsistent("T_E is not closed under composition".into()))?;
            if iso[k] != target.mul(&iso[i], &iso[j]) {
                return Err(Error::Inconsistent(format!(
                    "atom map is not multiplicative on elements {i}, {j}"
                )));
            }
        }
    }
    Ok(MunnReport { munn, target, iso })
}
