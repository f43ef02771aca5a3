//! The finite engine: Boolean inverse ∧-monoids of local bisections.
//!
//! `FinBim` pairs a groupoid with a carrier of local bisections. The full
//! carrier is `KB(G)`; user-supplied carriers are validated for closure with
//! an explicit witness on failure. Elements are sorted arrow-id sets, so the
//! natural partial order is literally subset inclusion.

use std::collections::{BTreeSet, HashMap, HashSet};

use serde::Serialize;

use crate::algebra::{Basic, BasicDecomposition, BooleanInverseMonoid, Pencil};
use crate::error::{Error, Result};
use crate::groupoid::{ArrowId, FiniteGroupoid, LocalBisection, ObjectId};

pub type Element = LocalBisection;

#[derive(Debug, Clone)]
pub struct FinBim {
    groupoid: FiniteGroupoid,
    elements: Vec<Element>,
    index: HashMap<Element, usize>,
    one: Element,
    idempotents: Vec<Element>,
    e_atoms: Vec<Element>,
    atoms: Vec<Element>,
    units: Vec<Element>,
}

/// Why an element is not a join of an idempotent and infinitesimals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum BasicObstruction {
    /// A non-identity arrow with equal domain and codomain.
    IsotropyArrow { arrow: ArrowId, name: String },
    /// An atom of a sub-monoid that is neither idempotent nor infinitesimal.
    NonBasicAtom(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreenRelations {
    pub d: bool,
    pub j: bool,
    pub preceq: Option<Pencil<Element>>,
    pub equiv: bool,
}

impl FinBim {
    /// `KB(G)`: every local bisection of `g`.
    pub fn kb(groupoid: FiniteGroupoid) -> Self {
        let elements = groupoid.local_bisections();
        Self::assemble(groupoid, elements)
    }

    /// A validated sub-monoid of `KB(G)`.
    pub fn with_carrier(groupoid: FiniteGroupoid, carrier: Vec<Element>) -> Result<Self> {
        let mut elements = Vec::with_capacity(carrier.len());
        for s in carrier {
            elements.push(groupoid.bisection(s.arrows().iter().copied())?);
        }
        elements.sort();
        elements.dedup();
        let set: HashSet<&Element> = elements.iter().collect();
        let name = |s: &Element| groupoid.format_element(s);
        let missing = |operation: &'static str, witness: String| Error::NotClosed { operation, witness };

        let zero = LocalBisection::empty();
        let one = groupoid.identities();
        if !set.contains(&zero) {
            return Err(missing("zero", "∅ is not in the carrier".into()));
        }
        if !set.contains(&one) {
            return Err(missing("identity", format!("{} is not in the carrier", name(&one))));
        }
        for a in &elements {
            let inv = groupoid.bisection_inverse(a);
            if !set.contains(&inv) {
                return Err(missing("inverse", format!("{}⁻¹ = {}", name(a), name(&inv))));
            }
            if a.is_subset(&one) {
                let c = one.difference(a);
                if !set.contains(&c) {
                    return Err(missing("complement", format!("¬{} = {}", name(a), name(&c))));
                }
            }
        }
        for a in &elements {
            for b in &elements {
                let ab = groupoid.bisection_product(a, b);
                if !set.contains(&ab) {
                    return Err(missing("product", format!("{}·{} = {}", name(a), name(b), name(&ab))));
                }
                let m = a.intersection(b);
                if !set.contains(&m) {
                    return Err(missing("meet", format!("{} ∧ {} = {}", name(a), name(b), name(&m))));
                }
                let u = a.union_unchecked(b);
                if groupoid.bisection(u.arrows().iter().copied()).is_ok() && !set.contains(&u) {
                    return Err(missing("join", format!("{} ∨ {} = {}", name(a), name(b), name(&u))));
                }
            }
        }
        Ok(Self::assemble(groupoid, elements))
    }

    fn assemble(groupoid: FiniteGroupoid, elements: Vec<Element>) -> Self {
        let one = groupoid.identities();
        let index = elements.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let idempotents: Vec<Element> = elements.iter().filter(|s| s.is_subset(&one)).cloned().collect();
        let e_atoms: Vec<Element> = idempotents
            .iter()
            .filter(|e| !e.is_empty())
            .filter(|e| {
                !idempotents
                    .iter()
                    .any(|f| !f.is_empty() && f.len() < e.len() && f.is_subset(e))
            })
            .cloned()
            .collect();
        let atoms: Vec<Element> = elements
            .iter()
            .filter(|s| {
                let d = groupoid.bisection_product(&groupoid.bisection_inverse(s), s);
                e_atoms.contains(&d)
            })
            .cloned()
            .collect();
        let units = elements
            .iter()
            .filter(|s| {
                groupoid.bisection_product(&groupoid.bisection_inverse(s), s) == one
                    && groupoid.bisection_product(s, &groupoid.bisection_inverse(s)) == one
            })
            .cloned()
            .collect();
        FinBim {
            groupoid,
            elements,
            index,
            one,
            idempotents,
            e_atoms,
            atoms,
            units,
        }
    }

    pub fn groupoid(&self) -> &FiniteGroupoid {
        &self.groupoid
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, s: &Element) -> bool {
        self.index.contains_key(s)
    }

    pub fn index_of(&self, s: &Element) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn idempotents(&self) -> &[Element] {
        &self.idempotents
    }

    pub fn nonzero_idempotents(&self) -> impl Iterator<Item = &Element> {
        self.idempotents.iter().filter(|e| !e.is_empty())
    }

    /// Atoms of the Boolean algebra of idempotents.
    pub fn e_atoms(&self) -> &[Element] {
        &self.e_atoms
    }

    /// Minimal nonzero elements of the carrier.
    pub fn atoms(&self) -> &[Element] {
        &self.atoms
    }

    pub fn units(&self) -> &[Element] {
        &self.units
    }

    pub fn parse(&self, text: &str) -> Result<Element> {
        let s = self.groupoid.parse_element(text)?;
        if !self.contains(&s) {
            return Err(Error::Precondition(format!(
                "{} is not in the carrier",
                self.groupoid.format_element(&s)
            )));
        }
        Ok(s)
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        self.groupoid.bisection_product(a, b)
    }

    /// The join of a compatible pair, `None` otherwise.
    pub fn try_join(&self, a: &Element, b: &Element) -> Option<Element> {
        let compatible =
            self.is_idempotent(&self.mul(a, &self.inv(b))) && self.is_idempotent(&self.mul(&self.inv(a), b));
        compatible.then(|| a.union_unchecked(b))
    }

    pub fn inv(&self, a: &Element) -> Element {
        self.groupoid.bisection_inverse(a)
    }

    pub fn d(&self, a: &Element) -> Element {
        self.mul(&self.inv(a), a)
    }

    pub fn r(&self, a: &Element) -> Element {
        self.mul(a, &self.inv(a))
    }

    /// Idempotent atoms below `e`.
    pub fn e_atoms_below<'a>(&'a self, e: &'a Element) -> impl Iterator<Item = &'a Element> + 'a {
        self.e_atoms.iter().filter(move |a| a.is_subset(e))
    }

    /// Atoms of the carrier below `s`.
    pub fn atoms_below<'a>(&'a self, s: &'a Element) -> impl Iterator<Item = &'a Element> + 'a {
        self.atoms.iter().filter(move |a| a.is_subset(s))
    }

    /// Splits `s` into an idempotent and pairwise orthogonal infinitesimals,
    /// or reports the atom that blocks it.
    pub fn basic_decompose(&self, s: &Element) -> Basic<Element, BasicObstruction> {
        let mut idempotent = LocalBisection::empty();
        let mut infinitesimals = Vec::new();
        for a in self.atoms_below(s) {
            if a.is_subset(&self.one) {
                idempotent = idempotent.union_unchecked(a);
            } else if self.mul(a, a).is_empty() {
                infinitesimals.push(a.clone());
            } else {
                let g = &self.groupoid;
                let isotropy = a.arrows().iter().copied().find(|&x| {
                    let arrow = g.arrow(x);
                    arrow.dom == arrow.cod && !g.is_identity(x)
                });
                return Basic::Obstructed(match isotropy {
                    Some(arrow) => BasicObstruction::IsotropyArrow {
                        arrow,
                        name: g.arrow_name(arrow),
                    },
                    None => BasicObstruction::NonBasicAtom(g.format_element(a)),
                });
            }
        }
        Basic::Decomposed(BasicDecomposition {
            idempotent,
            infinitesimals,
        })
    }

    fn require_idempotent(&self, e: &Element) -> Result<()> {
        if !self.contains(e) || !e.is_subset(&self.one) {
            return Err(Error::Precondition(format!(
                "{} is not an idempotent of the monoid",
                self.groupoid.format_element(e)
            )));
        }
        Ok(())
    }

    /// `e 𝒟 f`: some carrier element has domain `e` and range `f`.
    pub fn d_related(&self, e: &Element, f: &Element) -> bool {
        self.elements.iter().any(|s| self.d(s) == *e && self.r(s) == *f)
    }

    /// The two-sided ideal `SeS`, as a set of carrier indices.
    pub fn principal_ideal(&self, e: &Element) -> BTreeSet<usize> {
        let left: HashSet<Element> = self.elements.iter().map(|s| self.mul(s, e)).collect();
        let mut ideal = BTreeSet::new();
        for x in &left {
            for t in &self.elements {
                ideal.insert(self.index[&self.mul(x, t)]);
            }
        }
        ideal
    }

    /// A pencil from `e` to `f` if one exists: one element per idempotent
    /// atom of `e`, each carrying that atom into `f`.
    pub fn pencil(&self, e: &Element, f: &Element) -> Option<Pencil<Element>> {
        let mut elements = Vec::new();
        for atom in self.e_atoms_below(e) {
            let x = self
                .atoms
                .iter()
                .find(|x| self.d(x) == *atom && self.r(x).is_subset(f))?;
            elements.push(x.clone());
        }
        if elements.is_empty() {
            return None;
        }
        Some(Pencil {
            elements,
            source: e.clone(),
            target: f.clone(),
        })
    }

    pub fn green_on_idempotents(&self, e: &Element, f: &Element) -> Result<GreenRelations> {
        self.require_idempotent(e)?;
        self.require_idempotent(f)?;
        let preceq = self.pencil(e, f);
        let equiv = preceq.is_some() && self.pencil(f, e).is_some();
        Ok(GreenRelations {
            d: self.d_related(e, f),
            j: self.principal_ideal(e) == self.principal_ideal(f),
            preceq,
            equiv,
        })
    }

    /// The local monoid `eSe`, realised on the full subgroupoid spanned by `e`.
    pub fn local_monoid(&self, e: &Element) -> Result<FinBim> {
        self.require_idempotent(e)?;
        let objects: Vec<ObjectId> = e.arrows().iter().map(|&a| self.groupoid.arrow(a).dom).collect();
        let (sub, kept) = self.groupoid.restrict(&objects)?;
        let back: HashMap<ArrowId, ArrowId> = kept.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let carrier = self
            .elements
            .iter()
            .filter(|s| self.mul(&self.mul(e, s), e) == **s)
            .map(|s| {
                LocalBisection::from_sorted_unchecked({
                    let mut v: Vec<ArrowId> = s.arrows().iter().map(|a| back[a]).collect();
                    v.sort_unstable();
                    v
                })
            })
            .collect();
        FinBim::with_carrier(sub, carrier)
    }

    /// Brute-force oracle for φ: the largest idempotent of the carrier below `s`.
    pub fn largest_idempotent_below(&self, s: &Element) -> Element {
        self.idempotents
            .iter()
            .filter(|e| e.is_subset(s))
            .max_by_key(|e| e.len())
            .cloned()
            .unwrap_or_default()
    }
}

impl BooleanInverseMonoid for FinBim {
    type Element = Element;

    fn zero(&self) -> Element {
        LocalBisection::empty()
    }

    fn one(&self) -> Element {
        self.one.clone()
    }

    fn multiply(&self, a: &Element, b: &Element) -> Result<Element> {
        Ok(self.mul(a, b))
    }

    fn inverse(&self, a: &Element) -> Element {
        self.inv(a)
    }

    fn is_idempotent(&self, a: &Element) -> bool {
        a.is_subset(&self.one)
    }

    fn phi(&self, a: &Element) -> Element {
        a.intersection(&self.one)
    }

    fn complement(&self, e: &Element) -> Result<Element> {
        if !e.is_subset(&self.one) {
            return Err(Error::Precondition(format!(
                "{} is not idempotent",
                self.groupoid.format_element(e)
            )));
        }
        Ok(self.one.difference(e))
    }

    fn join_compatible(&self, a: &Element, b: &Element) -> Result<Element> {
        Ok(a.union_unchecked(b))
    }

    fn is_atom(&self, a: &Element) -> bool {
        self.atoms.binary_search(a).is_ok()
    }

    fn mu_related(&self, a: &Element, b: &Element) -> Result<bool> {
        Ok(self
            .idempotents
            .iter()
            .all(|e| self.mul(&self.mul(a, e), &self.inv(a)) == self.mul(&self.mul(b, e), &self.inv(b))))
    }

    fn render(&self, a: &Element) -> String {
        self.groupoid.format_element(a)
    }
}

/// `KB(pair:n)`, the symmetric inverse monoid on `n` points.
pub fn symmetric_inverse_monoid(n: usize) -> Result<FinBim> {
    Ok(FinBim::kb(FiniteGroupoid::pair(n)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kb(spec: &str) -> FinBim {
        FinBim::kb(FiniteGroupoid::from_spec(spec).unwrap())
    }

    #[test]
    fn sizes() {
        assert_eq!(kb("pair:2").len(), 7);
        let i3 = kb("pair:3");
        assert_eq!(i3.len(), 34);
        assert_eq!(i3.units().len(), 6);
        let z2 = kb("group:Z2");
        assert_eq!(z2.len(), 3);
        assert_eq!(z2.units().len(), 2);
    }

    #[test]
    fn inverse_and_domains() {
        let i3 = kb("pair:3");
        let s = i3.parse("{1->2, 3->3}").unwrap();
        assert_eq!(i3.inv(&i3.parse("{1->2}").unwrap()), i3.parse("{2->1}").unwrap());
        assert_eq!(i3.d(&s), i3.parse("{1->1, 3->3}").unwrap());
        assert_eq!(i3.r(&s), i3.parse("{2->2, 3->3}").unwrap());
        for a in i3.elements() {
            assert_eq!(i3.mul(&i3.mul(a, &i3.inv(a)), a), *a);
        }
    }

    #[test]
    fn relation_examples() {
        let i3 = kb("pair:3");
        let p = |s: &str| i3.parse(s).unwrap();
        assert!(i3.relations(&p("{1->2}"), &p("{1->2, 3->3}")).unwrap().leq);
        assert!(i3.relations(&p("{1->2}"), &p("{2->1}")).unwrap().orthogonal);
        let z2 = kb("group:Z2");
        let r = z2
            .relations(&z2.parse("{1}").unwrap(), &z2.parse("{g}").unwrap())
            .unwrap();
        assert!(r.mu_related);
    }

    #[test]
    fn meet_and_join_examples() {
        let i3 = kb("pair:3");
        let p = |s: &str| i3.parse(s).unwrap();
        assert_eq!(i3.meet(&p("{1->2, 3->3}"), &p("{1->2, 3->1}")).unwrap(), p("{1->2}"));
        assert_eq!(i3.join(&p("{1->1}"), &p("{2->2}")).unwrap(), p("{1->1, 2->2}"));
        assert!(matches!(
            i3.join(&p("{1->2}"), &p("{1->3}")),
            Err(Error::Incompatible(_))
        ));
    }

    #[test]
    fn fixpoint_support_examples() {
        let i3 = kb("pair:3");
        let p = |s: &str| i3.parse(s).unwrap();
        let fs = i3.fixpoint_and_support(&p("{1->1, 2->3}")).unwrap();
        assert_eq!(fs.phi, p("{1->1}"));
        assert_eq!(fs.sigma, p("{2->2}"));
        assert_eq!(fs.cooper, (p("{1->1}"), p("{2->3}")));
        let fs = i3.fixpoint_and_support(&p("{1->2, 2->1, 3->3}")).unwrap();
        assert_eq!(fs.phi, p("{3->3}"));
        assert_eq!(fs.sigma, p("{1->1, 2->2}"));
        let e = p("{1->1, 3->3}");
        let fs = i3.fixpoint_and_support(&e).unwrap();
        assert_eq!(fs.phi, e);
        assert!(fs.sigma.is_empty());
        for s in i3.elements() {
            assert_eq!(i3.phi(s), i3.largest_idempotent_below(s));
        }
    }

    #[test]
    fn classify_examples() {
        let i2 = kb("pair:2");
        let p = |s: &str| i2.parse(s).unwrap();
        let c = i2.classify(&p("{1->2}")).unwrap();
        assert!(c.is_infinitesimal && c.is_atom && !c.is_unit);
        let c = i2.classify(&p("{1->1, 2->2}")).unwrap();
        assert!(c.is_unit && c.is_idempotent);
        let c = i2.classify(&p("{1->2, 2->1}")).unwrap();
        assert!(c.is_unit && !c.is_infinitesimal);
    }

    #[test]
    fn unit_from_infinitesimal_examples() {
        let i2 = kb("pair:2");
        let u = i2.unit_from_infinitesimal(&i2.parse("{1->2}").unwrap()).unwrap();
        assert_eq!(u, i2.parse("{1->2, 2->1}").unwrap());
        let i3 = kb("pair:3");
        let u = i3.unit_from_infinitesimal(&i3.parse("{1->3}").unwrap()).unwrap();
        assert_eq!(u, i3.parse("{1->3, 3->1, 2->2}").unwrap());
        assert_eq!(i3.mul(&u, &u), i3.one());
        assert!(matches!(
            i3.unit_from_infinitesimal(&i3.zero()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn orthogonal_refinement_examples() {
        let i3 = kb("pair:3");
        let p = |s: &str| i3.parse(s).unwrap();
        let out = i3
            .orthogonal_refinement(&[p("{1->1, 2->2}"), p("{2->2, 3->3}")])
            .unwrap();
        assert_eq!(out, vec![p("{1->1}"), p("{2->2}"), p("{3->3}")]);
        let a = p("{1->2, 3->3}");
        assert_eq!(i3.orthogonal_refinement(std::slice::from_ref(&a)).unwrap(), vec![a]);
        let e = p("{1->1}");
        assert_eq!(i3.orthogonal_refinement(&[e.clone(), e.clone()]).unwrap(), vec![e]);
        assert!(i3.orthogonal_refinement(&[p("{1->2}"), p("{1->3}")]).is_err());
    }

    #[test]
    fn basic_decompose_examples() {
        let i3 = kb("pair:3");
        let p = |s: &str| i3.parse(s).unwrap();
        let s = p("{1->2, 2->1, 3->3}");
        let dec = i3.basic_decompose(&s);
        let d = dec.decomposition().unwrap();
        assert_eq!(d.idempotent, p("{3->3}"));
        assert_eq!(d.infinitesimals.len(), 2);
        assert!(d.infinitesimals.contains(&p("{1->2}")));
        assert!(d.infinitesimals.contains(&p("{2->1}")));
        assert!(crate::algebra::verify_basic(&i3, &s, d).unwrap());

        let e = p("{1->1, 2->2}");
        let d = i3.basic_decompose(&e);
        assert_eq!(d.decomposition().unwrap().idempotent, e);
        assert!(d.decomposition().unwrap().infinitesimals.is_empty());

        let z2 = kb("group:Z2");
        let g = z2.parse("{g}").unwrap();
        match z2.basic_decompose(&g) {
            Basic::Obstructed(BasicObstruction::IsotropyArrow { name, .. }) => assert_eq!(name, "g"),
            other => panic!("expected an isotropy witness, got {other:?}"),
        }
    }

    #[test]
    fn green_examples() {
        let i3 = kb("pair:3");
        let p = |s: &str| i3.parse(s).unwrap();
        let (e, f) = (p("{1->1, 2->2}"), p("{3->3}"));
        let g = i3.green_on_idempotents(&e, &f).unwrap();
        assert!(!g.d);
        let pencil = g.preceq.unwrap();
        assert_eq!(pencil.elements, vec![p("{1->3}"), p("{2->3}")]);
        assert!(pencil.verify(&i3).unwrap());

        let g = i3.green_on_idempotents(&e, &e).unwrap();
        assert!(g.d && g.j && g.equiv);

        let u = kb("disjoint_union(pair:2,pair:2)");
        let g = u
            .green_on_idempotents(&u.parse("{1->1}").unwrap(), &u.parse("{3->3}").unwrap())
            .unwrap();
        assert!(g.preceq.is_none());
        assert!(i3.green_on_idempotents(&p("{1->2}"), &f).is_err());
    }

    #[test]
    fn substructures() {
        let i3 = kb("pair:3");
        assert_eq!(i3.units().len(), 6);
        let local = i3.local_monoid(&i3.parse("{1->1, 2->2}").unwrap()).unwrap();
        assert_eq!(local.len(), 7);
        let z2 = kb("group:Z2");
        let units: Vec<String> = z2.units().iter().map(|u| z2.render(u)).collect();
        assert_eq!(units, vec!["{1}", "{g}"]);
    }

    #[test]
    fn carrier_validation_reports_witness() {
        let g = FiniteGroupoid::pair(2).unwrap();
        let p = |s: &str| g.parse_element(s).unwrap();
        let carrier = vec![LocalBisection::empty(), p("{1->1, 2->2}"), p("{1->1}")];
        let err = FinBim::with_carrier(g.clone(), carrier).unwrap_err();
        assert!(
            matches!(
                err,
                Error::NotClosed {
                    operation: "complement",
                    ..
                }
            ),
            "{err}"
        );
        // {0, 1, swap} is closed: a non-fundamental copy of KB(group:Z2)
        let twisted = vec![LocalBisection::empty(), p("{1->1, 2->2}"), p("{1->2, 2->1}")];
        assert_eq!(FinBim::with_carrier(g.clone(), twisted).unwrap().len(), 3);
        let full = g.local_bisections();
        assert_eq!(FinBim::with_carrier(g, full).unwrap().len(), 7);
    }
}
