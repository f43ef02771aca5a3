//! Finite non-commutative Stone duality: the groupoid of ultrafilters of a
//! finite Boolean inverse monoid, the two round trips, and the dictionary
//! between ∨-ideals and invariant sets of objects.

use std::collections::{BTreeSet, HashMap, HashSet};

use serde::Serialize;

use crate::algebra::BooleanInverseMonoid;
use crate::checkers::classify_monoid;
use crate::error::{Error, Result};
use crate::finite::{Element, FinBim};
use crate::groupoid::{find_isomorphism, verify_isomorphism, ArrowId, FiniteGroupoid, GroupoidIso, LocalBisection};

/// The principal ultrafilter `a↑` of an atom `a`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UltraFilter {
    pub base: Element,
}

impl UltraFilter {
    pub fn new(s: &FinBim, base: Element) -> Result<Self> {
        if !s.is_atom(&base) {
            return Err(Error::Precondition(format!("{} is not an atom", s.render(&base))));
        }
        Ok(UltraFilter { base })
    }

    pub fn contains(&self, s: &Element) -> bool {
        self.base.is_subset(s)
    }

    pub fn d(&self, s: &FinBim) -> UltraFilter {
        UltraFilter { base: s.d(&self.base) }
    }

    pub fn r(&self, s: &FinBim) -> UltraFilter {
        UltraFilter { base: s.r(&self.base) }
    }

    /// `(AB)↑`, defined when `d(A) = r(B)`.
    pub fn product(&self, other: &UltraFilter, s: &FinBim) -> Option<UltraFilter> {
        (s.d(&self.base) == s.r(&other.base)).then(|| UltraFilter {
            base: s.mul(&self.base, &other.base),
        })
    }
}

/// `a↑` is a prime filter: whenever it contains a compatible join it
/// contains one of the two parts.
pub fn is_prime_filter(s: &FinBim, base: &Element) -> bool {
    if base.is_empty() {
        return false;
    }
    let elements = s.elements();
    for (i, x) in elements.iter().enumerate() {
        for y in &elements[i..] {
            if let Some(j) = s.try_join(x, y) {
                if base.is_subset(&j) && !base.is_subset(x) && !base.is_subset(y) {
                    return false;
                }
            }
        }
    }
    true
}

/// `a↑` is a maximal proper filter: nothing nonzero lies strictly below `a`.
pub fn is_ultrafilter(s: &FinBim, base: &Element) -> bool {
    !base.is_empty()
        && !s
            .elements()
            .iter()
            .any(|x| !x.is_empty() && x != base && x.is_subset(base))
}

/// `G(S)` with the atoms behind its objects and arrows.
#[derive(Debug, Clone)]
pub struct AtomGroupoid {
    pub groupoid: FiniteGroupoid,
    /// `objects[x]` is the idempotent atom behind object `x`.
    pub objects: Vec<Element>,
    /// `arrows[a]` is the atom behind arrow `a`.
    pub arrows: Vec<Element>,
}

impl AtomGroupoid {
    /// `V_s`: the arrows whose atoms lie below `s`.
    pub fn atoms_below(&self, s: &Element) -> Vec<ArrowId> {
        (0..self.arrows.len())
            .filter(|&a| self.arrows[a].is_subset(s))
            .collect()
    }
}

pub fn groupoid_of(s: &FinBim) -> Result<AtomGroupoid> {
    let objects: Vec<Element> = s.e_atoms().to_vec();
    let arrows: Vec<Element> = s.atoms().to_vec();
    let object_index: HashMap<&Element, usize> = objects.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let arrow_index: HashMap<&Element, usize> = arrows.iter().enumerate().map(|(i, a)| (a, i)).collect();
    let object_of = |e: &Element| {
        object_index
            .get(e)
            .copied()
            .ok_or_else(|| Error::Inconsistent(format!("{} is not an idempotent atom", s.render(e))))
    };
    let mut labelled = Vec::with_capacity(arrows.len());
    for a in &arrows {
        labelled.push((s.render(a), object_of(&s.d(a))?, object_of(&s.r(a))?));
    }
    let mut compose = Vec::new();
    for (i, a) in arrows.iter().enumerate() {
        for (j, b) in arrows.iter().enumerate() {
            if labelled[i].1 == labelled[j].2 {
                let ab = s.mul(a, b);
                let k = arrow_index.get(&ab).copied().ok_or_else(|| {
                    Error::Inconsistent(format!(
                        "{}·{} = {} is not an atom",
                        s.render(a),
                        s.render(b),
                        s.render(&ab)
                    ))
                })?;
                compose.push((i, j, k));
            }
        }
    }
    let inverse = arrows
        .iter()
        .enumerate()
        .map(|(i, a)| {
            arrow_index
                .get(&s.inv(a))
                .map(|&j| (i, j))
                .ok_or_else(|| Error::Inconsistent(format!("inverse of atom {} is not an atom", s.render(a))))
        })
        .collect::<Result<Vec<_>>>()?;
    let labels = objects.iter().map(|e| s.render(e)).collect();
    let groupoid = FiniteGroupoid::new(labels, labelled, &compose, &inverse)?;
    Ok(AtomGroupoid {
        groupoid,
        objects,
        arrows,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RoundTripReport {
    pub elements: usize,
    pub image: usize,
    /// First law that failed, if any.
    pub failure: Option<String>,
}

impl RoundTripReport {
    pub fn passes(&self) -> bool {
        self.failure.is_none()
    }
}

/// `S → KB(G(S))`, `s ↦ V_s`, checked to be a bijection preserving
/// products, inverses, meets, compatible joins, 0 and 1.
pub fn roundtrip(s: &FinBim) -> Result<RoundTripReport> {
    let g = groupoid_of(s)?;
    let kb = FinBim::kb(g.groupoid.clone());
    let image: Vec<LocalBisection> = s
        .elements()
        .iter()
        .map(|x| g.groupoid.bisection(g.atoms_below(x)))
        .collect::<Result<Vec<_>>>()?;
    let psi = |i: usize| &image[i];
    let at = |x: &Element| s.index_of(x).expect("carrier is closed");
    let mut report = RoundTripReport {
        elements: s.len(),
        image: image.iter().collect::<HashSet<_>>().len(),
        failure: None,
    };
    let fail = |law: String| Some(law);

    if report.image != s.len() {
        report.failure = fail("s ↦ V_s is not injective".into());
    } else if kb.len() != s.len() || image.iter().any(|v| !kb.contains(v)) {
        report.failure = fail(format!(
            "image has {} elements, KB(G(S)) has {}",
            report.image,
            kb.len()
        ));
    } else if *psi(at(&s.zero())) != kb.zero() || *psi(at(&s.one())) != kb.one() {
        report.failure = fail("0 or 1 not preserved".into());
    }
    if report.failure.is_some() {
        return Ok(report);
    }
    for (i, a) in s.elements().iter().enumerate() {
        if *psi(at(&s.inv(a))) != kb.inv(psi(i)) {
            report.failure = fail(format!("inverse of {}", s.render(a)));
            return Ok(report);
        }
        for (j, b) in s.elements().iter().enumerate() {
            let law = if *psi(at(&s.mul(a, b))) != kb.mul(psi(i), psi(j)) {
                Some("product")
            } else if *psi(at(&s.meet(a, b)?)) != psi(i).intersection(psi(j)) {
                Some("meet")
            } else if let Some(ab) = s.try_join(a, b) {
                (*psi(at(&ab)) != kb.join(psi(i), psi(j))?).then_some("join")
            } else {
                None
            };
            if let Some(law) = law {
                report.failure = fail(format!("{law} of {} and {}", s.render(a), s.render(b)));
                return Ok(report);
            }
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupoidRoundTrip {
    pub objects: usize,
    pub arrows: usize,
    /// `a ↦ {a}` is an isomorphism `G → G(KB(G))`.
    pub canonical_iso: bool,
    /// An isomorphism was also found by search.
    pub search_iso: bool,
}

impl GroupoidRoundTrip {
    pub fn passes(&self) -> bool {
        self.canonical_iso && self.search_iso
    }
}

pub fn roundtrip_g(g: &FiniteGroupoid) -> Result<GroupoidRoundTrip> {
    let kb = FinBim::kb(g.clone());
    let h = groupoid_of(&kb)?;
    let arrow_of: HashMap<&Element, usize> = h.arrows.iter().enumerate().map(|(i, a)| (a, i)).collect();
    let object_of: HashMap<&Element, usize> = h.objects.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let singleton = |a: ArrowId| LocalBisection::from_sorted_unchecked(vec![a]);
    let canonical = (|| {
        let objects = (0..g.object_count())
            .map(|x| object_of.get(&singleton(g.identity(x))).copied())
            .collect::<Option<Vec<_>>>()?;
        let arrows = (0..g.arrow_count())
            .map(|a| arrow_of.get(&singleton(a)).copied())
            .collect::<Option<Vec<_>>>()?;
        Some(GroupoidIso { objects, arrows })
    })();
    let canonical_iso = canonical.is_some_and(|iso| verify_isomorphism(g, &h.groupoid, &iso));
    let search_iso = find_isomorphism(g, &h.groupoid).is_some_and(|iso| verify_isomorphism(g, &h.groupoid, &iso));
    Ok(GroupoidRoundTrip {
        objects: g.object_count(),
        arrows: g.arrow_count(),
        canonical_iso,
        search_iso,
    })
}

/// A ∨-ideal, recorded by the objects of `G(S)` its idempotents cover and
/// by its elements (carrier indices).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VeeIdeal {
    pub objects: Vec<usize>,
    pub elements: BTreeSet<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdealCorrespondence {
    pub orbits: Vec<Vec<usize>>,
    pub vee_ideals: Vec<VeeIdeal>,
    pub invariant_sets: usize,
    pub brute_force_ideals: usize,
    pub ideals_are_closed: bool,
    pub matches_brute_force: bool,
    pub order_isomorphism: bool,
}

impl IdealCorrespondence {
    pub fn passes(&self) -> bool {
        self.ideals_are_closed
            && self.matches_brute_force
            && self.order_isomorphism
            && self.vee_ideals.len() == self.invariant_sets
            && self.invariant_sets == 1 << self.orbits.len()
    }
}

fn is_vee_ideal(s: &FinBim, ideal: &BTreeSet<usize>) -> bool {
    let members: Vec<&Element> = ideal.iter().map(|&i| &s.elements()[i]).collect();
    let inside = |x: &Element| s.index_of(x).is_some_and(|i| ideal.contains(&i));
    members.iter().all(|x| {
        s.elements().iter().all(|t| !t.is_subset(x) || inside(t))
            && s.elements()
                .iter()
                .all(|t| inside(&s.mul(t, x)) && inside(&s.mul(x, t)))
            && members.iter().all(|y| s.try_join(x, y).is_none_or(|j| inside(&j)))
    })
}

/// The ∨-ideal generated by one element, by saturation.
pub fn generated_vee_ideal(s: &FinBim, x: &Element) -> BTreeSet<usize> {
    let start = s.index_of(x).expect("x is in the carrier");
    let mut ideal: BTreeSet<usize> = BTreeSet::from([start]);
    let mut queue = vec![start];
    while let Some(i) = queue.pop() {
        let m = s.elements()[i].clone();
        let mut found: Vec<Element> = Vec::new();
        for t in s.elements() {
            found.push(s.mul(t, &m));
            found.push(s.mul(&m, t));
            if t.is_subset(&m) {
                found.push(t.clone());
            }
        }
        for &j in &ideal {
            if let Some(joined) = s.try_join(&m, &s.elements()[j]) {
                found.push(joined);
            }
        }
        for f in found {
            let k = s.index_of(&f).expect("closed carrier");
            if ideal.insert(k) {
                queue.push(k);
            }
        }
    }
    ideal
}

pub fn ideal_correspondence(s: &FinBim) -> Result<IdealCorrespondence> {
    let g = groupoid_of(s)?;
    let orbits = g.groupoid.orbits();
    let k = orbits.len();
    let mut vee_ideals = Vec::with_capacity(1 << k);
    let mut unions: Vec<BTreeSet<usize>> = Vec::with_capacity(1 << k);
    for mask in 0u32..(1 << k) {
        let objects: BTreeSet<usize> = (0..k)
            .filter(|i| mask & (1 << i) != 0)
            .flat_map(|i| orbits[i].iter().copied())
            .collect();
        let elements: BTreeSet<usize> = (0..s.len())
            .filter(|&i| {
                let d = s.d(&s.elements()[i]);
                g.objects
                    .iter()
                    .enumerate()
                    .all(|(x, atom)| !atom.is_subset(&d) || objects.contains(&x))
            })
            .collect();
        vee_ideals.push(VeeIdeal {
            objects: objects.iter().copied().collect(),
            elements,
        });
        unions.push(objects);
    }
    let ideals_are_closed = vee_ideals.iter().all(|v| is_vee_ideal(s, &v.elements));

    let brute: BTreeSet<BTreeSet<usize>> = s.idempotents().iter().map(|e| generated_vee_ideal(s, e)).collect();
    let ours: BTreeSet<BTreeSet<usize>> = vee_ideals.iter().map(|v| v.elements.clone()).collect();
    let matches_brute_force = brute == ours && ours.len() == vee_ideals.len();

    let order_isomorphism = (0..vee_ideals.len()).all(|i| {
        (0..vee_ideals.len())
            .all(|j| unions[i].is_subset(&unions[j]) == vee_ideals[i].elements.is_subset(&vee_ideals[j].elements))
    });

    Ok(IdealCorrespondence {
        orbits,
        invariant_sets: unions.len(),
        brute_force_ideals: brute.len(),
        vee_ideals,
        ideals_are_closed,
        matches_brute_force,
        order_isomorphism,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TheoremOneReport {
    pub fundamental: bool,
    pub effective: bool,
    pub zero_simplifying: bool,
    pub minimal: bool,
    pub fundamental_iff_effective: bool,
    pub zero_simplifying_iff_minimal: bool,
}

pub fn theorem_one_check(s: &FinBim) -> Result<TheoremOneReport> {
    let profile = classify_monoid(s);
    let props = groupoid_of(s)?.groupoid.properties();
    Ok(TheoremOneReport {
        fundamental: profile.fundamental,
        effective: props.effective,
        zero_simplifying: profile.zero_simplifying,
        minimal: props.minimal,
        fundamental_iff_effective: profile.fundamental == props.effective,
        zero_simplifying_iff_minimal: profile.zero_simplifying == props.minimal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kb(spec: &str) -> FinBim {
        FinBim::kb(FiniteGroupoid::from_spec(spec).unwrap())
    }

    #[test]
    fn groupoid_of_examples() {
        for (monoid, expected) in [("pair:2", "pair:2"), ("group:Z2", "group:Z2"), ("pair:1", "pair:1")] {
            let g = groupoid_of(&kb(monoid)).unwrap();
            let h = FiniteGroupoid::from_spec(expected).unwrap();
            assert!(find_isomorphism(&g.groupoid, &h).is_some(), "{monoid}");
        }
        assert_eq!(groupoid_of(&kb("pair:2")).unwrap().arrows.len(), 4);
    }

    #[test]
    fn round_trips() {
        let r = roundtrip(&kb("pair:3")).unwrap();
        assert!(r.passes(), "{:?}", r.failure);
        assert_eq!(r.elements, 34);
        assert!(roundtrip_g(&FiniteGroupoid::pair(4).unwrap()).unwrap().passes());
        assert!(roundtrip_g(&FiniteGroupoid::named_group("Z2").unwrap())
            .unwrap()
            .passes());
    }

    #[test]
    fn ideal_examples() {
        let c = ideal_correspondence(&kb("pair:2")).unwrap();
        assert!(c.passes());
        assert_eq!(c.vee_ideals.len(), 2);
        assert_eq!(c.vee_ideals[0].elements.len(), 1);
        assert_eq!(c.vee_ideals[1].elements.len(), 7);
        let c = ideal_correspondence(&kb("disjoint_union(pair:2,pair:2)")).unwrap();
        assert!(c.passes());
        assert_eq!(c.vee_ideals.len(), 4);
        assert_eq!(ideal_correspondence(&kb("pair:1")).unwrap().vee_ideals.len(), 2);
    }

    #[test]
    fn rank_one_ideal_is_not_join_closed() {
        let s = kb("pair:2");
        let rank_le_one: BTreeSet<usize> = (0..s.len()).filter(|&i| s.elements()[i].len() <= 1).collect();
        assert!(!is_vee_ideal(&s, &rank_le_one));
    }

    #[test]
    fn theorem_one_examples() {
        let r = theorem_one_check(&kb("pair:3")).unwrap();
        assert!(r.fundamental && r.effective && r.zero_simplifying && r.minimal);
        let r = theorem_one_check(&kb("group:Z2")).unwrap();
        assert!(!r.fundamental && !r.effective && r.fundamental_iff_effective);
        let r = theorem_one_check(&kb("disjoint_union(pair:2,pair:3)")).unwrap();
        assert!(!r.zero_simplifying && !r.minimal && r.zero_simplifying_iff_minimal);
    }

    #[test]
    fn prime_filters_are_ultrafilters() {
        for spec in ["pair:2", "group:Z2", "disjoint_union(pair:1,pair:2)"] {
            let s = kb(spec);
            for x in s.elements().iter().filter(|x| !x.is_empty()) {
                assert_eq!(is_prime_filter(&s, x), is_ultrafilter(&s, x), "{spec} {}", s.render(x));
                assert_eq!(is_ultrafilter(&s, x), s.is_atom(x));
            }
        }
    }

    #[test]
    fn ultrafilter_calculus() {
        let s = kb("pair:2");
        let a = UltraFilter::new(&s, s.parse("{1->2}").unwrap()).unwrap();
        let b = UltraFilter::new(&s, s.parse("{2->1}").unwrap()).unwrap();
        assert_eq!(a.product(&b, &s).unwrap().base, s.parse("{2->2}").unwrap());
        assert!(a.product(&a, &s).is_none());
        assert!(a.contains(&s.parse("{1->2, 2->1}").unwrap()));
        assert!(UltraFilter::new(&s, s.one()).is_err());
    }
}
