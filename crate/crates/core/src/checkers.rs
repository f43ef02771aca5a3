//! Decision procedures for monoid classes, armature axioms, and the
//! construction of a monoid from a permutation group.

use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use crate::algebra::BooleanInverseMonoid;
use crate::error::{Error, Result};
use crate::finite::{Element, FinBim};
use crate::groupoid::{FiniteGroupoid, LocalBisection};
use crate::perm::Permutation;

const MAX_GROUP_DEGREE: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonoidProfile {
    pub size: usize,
    pub units: usize,
    pub idempotents: usize,
    pub fundamental: bool,
    pub factorizable: bool,
    pub piecewise_factorizable: bool,
    pub basic: bool,
    pub zero_simple: bool,
    pub zero_simplifying: bool,
    pub purely_infinite: bool,
    pub congruence_free: bool,
    /// Boolean algebras are always 0-disjunctive.
    pub zero_disjunctive: bool,
    /// Counterexamples keyed by the flag they refute.
    pub witnesses: BTreeMap<String, String>,
}

pub fn classify_monoid(s: &FinBim) -> MonoidProfile {
    let name = |x: &Element| s.render(x);
    let mut witnesses = BTreeMap::new();

    let fundamental = match centralizing_non_idempotent(s) {
        Some(x) => {
            witnesses.insert(
                "fundamental".into(),
                format!("{} commutes with every idempotent", name(&x)),
            );
            false
        }
        None => true,
    };

    let factorizable = match s.elements().iter().find(|x| !s.units().iter().any(|u| x.is_subset(u))) {
        Some(x) => {
            witnesses.insert("factorizable".into(), format!("{} lies below no unit", name(x)));
            false
        }
        None => true,
    };

    let piecewise_factorizable = match s.atoms().iter().find(|a| !s.units().iter().any(|u| a.is_subset(u))) {
        Some(a) => {
            witnesses.insert(
                "piecewise_factorizable".into(),
                format!("atom {} lies below no unit", name(a)),
            );
            false
        }
        None => true,
    };

    let basic = match s
        .elements()
        .iter()
        .find_map(|x| s.basic_decompose(x).obstruction().map(|w| (x.clone(), w.clone())))
    {
        Some((x, w)) => {
            witnesses.insert("basic".into(), format!("{}: {:?}", name(&x), w));
            false
        }
        None => true,
    };

    let zero_simple = match zero_simple_failure(s) {
        Some((e, f)) => {
            witnesses.insert(
                "zero_simple".into(),
                format!("no idempotent i ≤ {} with {} 𝒟 i", name(&f), name(&e)),
            );
            false
        }
        None => true,
    };

    let zero_simplifying = match zero_simplifying_failure(s) {
        Some((e, f)) => {
            witnesses.insert("zero_simplifying".into(), format!("{} ⋠ {}", name(&e), name(&f)));
            false
        }
        None => true,
    };

    let purely_infinite = match s
        .nonzero_idempotents()
        .find(|e| properly_infinite(s, e).ok().flatten().is_none())
    {
        Some(e) => {
            witnesses.insert(
                "purely_infinite".into(),
                format!("{} is not properly infinite", name(e)),
            );
            false
        }
        None => true,
    };

    MonoidProfile {
        size: s.len(),
        units: s.units().len(),
        idempotents: s.idempotents().len(),
        fundamental,
        factorizable,
        piecewise_factorizable,
        basic,
        zero_simple,
        zero_simplifying,
        purely_infinite,
        congruence_free: fundamental && zero_simple,
        zero_disjunctive: true,
        witnesses,
    }
}

/// A non-idempotent element commuting with every idempotent, if any.
pub fn centralizing_non_idempotent(s: &FinBim) -> Option<Element> {
    s.elements()
        .iter()
        .filter(|x| !s.is_idempotent(x))
        .find(|x| s.idempotents().iter().all(|e| s.mul(x, e) == s.mul(e, x)))
        .cloned()
}

/// First pair `(e, f)` of nonzero idempotents with no `i ≤ f` such that
/// `e 𝒟 i`. Larger `e` first, since `(1, atom)` is the usual culprit.
fn zero_simple_failure(s: &FinBim) -> Option<(Element, Element)> {
    let mut es: Vec<&Element> = s.nonzero_idempotents().collect();
    es.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
    let ends: Vec<(Element, Element)> = s.elements().iter().map(|x| (s.d(x), s.r(x))).collect();
    for e in &es {
        for f in &es {
            if !ends.iter().any(|(d, r)| d == *e && r.is_subset(f)) {
                return Some(((*e).clone(), (*f).clone()));
            }
        }
    }
    None
}

fn zero_simplifying_failure(s: &FinBim) -> Option<(Element, Element)> {
    let es: Vec<&Element> = s.nonzero_idempotents().collect();
    for e in &es {
        for f in &es {
            if s.pencil(e, f).is_none() {
                return Some(((*e).clone(), (*f).clone()));
            }
        }
    }
    None
}

/// Exhaustive search for `x, y` with `d(x) = d(y) = e`, `r(x) ⊥ r(y)` and
/// `r(x) ∨ r(y) ≤ e`.
pub fn properly_infinite(s: &FinBim, e: &Element) -> Result<Option<(Element, Element)>> {
    if e.is_empty() {
        return Err(Error::Precondition(
            "the zero idempotent is never properly infinite".into(),
        ));
    }
    if !s.contains(e) || !s.is_idempotent(e) {
        return Err(Error::Precondition(format!("{} is not an idempotent", s.render(e))));
    }
    let from_e: Vec<(&Element, Element)> = s
        .elements()
        .iter()
        .filter(|x| s.d(x) == *e)
        .map(|x| (x, s.r(x)))
        .filter(|(_, r)| r.is_subset(e))
        .collect();
    for (x, rx) in &from_e {
        for (y, ry) in &from_e {
            if rx.intersection(ry).is_empty() {
                return Ok(Some(((*x).clone(), (*y).clone())));
            }
        }
    }
    Ok(None)
}

/// Definitional piecewise factorizability: the compatible-join closure of
/// everything below a unit is the whole carrier.
pub fn piecewise_closure_check(s: &FinBim) -> bool {
    let mut closure: HashSet<Element> = s
        .elements()
        .iter()
        .filter(|x| s.units().iter().any(|u| x.is_subset(u)))
        .cloned()
        .collect();
    loop {
        let current: Vec<Element> = closure.iter().cloned().collect();
        let mut grew = false;
        for (i, a) in current.iter().enumerate() {
            for b in &current[i + 1..] {
                if let Some(j) = s.try_join(a, b) {
                    grew |= closure.insert(j);
                }
            }
        }
        if !grew {
            break;
        }
    }
    closure.len() == s.len()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomResult {
    pub axiom: &'static str,
    pub passed: bool,
    pub checked: usize,
    pub counterexample: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ArmatureReport {
    pub units: usize,
    pub idempotents: usize,
    pub axioms: Vec<AxiomResult>,
}

impl ArmatureReport {
    pub fn passes(&self) -> bool {
        self.axioms.iter().all(|a| a.passed)
    }
}

/// The data an armature check runs over: a set of units, a set of
/// idempotents, the unit pairs used for the subadditivity axiom, and a
/// predicate deciding whether a unit fixes an idempotent's down-set pointwise.
pub struct ArmatureInput<'a, E> {
    pub units: &'a [E],
    pub idempotents: &'a [E],
    pub unit_pairs: &'a [(usize, usize)],
}

/// Checks the five operator axioms for `(units, idempotents, φ)` where the
/// group acts by conjugation.
pub fn armature_axioms<M, F>(m: &M, input: ArmatureInput<'_, M::Element>, fixes_pointwise: F) -> Result<ArmatureReport>
where
    M: BooleanInverseMonoid,
    F: Fn(&M::Element, &M::Element) -> Result<bool>,
{
    let mut axioms = Vec::new();
    let r = |x: &M::Element| m.render(x);

    let one = m.one();
    axioms.push(AxiomResult {
        axiom: "O1",
        passed: m.phi(&one) == one,
        checked: 1,
        counterexample: (m.phi(&one) != one).then(|| format!("φ(1) = {}", r(&m.phi(&one)))),
    });

    let mut o2 = None;
    for g in input.units {
        if m.phi(&m.inverse(g)) != m.phi(g) {
            o2 = Some(format!("φ({}⁻¹) ≠ φ({})", r(g), r(g)));
            break;
        }
    }
    axioms.push(AxiomResult {
        axiom: "O2",
        passed: o2.is_none(),
        checked: input.units.len(),
        counterexample: o2,
    });

    let mut o3 = None;
    for &(i, j) in input.unit_pairs {
        let (g, h) = (&input.units[i], &input.units[j]);
        let lhs = m.multiply(&m.phi(g), &m.phi(h))?;
        let rhs = m.phi(&m.multiply(g, h)?);
        if !m.leq(&lhs, &rhs)? {
            o3 = Some(format!("φ({})φ({}) ≰ φ({}·{})", r(g), r(h), r(g), r(h)));
            break;
        }
    }
    axioms.push(AxiomResult {
        axiom: "O3",
        passed: o3.is_none(),
        checked: input.unit_pairs.len(),
        counterexample: o3,
    });

    let mut o4 = None;
    let mut o5 = None;
    for g in input.units {
        let fixed = m.phi(g);
        for e in input.idempotents {
            if o4.is_none() {
                let lhs = m.multiply(&fixed, e)?;
                if !m.leq(&lhs, &m.conjugate(g, e)?)? {
                    o4 = Some(format!("φ({})·{} ≰ {}·{}·{}⁻¹", r(g), r(e), r(g), r(e), r(g)));
                }
            }
            if o5.is_none() && fixes_pointwise(g, e)? != m.leq(e, &fixed)? {
                o5 = Some(format!("{} fixes {}↓ pointwise ⇎ {} ≤ φ({})", r(g), r(e), r(e), r(g)));
            }
        }
    }
    let pairs = input.units.len() * input.idempotents.len();
    axioms.push(AxiomResult {
        axiom: "O4",
        passed: o4.is_none(),
        checked: pairs,
        counterexample: o4,
    });
    axioms.push(AxiomResult {
        axiom: "O5",
        passed: o5.is_none(),
        checked: pairs,
        counterexample: o5,
    });

    Ok(ArmatureReport {
        units: input.units.len(),
        idempotents: input.idempotents.len(),
        axioms,
    })
}

/// Exhaustive armature check of `(U(S), E(S), φ)`; requires `S` fundamental.
pub fn armature_check(s: &FinBim) -> Result<ArmatureReport> {
    if let Some(w) = centralizing_non_idempotent(s) {
        return Err(Error::Precondition(format!(
            "monoid is not fundamental: {} centralizes the idempotents",
            s.render(&w)
        )));
    }
    let units = s.units();
    let pairs: Vec<(usize, usize)> = (0..units.len())
        .flat_map(|i| (0..units.len()).map(move |j| (i, j)))
        .collect();
    armature_axioms(
        s,
        ArmatureInput {
            units,
            idempotents: s.idempotents(),
            unit_pairs: &pairs,
        },
        |g, e| {
            Ok(s.idempotents()
                .iter()
                .filter(|f| f.is_subset(e))
                .all(|f| s.mul(&s.mul(g, f), &s.inv(g)) == *f))
        },
    )
}

/// `(G↓)∨` for a permutation group `G ≤ S_n`: partial bijections agreeing
/// pointwise with some group element, inside `KB(pair:n)`.
pub fn monoid_from_group(n: usize, generators: &[Permutation]) -> Result<FinBim> {
    if n == 0 || n > MAX_GROUP_DEGREE {
        return Err(Error::SizeBound(format!(
            "degree must be in 1..={MAX_GROUP_DEGREE}, got {n}"
        )));
    }
    if let Some(g) = generators.iter().find(|g| g.degree() != n) {
        return Err(Error::Precondition(format!("{g} is not a permutation of 1..={n}")));
    }
    let group = Permutation::generate(n, generators);
    let g = FiniteGroupoid::pair(n)?;
    let carrier: Vec<LocalBisection> = g
        .local_bisections()
        .into_iter()
        .filter(|s| {
            s.arrows().iter().all(|&a| {
                let arrow = g.arrow(a);
                group.iter().any(|p| p.apply(arrow.dom) == arrow.cod)
            })
        })
        .collect();
    FinBim::with_carrier(g, carrier)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kb(spec: &str) -> FinBim {
        FinBim::kb(FiniteGroupoid::from_spec(spec).unwrap())
    }

    #[test]
    fn symmetric_inverse_monoid_profiles() {
        for n in [2, 3] {
            let p = classify_monoid(&kb(&format!("pair:{n}")));
            assert!(p.fundamental && p.factorizable && p.piecewise_factorizable && p.basic);
            assert!(p.zero_simplifying && !p.zero_simple && !p.congruence_free);
            assert!(!p.purely_infinite);
        }
    }

    #[test]
    fn group_z2_is_not_fundamental() {
        let p = classify_monoid(&kb("group:Z2"));
        assert!(!p.fundamental);
        assert!(p.witnesses["fundamental"].contains("{g}"));
    }

    #[test]
    fn disjoint_union_is_not_zero_simplifying() {
        let p = classify_monoid(&kb("disjoint_union(pair:2,pair:3)"));
        assert!(p.fundamental && !p.zero_simplifying);
    }

    #[test]
    fn trivial_monoid_is_congruence_free() {
        let p = classify_monoid(&kb("pair:1"));
        assert!(p.zero_simple && p.congruence_free);
    }

    #[test]
    fn properly_infinite_never_in_finite_monoids() {
        let i3 = kb("pair:3");
        for e in i3.nonzero_idempotents() {
            assert_eq!(properly_infinite(&i3, e).unwrap(), None);
        }
        assert!(matches!(
            properly_infinite(&i3, &LocalBisection::empty()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn armature_examples() {
        let r2 = armature_check(&kb("pair:2")).unwrap();
        assert!(r2.passes());
        assert_eq!((r2.units, r2.idempotents), (2, 4));
        let r3 = armature_check(&kb("pair:3")).unwrap();
        assert!(r3.passes());
        assert_eq!((r3.units, r3.idempotents), (6, 8));
        assert!(matches!(armature_check(&kb("group:Z2")), Err(Error::Precondition(_))));
    }

    #[test]
    fn from_group_examples() {
        let t = Permutation::parse("(1 2)", 2).unwrap();
        assert_eq!(monoid_from_group(2, &[t]).unwrap().len(), 7);
        let trivial = monoid_from_group(2, &[]).unwrap();
        assert_eq!(trivial.len(), 4);
        assert!(trivial.elements().iter().all(|x| trivial.is_idempotent(x)));

        let c = Permutation::parse("(1 2 3)", 3).unwrap();
        assert!(classify_monoid(&monoid_from_group(3, &[c]).unwrap()).zero_simplifying);
        let t = Permutation::parse("(1 2)", 3).unwrap();
        assert!(!classify_monoid(&monoid_from_group(3, &[t]).unwrap()).zero_simplifying);
    }

    #[test]
    fn from_group_rejects_bad_input() {
        let p = Permutation::parse("(1 2)", 2).unwrap();
        assert!(monoid_from_group(3, &[p]).is_err());
        assert!(matches!(monoid_from_group(7, &[]), Err(Error::SizeBound(_))));
    }
}
