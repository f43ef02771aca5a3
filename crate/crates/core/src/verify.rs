//! Seeded invariant suites over both engines, producing per-property
//! checked/failed counts.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{verify_basic, BooleanInverseMonoid};
use crate::checkers::{
    armature_axioms, armature_check, classify_monoid, monoid_from_group, piecewise_closure_check, ArmatureInput,
};
use crate::corpus::{finite_monoids, mirror_groupoids, s3_subgroup_generators};
use crate::cuntz::{random, witness, ClopenSet, CuntzElement, CuntzMonoid, Evaluation};
use crate::duality::{groupoid_of, ideal_correspondence, roundtrip, roundtrip_g, theorem_one_check};
use crate::error::{Error, Result};
use crate::finite::{Element, FinBim};
use crate::groupoid::FiniteGroupoid;
use crate::munn::munn_monoid;
use crate::perm::Permutation;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    OrderCalculus,
    Duality,
    Classes,
    Armature,
    Cuntz,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 6] = ["order-calculus", "duality", "classes", "armature", "cuntz", "all"];
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "order-calculus" => Suite::OrderCalculus,
            "duality" => Suite::Duality,
            "classes" => Suite::Classes,
            "armature" => Suite::Armature,
            "cuntz" => Suite::Cuntz,
            "all" => Suite::All,
            _ => {
                return Err(Error::Parse(format!(
                    "unknown suite {s:?}; expected one of {}",
                    Suite::NAMES.join(", ")
                )))
            }
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = [
            Suite::OrderCalculus,
            Suite::Duality,
            Suite::Classes,
            Suite::Armature,
            Suite::Cuntz,
            Suite::All,
        ]
        .iter()
        .position(|s| s == self)
        .unwrap();
        f.write_str(Suite::NAMES[i])
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyResult {
    pub property: String,
    pub checked: usize,
    pub failed: usize,
    pub first_failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub passed: bool,
    pub properties: Vec<PropertyResult>,
}

#[derive(Default)]
struct Tally {
    results: Vec<PropertyResult>,
}

impl Tally {
    fn entry(&mut self, property: &str) -> &mut PropertyResult {
        if let Some(i) = self.results.iter().position(|r| r.property == property) {
            return &mut self.results[i];
        }
        self.results.push(PropertyResult {
            property: property.to_string(),
            checked: 0,
            failed: 0,
            first_failure: None,
        });
        self.results.last_mut().unwrap()
    }

    fn check(&mut self, property: &str, outcome: Result<bool>, context: impl FnOnce() -> String) {
        let entry = self.entry(property);
        entry.checked += 1;
        let failure = match outcome {
            Ok(true) => None,
            Ok(false) => Some(context()),
            Err(e) => Some(format!("{}: {e}", context())),
        };
        if let Some(f) = failure {
            entry.failed += 1;
            entry.first_failure.get_or_insert(f);
        }
    }
}

pub fn run(suite: Suite, seed: u64) -> Result<SuiteReport> {
    let mut tally = Tally::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let suites = match suite {
        Suite::All => vec![
            Suite::OrderCalculus,
            Suite::Duality,
            Suite::Classes,
            Suite::Armature,
            Suite::Cuntz,
        ],
        s => vec![s],
    };
    for s in suites {
        match s {
            Suite::OrderCalculus => order_calculus(&mut tally, &mut rng)?,
            Suite::Duality => duality(&mut tally)?,
            Suite::Classes => classes(&mut tally)?,
            Suite::Armature => armature(&mut tally, &mut rng)?,
            Suite::Cuntz => cuntz(&mut tally, &mut rng)?,
            Suite::All => unreachable!(),
        }
    }
    Ok(SuiteReport {
        suite: suite.to_string(),
        seed,
        passed: tally.results.iter().all(|r| r.failed == 0),
        properties: tally.results,
    })
}

fn kb(spec: &str) -> Result<FinBim> {
    Ok(FinBim::kb(FiniteGroupoid::from_spec(spec)?))
}

/// Laws shared by both engines, checked on one element pair.
fn pair_laws<M: BooleanInverseMonoid>(t: &mut Tally, m: &M, a: &M::Element, b: &M::Element, tag: &str) -> Result<()> {
    let ctx = || format!("{tag}: {}, {}", m.render(a), m.render(b));
    let meet = m.meet(a, b)?;
    t.check(
        &format!("{tag}: a∧b ≤ a, b"),
        Ok(m.leq(&meet, a)? && m.leq(&meet, b)?),
        ctx,
    );
    t.check(&format!("{tag}: a∧a = a"), Ok(m.meet(a, a)? == *a), ctx);
    let compatible = m.compatible(a, b)?;
    if compatible {
        let j = m.join(a, b)?;
        let dj = m.join(&m.dom(a)?, &m.dom(b)?)?;
        t.check(&format!("{tag}: d(a∨b) = d(a)∨d(b)"), Ok(m.dom(&j)? == dj), ctx);
        let djoin = m.join(&m.phi(a), &m.phi(b))?;
        t.check(&format!("{tag}: φ(a∨b) = φ(a)∨φ(b)"), Ok(m.phi(&j) == djoin), ctx);
        let orth_dom = m.is_zero(&m.multiply(&m.dom(a)?, &m.dom(b)?)?);
        if orth_dom {
            let orth_ran = m.is_zero(&m.multiply(&m.ran(a)?, &m.ran(b)?)?);
            t.check(
                &format!("{tag}: compatible with d(a)⊥d(b) ⇒ r(a)⊥r(b)"),
                Ok(orth_ran),
                ctx,
            );
        }
    }
    Ok(())
}

fn element_laws<M: BooleanInverseMonoid>(t: &mut Tally, m: &M, s: &M::Element, tag: &str) -> Result<()> {
    let ctx = || format!("{tag}: {}", m.render(s));
    let inv = m.inverse(s);
    t.check(
        &format!("{tag}: s s⁻¹ s = s"),
        Ok(m.product(&[s, &inv, s])? == *s && m.product(&[&inv, s, &inv])? == inv),
        ctx,
    );
    let phi = m.phi(s);
    t.check(&format!("{tag}: φ(s) = s ∧ 1"), Ok(phi == m.meet(s, &m.one())?), ctx);
    t.check(
        &format!("{tag}: φ(s) ≤ d(s), r(s)"),
        Ok(m.leq(&phi, &m.dom(s)?)? && m.leq(&phi, &m.ran(s)?)?),
        ctx,
    );
    let fs = m.fixpoint_and_support(s)?;
    let (e, moving) = &fs.cooper;
    t.check(
        &format!("{tag}: s = φ(s) ∨ sσ(s), orthogonal, φ(sσ(s)) = 0"),
        Ok(m.orthogonal(e, moving)? && m.join(e, moving)? == *s && m.is_zero(&m.phi(moving))),
        ctx,
    );
    let sq_zero = m.is_zero(&m.multiply(s, s)?);
    let ranges_disjoint = m.is_zero(&m.multiply(&m.dom(s)?, &m.ran(s)?)?);
    let nonzero = !m.is_zero(s);
    t.check(
        &format!("{tag}: infinitesimal ⇔ d∧r = 0 ⇔ s² = 0"),
        Ok(m.is_infinitesimal(s)? == (nonzero && ranges_disjoint)
            && (nonzero && sq_zero) == (nonzero && ranges_disjoint)),
        ctx,
    );
    if m.is_infinitesimal(s)? {
        let g = m.unit_from_infinitesimal(s)?;
        t.check(
            &format!("{tag}: unit_from_infinitesimal is an involution ≠ 1 above s"),
            Ok(m.is_unit(&g)? && m.multiply(&g, &g)? == m.one() && g != m.one() && m.leq(s, &g)?),
            ctx,
        );
    }
    Ok(())
}

fn refinement_law<M: BooleanInverseMonoid>(t: &mut Tally, m: &M, family: &[M::Element], tag: &str) -> Result<()> {
    let ctx = || {
        let parts: Vec<String> = family.iter().map(|x| m.render(x)).collect();
        format!("{tag}: [{}]", parts.join("; "))
    };
    let refined = m.orthogonal_refinement(family)?;
    let mut ok = m.join_all(&refined)? == m.join_all(family)?;
    for (i, a) in refined.iter().enumerate() {
        ok &= !m.is_zero(a);
        for b in &refined[i + 1..] {
            ok &= m.orthogonal(a, b)?;
        }
        let mut below = false;
        for p in family {
            below |= m.leq(a, p)?;
        }
        ok &= below;
    }
    t.check(&format!("{tag}: orthogonal refinement"), Ok(ok), ctx);
    Ok(())
}

fn unit_laws<M: BooleanInverseMonoid>(
    t: &mut Tally,
    m: &M,
    g: &M::Element,
    h: &M::Element,
    idem: &[M::Element],
    tag: &str,
) -> Result<()> {
    let ctx = || format!("{tag}: {}, {}", m.render(g), m.render(h));
    let ghg = m.conjugate(g, h)?;
    t.check(
        &format!("{tag}: σ(ghg⁻¹) = gσ(h)g⁻¹"),
        Ok(m.sigma(&ghg)? == m.conjugate(g, &m.sigma(h)?)?),
        ctx,
    );
    if m.is_zero(&m.multiply(&m.sigma(g)?, &m.sigma(h)?)?) {
        t.check(
            &format!("{tag}: σ(g)σ(h) = 0 ⇒ gh = hg"),
            Ok(m.multiply(g, h)? == m.multiply(h, g)?),
            ctx,
        );
    }
    let gh = m.multiply(g, h)?;
    t.check(
        &format!("{tag}: units closed under product and inverse"),
        Ok(m.is_unit(&gh)? && m.is_unit(&m.inverse(g))?),
        ctx,
    );
    for e in idem {
        let ge = m.multiply(g, e)?;
        t.check(
            &format!("{tag}: φ(ge) = φ(g)e"),
            Ok(m.phi(&ge) == m.multiply(&m.phi(g), e)?),
            || format!("{tag}: g = {}, e = {}", m.render(g), m.render(e)),
        );
    }
    Ok(())
}

fn random_kb_family<R: Rng>(rng: &mut R, s: &FinBim) -> Vec<Element> {
    let base = s.elements().choose(rng).unwrap().clone();
    (0..rng.gen_range(1..=4))
        .map(|_| {
            let arrows: Vec<usize> = base.arrows().iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
            s.groupoid()
                .bisection(arrows)
                .expect("subsets of a local bisection are local bisections")
        })
        .collect()
}

fn order_calculus<R: Rng>(t: &mut Tally, rng: &mut R) -> Result<()> {
    for spec in ["pair:2", "pair:3"] {
        let s = kb(spec)?;
        let tag = format!("kb({spec})");
        for a in s.elements() {
            element_laws(t, &s, a, &tag)?;
            t.check(
                &format!("{tag}: φ(s) = largest idempotent below s"),
                Ok(s.phi(a) == s.largest_idempotent_below(a)),
                || s.render(a),
            );
            for b in s.elements() {
                t.check(
                    &format!("{tag}: a∧b = a∩b = φ(ab⁻¹)b"),
                    Ok(s.meet(a, b)? == a.intersection(b)),
                    || format!("{}, {}", s.render(a), s.render(b)),
                );
                pair_laws(t, &s, a, b, &tag)?;
            }
        }
        for _ in 0..100 {
            let family = random_kb_family(rng, &s);
            refinement_law(t, &s, &family, &tag)?;
        }
    }

    let m = CuntzMonoid::new(2)?;
    let mut elements = Vec::with_capacity(200);
    for _ in 0..200 {
        elements.push(random::element(rng, &m, 6));
    }
    for (i, a) in elements.iter().enumerate() {
        element_laws(t, &m, a, "C_2")?;
        pair_laws(t, &m, a, &elements[(i + 1) % elements.len()], "C_2")?;
        let family = random::compatible_family(rng, &m, 5);
        refinement_law(t, &m, &family, "C_2")?;
    }
    for n in [2, 3] {
        let m = CuntzMonoid::new(n)?;
        for _ in 0..100 {
            let s = random::element(rng, &m, 5);
            let raw = random::split_rules(rng, &s, n, 6);
            let canon = m.canonicalize(raw.clone())?;
            let mut ok = canon == s;
            for _ in 0..20 {
                let len = rng.gen_range(0..=8);
                let probe: Vec<u8> = (0..len).map(|_| rng.gen_range(0..n as u8)).collect();
                let expected = evaluate_raw(&raw, &probe);
                // a merged rule may already decide a probe the raw list finds too short
                if expected != Evaluation::NeedsLongerInput {
                    ok &= canon.evaluate(&probe) == expected;
                }
            }
            t.check(&format!("C_{n}: canonical form preserves evaluation"), Ok(ok), || {
                format!("{raw:?}")
            });
        }
    }
    Ok(())
}

/// Direct evaluation of an unnormalized rule list.
pub fn evaluate_raw(rules: &[(Vec<u8>, Vec<u8>)], w: &[u8]) -> Evaluation {
    for (u, v) in rules {
        if w.starts_with(u) {
            let mut img = v.clone();
            img.extend_from_slice(&w[u.len()..]);
            return Evaluation::Mapped(img);
        }
    }
    if rules.iter().any(|(u, _)| u.starts_with(w)) {
        Evaluation::NeedsLongerInput
    } else {
        Evaluation::Undefined
    }
}

fn duality(t: &mut Tally) -> Result<()> {
    for spec in [
        "pair:1",
        "pair:2",
        "pair:3",
        "pair:4",
        "group:Z2",
        "group:Z3",
        "disjoint_union(pair:2,pair:2)",
    ] {
        let r = roundtrip(&kb(spec)?)?;
        t.check("S ≅ KB(G(S))", Ok(r.passes()), || {
            format!("kb({spec}): {:?}", r.failure)
        });
    }
    for (name, g) in mirror_groupoids()? {
        let r = roundtrip_g(&g)?;
        t.check("G ≅ G(KB(G))", Ok(r.passes()), || name.clone());
    }
    for named in finite_monoids()? {
        let s = &named.monoid;
        let c = ideal_correspondence(s)?;
        t.check("∨-ideals ↔ unions of orbits", Ok(c.passes()), || named.name.clone());
        let r = theorem_one_check(s)?;
        t.check("fundamental ⇔ effective", Ok(r.fundamental_iff_effective), || {
            named.name.clone()
        });
        t.check("0-simplifying ⇔ minimal", Ok(r.zero_simplifying_iff_minimal), || {
            named.name.clone()
        });
        let g = groupoid_of(s)?;
        let mut calculus = true;
        for a in s.elements() {
            let va = g.atoms_below(a);
            for b in s.elements() {
                let vb = g.atoms_below(b);
                let subset = va.iter().all(|x| vb.contains(x));
                calculus &= subset == a.is_subset(b);
                let vm = g.atoms_below(&s.meet(a, b)?);
                calculus &= vm == va.iter().copied().filter(|x| vb.contains(x)).collect::<Vec<_>>();
                if let Some(j) = s.try_join(a, b) {
                    let mut union = va.clone();
                    union.extend(&vb);
                    union.sort_unstable();
                    union.dedup();
                    calculus &= g.atoms_below(&j) == union;
                }
            }
        }
        t.check("V_a calculus", Ok(calculus), || named.name.clone());
    }
    Ok(())
}

fn classes(t: &mut Tally) -> Result<()> {
    let expect = |t: &mut Tally, spec: &str, check: &dyn Fn(&crate::checkers::MonoidProfile) -> bool| -> Result<()> {
        let p = classify_monoid(&kb(spec)?);
        t.check("class profiles match", Ok(check(&p)), || format!("kb({spec}): {p:?}"));
        Ok(())
    };
    for spec in ["pair:2", "pair:3"] {
        expect(t, spec, &|p| {
            p.fundamental && p.factorizable && p.basic && p.zero_simplifying && !p.zero_simple && !p.congruence_free
        })?;
    }
    expect(t, "group:Z2", &|p| !p.fundamental)?;
    expect(t, "disjoint_union(pair:2,pair:3)", &|p| {
        p.fundamental && !p.zero_simplifying
    })?;

    for named in finite_monoids()? {
        let s = &named.monoid;
        let p = classify_monoid(s);
        let ctx = || named.name.clone();
        t.check(
            "congruence-free ⇔ fundamental ∧ 0-simple; 0-simple ⇒ 0-simplifying",
            Ok(p.congruence_free == (p.fundamental && p.zero_simple) && (!p.zero_simple || p.zero_simplifying)),
            ctx,
        );
        t.check(
            "piecewise factorizable ⇔ (U↓)∨ = S",
            Ok(p.piecewise_factorizable == piecewise_closure_check(s)),
            ctx,
        );
        let g = groupoid_of(s)?;
        t.check(
            "basic ⇔ G(S) principal",
            Ok(p.basic == g.groupoid.properties().principal),
            ctx,
        );
        for x in s.elements() {
            if let Some(dec) = s.basic_decompose(x).decomposition() {
                t.check("basic decompositions verify", verify_basic(s, x, dec), || {
                    format!("{}: {}", named.name, s.render(x))
                });
            }
        }
        if p.zero_simplifying && !s.e_atoms().is_empty() {
            let atoms = s.e_atoms();
            let all_related = atoms.iter().all(|a| atoms.iter().all(|b| s.d_related(a, b)));
            let joined = s.join_all(atoms)? == s.one();
            t.check(
                "0-simplifying: E-atoms pairwise 𝒟-related and join to 1",
                Ok(all_related && joined),
                ctx,
            );
        }
        if p.fundamental {
            for g in s.units() {
                let fixed: Vec<&Element> = s
                    .e_atoms()
                    .iter()
                    .filter(|e| s.conjugate(g, e).ok().as_ref() == Some(*e))
                    .collect();
                let phi = s.phi(g);
                let below_phi: Vec<&Element> = s.e_atoms_below(&phi).collect();
                t.check(
                    "fixed E-atoms of a unit are the atoms of φ(g)",
                    Ok(fixed == below_phi),
                    || format!("{}: {}", named.name, s.render(g)),
                );
            }
            let mut mu_equal = true;
            for a in s.elements() {
                for b in s.elements() {
                    mu_equal &= s.mu_related(a, b)? == (a == b);
                }
            }
            t.check("μ is equality on fundamental monoids", Ok(mu_equal), ctx);
        }
        if p.fundamental && p.zero_simplifying {
            let n = s.e_atoms().len();
            let is_symmetric = s.len() == kb(&format!("pair:{n}"))?.len();
            t.check(
                "fundamental ∧ 0-simplifying ⇒ symmetric inverse monoid",
                Ok(is_symmetric),
                ctx,
            );
        }
    }
    for i in 0..6 {
        let gens = s3_subgroup_generators(i)?;
        let s = monoid_from_group(3, &gens)?;
        let group = Permutation::generate(3, &gens);
        let transitive = (0..3).all(|x| (0..3).all(|y| group.iter().any(|p| p.apply(x) == y)));
        let p = classify_monoid(&s);
        t.check(
            "from_group: fundamental, 0-simplifying ⇔ transitive",
            Ok(p.fundamental && p.zero_simplifying == transitive),
            || format!("subgroup {i}"),
        );
        let patched: Vec<Permutation> = Permutation::symmetric_group(3)
            .into_iter()
            .filter(|q| (0..3).all(|x| group.iter().any(|g| g.apply(x) == q.apply(x))))
            .collect();
        t.check(
            "from_group: units = patch closure of G",
            Ok(s.units().len() == patched.len()),
            || format!("subgroup {i}"),
        );
    }
    let i2 = monoid_from_group(2, &[Permutation::parse("(1 2)", 2)?])?;
    t.check("from_group(2, (1 2)) = I_2", Ok(i2.len() == 7), String::new);
    Ok(())
}

/// Cylinders of length at most `depth`, plus zero.
pub fn cylinder_idempotents(m: &CuntzMonoid, depth: usize) -> Vec<CuntzElement> {
    let mut out = vec![m.zero()];
    for len in 0..=depth {
        for w in crate::cuntz::words_of_length(m.n(), len) {
            out.push(CuntzElement::idempotent(&ClopenSet::cylinder(w)));
        }
    }
    out
}

/// Armature axioms for `count` random units of `C_n` against cylinder
/// idempotents of depth at most `depth`.
pub fn cuntz_armature<R: Rng>(
    rng: &mut R,
    m: &CuntzMonoid,
    count: usize,
    depth: usize,
) -> Result<crate::checkers::ArmatureReport> {
    let units: Vec<CuntzElement> = (0..count).map(|_| random::unit(rng, m, 4)).collect();
    let idempotents = cylinder_idempotents(m, depth);
    let pairs: Vec<(usize, usize)> = (0..count).flat_map(|i| [(i, i), (i, (i + 1) % count)]).collect();
    armature_axioms(
        m,
        ArmatureInput {
            units: &units,
            idempotents: &idempotents,
            unit_pairs: &pairs,
        },
        |g, e| m.fixes_pointwise(g, &m.d(e)),
    )
}

fn armature<R: Rng>(t: &mut Tally, rng: &mut R) -> Result<()> {
    for named in finite_monoids()? {
        if classify_monoid(&named.monoid).fundamental {
            let r = armature_check(&named.monoid)?;
            t.check("armature axioms (exhaustive)", Ok(r.passes()), || {
                format!("{}: {:?}", named.name, r.axioms)
            });
        }
    }
    let m = CuntzMonoid::new(2)?;
    let r = cuntz_armature(rng, &m, 100, 4)?;
    t.check("armature axioms (C_2, bounded)", Ok(r.passes()), || {
        format!("{:?}", r.axioms)
    });
    for n in 1..=3 {
        let r = munn_monoid(n);
        t.check("T_E ≅ I(n)", Ok(r.is_ok()), || format!("n = {n}: {r:?}"));
    }
    Ok(())
}

fn cuntz<R: Rng>(t: &mut Tally, rng: &mut R) -> Result<()> {
    let m = CuntzMonoid::new(2)?;
    let p = m.parse("e->0")?;
    let q = m.parse("e->1")?;
    let one = m.one();
    t.check(
        "p⁻¹p = q⁻¹q = 1",
        Ok(m.dom(&p)? == one && m.dom(&q)? == one),
        String::new,
    );
    t.check(
        "pp⁻¹qq⁻¹ = 0",
        Ok(m.multiply(&m.ran(&p)?, &m.ran(&q)?)?.is_empty()),
        String::new,
    );

    let idem = cylinder_idempotents(&m, 3);
    for _ in 0..100 {
        let g = random::unit(rng, &m, 4);
        let h = random::unit(rng, &m, 4);
        unit_laws(t, &m, &g, &h, &idem[..7], "C_2")?;
    }
    for _ in 0..50 {
        let e = random::nonzero_clopen(rng, 2, 4);
        if e.is_full() {
            continue;
        }
        let g = m.unit_from_infinitesimal(&witness::infinitesimal_in(&m, &e)?.value)?;
        let h = m.unit_from_infinitesimal(&witness::infinitesimal_in(&m, &e.complement(2))?.value)?;
        t.check(
            "C_2: disjoint supports commute",
            Ok(m.multiply(&g, &h)? == m.multiply(&h, &g)?),
            || format!("{g}, {h}"),
        );
    }
    for n in [3, 4] {
        let s = kb(&format!("pair:{n}"))?;
        let idem = s.idempotents().to_vec();
        for g in s.units() {
            for h in s.units() {
                unit_laws(t, &s, g, h, &idem, &format!("I_{n}"))?;
            }
        }
    }

    let certified = |t: &mut Tally, op: &str, c: Result<witness::Certificate>| {
        let ok = c.and_then(|c| Ok(c.holds() && c.reverify()?));
        t.check(&format!("C_2: {op} certificates re-verify"), ok, || op.to_string());
    };
    for _ in 0..100 {
        let e = random::nonzero_clopen(rng, 2, 5);
        let f = random::nonzero_clopen(rng, 2, 5);
        let s = random::nonzero_element(rng, &m, 5);
        certified(
            t,
            "transporter",
            witness::transporter(&m, &e, &f).map(|w| w.certificate),
        );
        certified(
            t,
            "orthogonal_pencil",
            witness::orthogonal_pencil(&m, &e, &f).map(|w| w.certificate),
        );
        certified(
            t,
            "properly_infinite_witness",
            witness::properly_infinite_witness(&m, &e).map(|w| w.certificate),
        );
        certified(
            t,
            "pencil_transport",
            witness::pencil_transport(&m, &e, &f).map(|w| w.certificate),
        );
        if !e.is_full() {
            certified(
                t,
                "conrade_unit",
                witness::conrade_unit(&m, &e, &f).map(|w| w.certificate),
            );
        }
        certified(
            t,
            "piecewise_unit_decomposition",
            witness::piecewise_unit_decomposition(&m, &s).map(|w| w.certificate),
        );
        if let Some(dec) = m.basic_decompose(&s).decomposition() {
            t.check("C_2: basic decompositions verify", verify_basic(&m, &s, dec), || {
                s.to_string()
            });
        }
    }
    for _ in 0..50 {
        let g = random::unit(rng, &m, 4);
        let r = witness::moved_point_check(&m, &g, 4)?;
        t.check("C_2: moved-point check", Ok(r.passes()), || g.to_string());
    }
    for _ in 0..50 {
        let s = random::element(rng, &m, 4);
        if !s.is_idempotent() {
            t.check(
                "C_2: non-idempotents fail to centralize cylinders",
                m.commutes_with_cylinders(&s, s.depth() + 1).map(|c| !c),
                || s.to_string(),
            );
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for name in Suite::NAMES {
            assert_eq!(name.parse::<Suite>().unwrap().to_string(), name);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn suites_pass_and_are_deterministic() {
        for suite in [Suite::OrderCalculus, Suite::Classes, Suite::Cuntz] {
            let a = run(suite, 42).unwrap();
            assert!(
                a.passed,
                "{:#?}",
                a.properties.iter().filter(|p| p.failed > 0).collect::<Vec<_>>()
            );
            let b = run(suite, 42).unwrap();
            assert_eq!(a, b);
        }
    }
}
