//! Constructive witnesses in `C_n`, each returned with a certificate whose
//! postconditions are recomputed from the printed values.

use serde::{Deserialize, Serialize};

use super::clopen::ClopenSet;
use super::element::CuntzElement;
use super::word::{comparable, format_word, words_of_length, Point, Word};
use super::CuntzMonoid;
use crate::algebra::{BooleanInverseMonoid, Pencil};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessOp {
    Transporter,
    ClopenIso,
    InfinitesimalIn,
    ProperlyInfinite,
    ConradeUnit,
    PiecewiseUnits,
    OrthogonalPencil,
    PencilTransport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Postcondition {
    pub name: String,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub operation: WitnessOp,
    pub n: usize,
    pub depth_cap: usize,
    pub inputs: Vec<String>,
    /// Output elements, grouped: one group per pencil member or per
    /// `(piece, unit)` pair, a single group otherwise.
    pub output: Vec<Vec<String>>,
    pub postconditions: Vec<Postcondition>,
}

impl Certificate {
    fn build(m: &CuntzMonoid, operation: WitnessOp, inputs: Vec<String>, output: &[Vec<CuntzElement>]) -> Result<Self> {
        let postconditions = postconditions(m, operation, &inputs, output)?;
        let cert = Certificate {
            operation,
            n: m.n(),
            depth_cap: m.depth_cap(),
            inputs,
            output: output
                .iter()
                .map(|g| g.iter().map(ToString::to_string).collect())
                .collect(),
            postconditions,
        };
        if let Some(p) = cert.postconditions.iter().find(|p| !p.holds) {
            return Err(Error::Inconsistent(format!("{:?} violates `{}`", operation, p.name)));
        }
        Ok(cert)
    }

    pub fn holds(&self) -> bool {
        !self.postconditions.is_empty() && self.postconditions.iter().all(|p| p.holds)
    }

    /// Re-parses the recorded values and recomputes every postcondition.
    pub fn reverify(&self) -> Result<bool> {
        let m = CuntzMonoid::with_depth_cap(self.n, self.depth_cap)?;
        let output = self
            .output
            .iter()
            .map(|g| g.iter().map(|s| m.parse(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let fresh = postconditions(&m, self.operation, &self.inputs, &output)?;
        Ok(fresh == self.postconditions && self.holds())
    }
}

#[derive(Debug, Clone)]
pub struct Witnessed<T> {
    pub value: T,
    pub certificate: Certificate,
}

fn post(name: &str, holds: bool) -> Postcondition {
    Postcondition {
        name: name.to_string(),
        holds,
    }
}

fn postconditions(
    m: &CuntzMonoid,
    op: WitnessOp,
    inputs: &[String],
    output: &[Vec<CuntzElement>],
) -> Result<Vec<Postcondition>> {
    let n = m.n();
    let clopen = |i: usize| -> Result<ClopenSet> {
        let text = inputs
            .get(i)
            .ok_or_else(|| Error::Parse(format!("certificate is missing input {i}")))?;
        m.parse_clopen(text)
    };
    let single = |k: usize| -> Result<&[CuntzElement]> {
        match output {
            [g] if g.len() == k => Ok(g),
            _ => Err(Error::Parse(format!("certificate output must be one group of {k}"))),
        }
    };
    let mut out = Vec::new();
    match op {
        WitnessOp::Transporter | WitnessOp::PencilTransport => {
            let (e, f) = (clopen(0)?, clopen(1)?);
            let x = &single(1)?[0];
            out.push(post("d(x) = e", m.d(x) == e));
            out.push(post("r(x) ≤ f", m.r(x).leq(&f, n)));
        }
        WitnessOp::ClopenIso => {
            let (e, f) = (clopen(0)?, clopen(1)?);
            let x = &single(1)?[0];
            out.push(post("d(x) = e", m.d(x) == e));
            out.push(post("r(x) = f", m.r(x) == f));
        }
        WitnessOp::InfinitesimalIn => {
            let e = clopen(0)?;
            let a = &single(1)?[0];
            out.push(post("a ≠ 0", !a.is_empty()));
            out.push(post("a·a = 0", m.multiply(a, a)?.is_empty()));
            out.push(post("d(a) ≤ e", m.d(a).leq(&e, n)));
            out.push(post("r(a) ≤ e", m.r(a).leq(&e, n)));
        }
        WitnessOp::ProperlyInfinite => {
            let e = clopen(0)?;
            let xy = single(2)?;
            let (x, y) = (&xy[0], &xy[1]);
            out.push(post("d(x) = e", m.d(x) == e));
            out.push(post("d(y) = e", m.d(y) == e));
            out.push(post("r(x) ⊥ r(y)", m.r(x).is_disjoint(&m.r(y), n)));
            out.push(post("r(x) ∨ r(y) ≤ e", m.r(x).join(&m.r(y), n).leq(&e, n)));
        }
        WitnessOp::ConradeUnit => {
            let (e, f) = (clopen(0)?, clopen(1)?);
            let g = &single(1)?[0];
            out.push(post("g is a unit", m.is_unit(g)?));
            let image = m.conjugate(g, &CuntzElement::idempotent(&e))?;
            out.push(post("g·e·g⁻¹ ≤ f", m.d(&image).leq(&f, n)));
        }
        WitnessOp::PiecewiseUnits => {
            let s = m.parse(
                inputs
                    .first()
                    .ok_or_else(|| Error::Parse("certificate is missing its input".into()))?,
            )?;
            if output.iter().any(|g| g.len() != 2) || output.is_empty() {
                return Err(Error::Parse(
                    "piecewise output must be nonempty (piece, unit) pairs".into(),
                ));
            }
            let pieces: Vec<&CuntzElement> = output.iter().map(|g| &g[0]).collect();
            let mut compatible = true;
            for (i, a) in pieces.iter().enumerate() {
                for b in &pieces[i + 1..] {
                    compatible &= m.compatible(a, b)?;
                }
            }
            out.push(post("pieces pairwise compatible", compatible));
            let joined = if compatible {
                Some(m.join_all(pieces.iter().copied())?)
            } else {
                None
            };
            out.push(post("⋁ pieces = s", joined.as_ref() == Some(&s)));
            let mut below = true;
            let mut units = true;
            for g in output {
                below &= m.leq(&g[0], &g[1])?;
                units &= m.is_unit(&g[1])?;
            }
            out.push(post("piece ≤ unit", below));
            out.push(post("units are units", units));
        }
        WitnessOp::OrthogonalPencil => {
            let (e, f) = (clopen(0)?, clopen(1)?);
            if output.iter().any(|g| g.len() != 1) {
                return Err(Error::Parse("pencil output must be singleton groups".into()));
            }
            let pencil = Pencil {
                elements: output.iter().map(|g| g[0].clone()).collect(),
                source: CuntzElement::idempotent(&e),
                target: CuntzElement::idempotent(&f),
            };
            out.push(post("⋁ d(xᵢ) = e and r(xᵢ) ≤ f", pencil.verify(m)?));
            out.push(post("domains pairwise orthogonal", pencil.is_orthogonal(m)?));
            let ranges: Vec<ClopenSet> = pencil.elements.iter().map(|x| m.r(x)).collect();
            let disjoint = ranges
                .iter()
                .enumerate()
                .all(|(i, a)| ranges[i + 1..].iter().all(|b| a.is_disjoint(b, n)));
            out.push(post("ranges pairwise disjoint", disjoint));
        }
    }
    Ok(out)
}

fn nonzero(e: &ClopenSet, what: &str) -> Result<()> {
    if e.is_empty() {
        return Err(Error::Precondition(format!("{what} must be a nonzero clopen set")));
    }
    Ok(())
}

/// `{0, 10, 110, …, 1^(k-1)}`, or `{ε}` when `k = 1`.
fn code(k: usize) -> Vec<Word> {
    if k == 1 {
        return vec![Vec::new()];
    }
    (0..k)
        .map(|i| {
            let mut w = vec![1u8; i];
            if i + 1 < k {
                w.push(0);
            }
            w
        })
        .collect()
}

/// Sends the cylinders of `e`, in order, onto `base·code`.
fn embed(m: &CuntzMonoid, cylinders: &[Word], base: &[u8]) -> Result<CuntzElement> {
    let rules = cylinders
        .iter()
        .zip(code(cylinders.len()))
        .map(|(c, t)| {
            let mut target = base.to_vec();
            target.extend(t);
            (c.clone(), target)
        })
        .collect();
    m.canonicalize(rules)
}

fn child(w: &[u8], a: u8) -> Word {
    let mut x = w.to_vec();
    x.push(a);
    x
}

/// `x` with `d(x) = e` and `r(x)` inside the first cylinder of `f`.
pub fn transporter(m: &CuntzMonoid, e: &ClopenSet, f: &ClopenSet) -> Result<Witnessed<CuntzElement>> {
    nonzero(e, "e")?;
    nonzero(f, "f")?;
    let x = embed(m, e.words(), &child(&f.words()[0], 0))?;
    let certificate = Certificate::build(
        m,
        WitnessOp::Transporter,
        vec![e.to_string(), f.to_string()],
        &[vec![x.clone()]],
    )?;
    Ok(Witnessed { value: x, certificate })
}

/// An element with domain `e` and range `f`, pairing cylinders in sorted
/// order after splitting the last cylinder of the shorter antichain.
pub fn clopen_iso(m: &CuntzMonoid, e: &ClopenSet, f: &ClopenSet) -> Result<Witnessed<CuntzElement>> {
    nonzero(e, "e")?;
    nonzero(f, "f")?;
    let n = m.n();
    let (a, b) = (e.len() % (n - 1), f.len() % (n - 1));
    if a != b {
        return Err(Error::SizeObstruction(format!(
            "{} cylinders ≡ {a} and {} cylinders ≡ {b} (mod {})",
            e.len(),
            f.len(),
            n - 1
        )));
    }
    let mut xs: Vec<Word> = e.words().to_vec();
    let mut ys: Vec<Word> = f.words().to_vec();
    while xs.len() != ys.len() {
        let shorter = if xs.len() < ys.len() { &mut xs } else { &mut ys };
        let last = shorter.pop().expect("nonempty antichain");
        shorter.extend((0..n as u8).map(|a| child(&last, a)));
    }
    let x = m.canonicalize(xs.into_iter().zip(ys).collect())?;
    let certificate = Certificate::build(
        m,
        WitnessOp::ClopenIso,
        vec![e.to_string(), f.to_string()],
        &[vec![x.clone()]],
    )?;
    Ok(Witnessed { value: x, certificate })
}

/// `w0 → w1` for the first cylinder `w` of `e`.
pub fn infinitesimal_in(m: &CuntzMonoid, e: &ClopenSet) -> Result<Witnessed<CuntzElement>> {
    nonzero(e, "e")?;
    let w = &e.words()[0];
    let a = m.canonicalize(vec![(child(w, 0), child(w, 1))])?;
    let certificate = Certificate::build(m, WitnessOp::InfinitesimalIn, vec![e.to_string()], &[vec![a.clone()]])?;
    Ok(Witnessed { value: a, certificate })
}

/// `(x, y)` copying `e` into the disjoint cylinders `w0` and `w1`.
pub fn properly_infinite_witness(m: &CuntzMonoid, e: &ClopenSet) -> Result<Witnessed<(CuntzElement, CuntzElement)>> {
    nonzero(e, "e")?;
    let w = &e.words()[0];
    let x = embed(m, e.words(), &child(w, 0))?;
    let y = embed(m, e.words(), &child(w, 1))?;
    let certificate = Certificate::build(
        m,
        WitnessOp::ProperlyInfinite,
        vec![e.to_string()],
        &[vec![x.clone(), y.clone()]],
    )?;
    Ok(Witnessed {
        value: (x, y),
        certificate,
    })
}

fn involution_moving(m: &CuntzMonoid, e: &ClopenSet, f: &ClopenSet) -> Result<CuntzElement> {
    let a = transporter(m, e, f)?.value;
    m.unit_from_infinitesimal(&a)
}

/// A unit `g` with `g·e·g⁻¹ ≤ f`, for `e ≠ 1` and `f ≠ 0`.
pub fn conrade_unit(m: &CuntzMonoid, e: &ClopenSet, f: &ClopenSet) -> Result<Witnessed<CuntzElement>> {
    if e.is_full() {
        return Err(Error::Precondition("e must differ from 1".into()));
    }
    nonzero(f, "f")?;
    let n = m.n();
    let outside = e.complement(n);
    let room = f.meet(&outside, n);
    let g = if e.is_empty() {
        m.one()
    } else if !room.is_empty() {
        involution_moving(m, e, &room)?
    } else {
        let u = involution_moving(m, e, &outside)?;
        let moved = m.d(&m.conjugate(&u, &CuntzElement::idempotent(e))?);
        let v = involution_moving(m, &moved, &f.meet(&moved.complement(n), n))?;
        m.multiply(&v, &u)?
    };
    let certificate = Certificate::build(
        m,
        WitnessOp::ConradeUnit,
        vec![e.to_string(), f.to_string()],
        &[vec![g.clone()]],
    )?;
    Ok(Witnessed { value: g, certificate })
}

/// Splits `s` into compatible pieces, each lying below a unit.
pub fn piecewise_unit_decomposition(
    m: &CuntzMonoid,
    s: &CuntzElement,
) -> Result<Witnessed<Vec<(CuntzElement, CuntzElement)>>> {
    if s.is_empty() {
        return Err(Error::Precondition("s must be nonzero".into()));
    }
    let n = m.n();
    let pairs = if m.is_unit(s)? {
        vec![(s.clone(), s.clone())]
    } else if m.is_infinitesimal(s)? {
        vec![(s.clone(), m.unit_from_infinitesimal(s)?)]
    } else {
        let mut rules = Vec::new();
        for (u, v) in s.rules() {
            if u.is_empty() || v.is_empty() {
                rules.extend((0..n as u8).map(|a| (child(u, a), child(v, a))));
            } else {
                rules.push((u.clone(), v.clone()));
            }
        }
        let mut pairs = Vec::with_capacity(rules.len());
        for (u, v) in rules {
            let piece = m.canonicalize(vec![(u.clone(), v.clone())])?;
            let unit = if comparable(&u, &v) {
                let rest = clopen_iso(
                    m,
                    &ClopenSet::cylinder(u).complement(n),
                    &ClopenSet::cylinder(v).complement(n),
                )?
                .value;
                m.join(&piece, &rest)?
            } else {
                m.unit_from_infinitesimal(&piece)?
            };
            pairs.push((piece, unit));
        }
        pairs
    };
    let output: Vec<Vec<CuntzElement>> = pairs.iter().map(|(p, u)| vec![p.clone(), u.clone()]).collect();
    let certificate = Certificate::build(m, WitnessOp::PiecewiseUnits, vec![s.to_string()], &output)?;
    Ok(Witnessed {
        value: pairs,
        certificate,
    })
}

fn pencil_cylinders(m: &CuntzMonoid, e: &ClopenSet) -> Vec<Word> {
    if e.is_full() {
        (0..m.n() as u8).map(|a| vec![a]).collect()
    } else {
        e.words().to_vec()
    }
}

/// One element per cylinder of `e` (the letters, when `e = 1`), with
/// distinct target cylinders inside the first cylinder of `f`.
pub fn orthogonal_pencil(m: &CuntzMonoid, e: &ClopenSet, f: &ClopenSet) -> Result<Witnessed<Pencil<CuntzElement>>> {
    nonzero(e, "e")?;
    nonzero(f, "f")?;
    let cylinders = pencil_cylinders(m, e);
    let base = child(&f.words()[0], 0);
    let elements = cylinders
        .iter()
        .zip(code(cylinders.len()))
        .map(|(c, t)| {
            let mut target = base.clone();
            target.extend(t);
            m.canonicalize(vec![(c.clone(), target)])
        })
        .collect::<Result<Vec<_>>>()?;
    let output: Vec<Vec<CuntzElement>> = elements.iter().map(|x| vec![x.clone()]).collect();
    let certificate = Certificate::build(
        m,
        WitnessOp::OrthogonalPencil,
        vec![e.to_string(), f.to_string()],
        &output,
    )?;
    Ok(Witnessed {
        value: Pencil {
            elements,
            source: CuntzElement::idempotent(e),
            target: CuntzElement::idempotent(f),
        },
        certificate,
    })
}

/// Collapses a pencil from `e` to `f` into one element `w = ⋁ bⁱ⁻¹a·xᵢ`
/// with `d(w) = e` and `r(w) ≤ f`, using `(a, b)` witnessing that `f` is
/// properly infinite.
pub fn pencil_transport(m: &CuntzMonoid, e: &ClopenSet, f: &ClopenSet) -> Result<Witnessed<CuntzElement>> {
    let pencil = orthogonal_pencil(m, e, f)?.value;
    let (a, b) = properly_infinite_witness(m, f)?.value;
    let mut v = a;
    let mut w = m.zero();
    for x in &pencil.elements {
        w = m.join(&w, &m.multiply(&v, x)?)?;
        v = m.multiply(&b, &v)?;
    }
    let certificate = Certificate::build(
        m,
        WitnessOp::PencilTransport,
        vec![e.to_string(), f.to_string()],
        &[vec![w.clone()]],
    )?;
    Ok(Witnessed { value: w, certificate })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MovedPoint {
    pub rule: String,
    pub point: String,
    pub image: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MovedPointReport {
    pub unit: String,
    pub support: String,
    pub rules_inside_support: bool,
    pub moved: Vec<MovedPoint>,
    pub support_cylinders_covered: bool,
    pub fixed_samples: usize,
    pub fixed_part_fixed: bool,
}

impl MovedPointReport {
    pub fn passes(&self) -> bool {
        self.rules_inside_support && self.support_cylinders_covered && self.fixed_part_fixed
    }
}

fn flip(a: u8, n: usize) -> u8 {
    ((a as usize + 1) % n) as u8
}

/// A point of the cylinder `u` moved by the rule `u → v` (`u ≠ v`).
fn moved_point(u: &[u8], v: &[u8], n: usize) -> Point {
    if !comparable(u, v) {
        return Point::new(u.to_vec(), vec![0]);
    }
    let (short, long) = if u.len() < v.len() { (u, v) } else { (v, u) };
    let w = &long[short.len()..];
    let mut prefix = u.to_vec();
    prefix.push(flip(w[0], n));
    Point::new(prefix, vec![0])
}

/// Samples the support of a unit: each non-identity rule moves an explicit
/// eventually periodic point, and the fixed part is fixed on sampled points
/// down to `depth` letters.
pub fn moved_point_check(m: &CuntzMonoid, g: &CuntzElement, depth: usize) -> Result<MovedPointReport> {
    if !m.is_unit(g)? {
        return Err(Error::Precondition(format!("{g} is not a unit")));
    }
    if depth > m.depth_cap() {
        return Err(Error::DepthCap { cap: m.depth_cap() });
    }
    let n = m.n();
    let support = m.support(g);
    let mut rules_inside_support = true;
    let mut moved = Vec::new();
    for (u, v) in g.rules().iter().filter(|(u, v)| u != v) {
        rules_inside_support &= support.contains_word(u);
        let point = moved_point(u, v, n);
        let image = g.apply_point(&point).expect("units are total");
        if image != point {
            moved.push(MovedPoint {
                rule: format!("{}->{}", format_word(u), format_word(v)),
                point: point.to_string(),
                image: image.to_string(),
            });
        }
    }
    let moved_rules: Vec<Word> = g
        .rules()
        .iter()
        .filter(|(u, v)| u != v)
        .map(|(u, v)| (u.clone(), moved_point(u, v, n)))
        .filter(|(_, p)| g.apply_point(p).as_ref() != Some(p))
        .map(|(u, _)| u)
        .collect();
    let support_cylinders_covered = moved.len() == g.rules().iter().filter(|(u, v)| u != v).count()
        && support
            .words()
            .iter()
            .all(|c| moved_rules.iter().any(|u| super::is_prefix(c, u)));

    let mut fixed_samples = 0;
    let mut fixed_part_fixed = true;
    for c in m.fixed_clopen(g).words() {
        for len in 0..=depth.saturating_sub(c.len()) {
            for x in words_of_length(n, len) {
                let mut prefix = c.clone();
                prefix.extend(x);
                for tail in [vec![0u8], vec![(n - 1) as u8], vec![0, 1]] {
                    let p = Point::new(prefix.clone(), tail);
                    fixed_samples += 1;
                    fixed_part_fixed &= g.apply_point(&p).as_ref() == Some(&p);
                }
            }
        }
    }

    Ok(MovedPointReport {
        unit: g.to_string(),
        support: support.to_string(),
        rules_inside_support,
        moved,
        support_cylinders_covered,
        fixed_samples,
        fixed_part_fixed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c2() -> CuntzMonoid {
        CuntzMonoid::new(2).unwrap()
    }

    fn cl(text: &str) -> ClopenSet {
        ClopenSet::parse(text, 2).unwrap()
    }

    fn el(text: &str) -> CuntzElement {
        c2().parse(text).unwrap()
    }

    #[test]
    fn transporter_examples() {
        let m = c2();
        assert_eq!(transporter(&m, &cl("{1}"), &cl("{0}")).unwrap().value, el("1->00"));
        let x = transporter(&m, &cl("{0, 10}"), &cl("{0}")).unwrap().value;
        assert_eq!(x, el("0->000, 10->001"));
        assert_eq!(
            transporter(&m, &ClopenSet::full(), &cl("{11}")).unwrap().value,
            el("e->110")
        );
        assert!(transporter(&m, &ClopenSet::empty(), &cl("{1}")).is_err());
    }

    #[test]
    fn clopen_iso_examples() {
        let m = c2();
        assert_eq!(clopen_iso(&m, &cl("{0}"), &cl("{1}")).unwrap().value, el("0->1"));
        let x = clopen_iso(&m, &cl("{0}"), &cl("{10, 111}")).unwrap().value;
        assert_eq!(x, el("00->10, 01->111"));
        let m3 = CuntzMonoid::new(3).unwrap();
        let e = ClopenSet::parse("{0}", 3).unwrap();
        let f = ClopenSet::parse("{0, 1}", 3).unwrap();
        assert!(matches!(clopen_iso(&m3, &e, &f), Err(Error::SizeObstruction(_))));
        assert!(matches!(
            clopen_iso(&m, &ClopenSet::empty(), &cl("{1}")),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn infinitesimal_examples() {
        let m = c2();
        assert_eq!(infinitesimal_in(&m, &ClopenSet::full()).unwrap().value, el("0->1"));
        assert_eq!(infinitesimal_in(&m, &cl("{0}")).unwrap().value, el("00->01"));
        assert!(infinitesimal_in(&m, &ClopenSet::empty()).is_err());
    }

    #[test]
    fn properly_infinite_examples() {
        let m = c2();
        let (x, y) = properly_infinite_witness(&m, &ClopenSet::full()).unwrap().value;
        assert_eq!((x, y), (el("e->0"), el("e->1")));
        let (x, y) = properly_infinite_witness(&m, &cl("{1}")).unwrap().value;
        assert_eq!((x, y), (el("1->10"), el("1->11")));
        let (x, _) = properly_infinite_witness(&m, &cl("{0, 1}")).unwrap().value;
        assert_eq!(x, el("e->0"));
    }

    #[test]
    fn conrade_examples() {
        let m = c2();
        let g = conrade_unit(&m, &cl("{0}"), &cl("{11}")).unwrap().value;
        assert_eq!(g, el("0->110, 110->0, 10->10, 111->111"));
        let g = conrade_unit(&m, &cl("{0}"), &cl("{1}")).unwrap();
        assert!(g.certificate.holds());
        let g = conrade_unit(&m, &cl("{0, 10}"), &cl("{01}")).unwrap();
        assert!(g.certificate.holds());
        assert!(conrade_unit(&m, &ClopenSet::full(), &cl("{1}")).is_err());
        assert!(conrade_unit(&m, &cl("{0}"), &ClopenSet::empty()).is_err());
    }

    #[test]
    fn piecewise_examples() {
        let m = c2();
        let w = piecewise_unit_decomposition(&m, &el("e->0")).unwrap();
        let pieces: Vec<&CuntzElement> = w.value.iter().map(|(p, _)| p).collect();
        assert_eq!(pieces, vec![&el("0->00"), &el("1->01")]);
        assert_eq!(w.value[0].1, el("0->00, 10->01, 11->1"));
        let g = el("0->1, 1->0");
        assert_eq!(
            piecewise_unit_decomposition(&m, &g).unwrap().value,
            vec![(g.clone(), g)]
        );
        let a = el("0->10");
        assert_eq!(
            piecewise_unit_decomposition(&m, &a).unwrap().value,
            vec![(a.clone(), m.unit_from_infinitesimal(&a).unwrap())]
        );
    }

    #[test]
    fn pencil_examples() {
        let m = c2();
        let p = orthogonal_pencil(&m, &ClopenSet::full(), &cl("{0}")).unwrap().value;
        assert_eq!(p.elements, vec![el("0->000"), el("1->001")]);
        let p = orthogonal_pencil(&m, &cl("{0}"), &ClopenSet::full()).unwrap().value;
        assert_eq!(p.elements, vec![el("0->0")]);
        let p = orthogonal_pencil(&m, &ClopenSet::full(), &cl("{11}")).unwrap();
        assert_eq!(p.value.elements.len(), 2);
        let w = pencil_transport(&m, &cl("{0, 10, 110}"), &cl("{111}")).unwrap();
        assert!(w.certificate.holds());
    }

    #[test]
    fn certificates_round_trip() {
        let m = c2();
        let cert = conrade_unit(&m, &cl("{0}"), &cl("{11}")).unwrap().certificate;
        let text = serde_json::to_string(&cert).unwrap();
        let back: Certificate = serde_json::from_str(&text).unwrap();
        assert!(back.reverify().unwrap());
        let mut forged = back.clone();
        forged.output[0][0] = "0->1, 1->0".into();
        assert!(!forged.reverify().unwrap());
    }

    #[test]
    fn moved_points() {
        let m = c2();
        let r = moved_point_check(&m, &el("0->1, 1->0"), 4).unwrap();
        assert_eq!(r.support, "{e}");
        assert_eq!(r.moved.len(), 2);
        assert_eq!(r.moved[0].point, "(0)^∞");
        assert_eq!(r.moved[0].image, "1(0)^∞");
        assert!(r.passes());
        let r = moved_point_check(&m, &m.one(), 4).unwrap();
        assert!(r.moved.is_empty() && r.passes());
        let r = moved_point_check(&m, &el("0->00, 10->01, 11->1"), 4).unwrap();
        assert!(r.passes());
        assert_eq!(r.moved.len(), 3);
        let r = moved_point_check(&m, &el("0->0, 10->11, 11->10"), 4).unwrap();
        assert!(r.passes() && r.fixed_samples > 0);
        assert!(moved_point_check(&m, &el("0->1"), 4).is_err());
    }
}
