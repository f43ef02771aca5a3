//! Finite discrete groupoids and their local bisections.
//!
//! Arrow ids are dense indices; composition lives in a dense table so that
//! `a∘b` (first `b`, then `a`) is a single lookup. A groupoid is validated on
//! construction and immutable afterwards.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

pub type ObjectId = usize;
pub type ArrowId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Arrow {
    pub dom: ObjectId,
    pub cod: ObjectId,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroupoid {
    object_labels: Vec<String>,
    arrows: Vec<Arrow>,
    arrow_labels: Vec<String>,
    compose: Vec<Option<ArrowId>>,
    inverse: Vec<ArrowId>,
    identity: Vec<ArrowId>,
}

/// A set of arrows with pairwise distinct domains and pairwise distinct
/// codomains, stored as a sorted list of arrow ids.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
pub struct LocalBisection(Vec<ArrowId>);

impl LocalBisection {
    pub fn empty() -> Self {
        LocalBisection(Vec::new())
    }

    pub fn arrows(&self) -> &[ArrowId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, a: ArrowId) -> bool {
        self.0.binary_search(&a).is_ok()
    }

    pub fn is_subset(&self, other: &LocalBisection) -> bool {
        self.0.iter().all(|a| other.contains(*a))
    }

    pub fn intersection(&self, other: &LocalBisection) -> LocalBisection {
        LocalBisection(self.0.iter().copied().filter(|a| other.contains(*a)).collect())
    }

    /// Plain set union; the caller guarantees the result is a local bisection.
    pub(crate) fn union_unchecked(&self, other: &LocalBisection) -> LocalBisection {
        let mut v: Vec<ArrowId> = self.0.iter().chain(other.0.iter()).copied().collect();
        v.sort_unstable();
        v.dedup();
        LocalBisection(v)
    }

    pub(crate) fn difference(&self, other: &LocalBisection) -> LocalBisection {
        LocalBisection(self.0.iter().copied().filter(|a| !other.contains(*a)).collect())
    }

    pub(crate) fn from_sorted_unchecked(v: Vec<ArrowId>) -> LocalBisection {
        LocalBisection(v)
    }
}

/// Orbits, isotropy and the derived flags of a groupoid.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupoidProperties {
    pub orbits: Vec<Vec<ObjectId>>,
    pub isotropy: Vec<ArrowId>,
    pub principal: bool,
    /// Equal to `principal`: with the discrete topology the interior of the
    /// isotropy bundle is the isotropy bundle itself.
    pub effective: bool,
    pub minimal: bool,
    pub connected: bool,
}

impl FiniteGroupoid {
    /// Builds and validates a groupoid from labelled objects, arrows given as
    /// `(label, dom, cod)`, composition triples `(a, b, a∘b)` and inverse pairs.
    pub fn new(
        object_labels: Vec<String>,
        arrows: Vec<(String, ObjectId, ObjectId)>,
        compose: &[(ArrowId, ArrowId, ArrowId)],
        inverse: &[(ArrowId, ArrowId)],
    ) -> Result<Self> {
        let n_obj = object_labels.len();
        let n = arrows.len();
        let bad = |msg: String| Error::InvalidGroupoid(msg);
        for (label, d, c) in &arrows {
            if *d >= n_obj || *c >= n_obj {
                return Err(bad(format!("arrow {label} refers to an unknown object")));
            }
        }
        let arrow_labels: Vec<String> = arrows.iter().map(|(l, _, _)| l.clone()).collect();
        let arrows: Vec<Arrow> = arrows.iter().map(|&(_, dom, cod)| Arrow { dom, cod }).collect();
        let name = |a: ArrowId| arrow_labels[a].clone();

        let mut table = vec![None; n * n];
        for &(a, b, c) in compose {
            if a >= n || b >= n || c >= n {
                return Err(bad(format!("composition ({a}, {b}, {c}) uses an unknown arrow")));
            }
            if arrows[a].dom != arrows[b].cod {
                return Err(bad(format!(
                    "composition {}∘{} listed but dom({}) ≠ cod({})",
                    name(a),
                    name(b),
                    name(a),
                    name(b)
                )));
            }
            if arrows[c].dom != arrows[b].dom || arrows[c].cod != arrows[a].cod {
                return Err(bad(format!(
                    "composite {}∘{} = {} has the wrong endpoints",
                    name(a),
                    name(b),
                    name(c)
                )));
            }
            if let Some(prev) = table[a * n + b] {
                if prev != c {
                    return Err(bad(format!("composition {}∘{} listed twice", name(a), name(b))));
                }
            }
            table[a * n + b] = Some(c);
        }
        for a in 0..n {
            for b in 0..n {
                if arrows[a].dom == arrows[b].cod && table[a * n + b].is_none() {
                    return Err(bad(format!("composition {}∘{} is missing", name(a), name(b))));
                }
            }
        }

        let mut inv = vec![usize::MAX; n];
        for &(a, b) in inverse {
            if a >= n || b >= n {
                return Err(bad(format!("inverse pair ({a}, {b}) uses an unknown arrow")));
            }
            for (x, y) in [(a, b), (b, a)] {
                if inv[x] != usize::MAX && inv[x] != y {
                    return Err(bad(format!("arrow {} has two inverses", name(x))));
                }
                inv[x] = y;
            }
        }
        if let Some(a) = inv.iter().position(|&x| x == usize::MAX) {
            return Err(bad(format!("arrow {} has no inverse", name(a))));
        }

        let mut identity = vec![usize::MAX; n_obj];
        for (x, slot) in identity.iter_mut().enumerate() {
            let found = (0..n).find(|&i| {
                arrows[i].dom == x
                    && arrows[i].cod == x
                    && (0..n).all(|a| {
                        (arrows[a].dom != x || table[a * n + i] == Some(a))
                            && (arrows[a].cod != x || table[i * n + a] == Some(a))
                    })
            });
            match found {
                Some(i) => *slot = i,
                None => return Err(bad(format!("object {} has no identity arrow", object_labels[x]))),
            }
        }

        for a in 0..n {
            let b = inv[a];
            if arrows[b].dom != arrows[a].cod || arrows[b].cod != arrows[a].dom {
                return Err(bad(format!("inverse of {} has the wrong endpoints", name(a))));
            }
            if table[b * n + a] != Some(identity[arrows[a].dom]) || table[a * n + b] != Some(identity[arrows[a].cod]) {
                return Err(bad(format!("{} and {} do not compose to identities", name(a), name(b))));
            }
        }

        for a in 0..n {
            for b in 0..n {
                let Some(ab) = table[a * n + b] else { continue };
                for c in 0..n {
                    let Some(bc) = table[b * n + c] else { continue };
                    let left = table[ab * n + c];
                    let right = table[a * n + bc];
                    if left != right {
                        return Err(bad(format!(
                            "associativity fails on ({}, {}, {})",
                            name(a),
                            name(b),
                            name(c)
                        )));
                    }
                }
            }
        }

        Ok(FiniteGroupoid {
            object_labels,
            arrows,
            arrow_labels,
            compose: table,
            inverse: inv,
            identity,
        })
    }

    /// The pair groupoid on `n` objects labelled `1..=n`, one arrow per ordered pair.
    pub fn pair(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGroupoid("pair groupoid needs at least one object".into()));
        }
        let labels: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let id = |d: usize, c: usize| d * n + c;
        let mut arrows = Vec::with_capacity(n * n);
        for d in 0..n {
            for c in 0..n {
                arrows.push((format!("{}->{}", d + 1, c + 1), d, c));
            }
        }
        let mut compose = Vec::new();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    // (y→z)∘(x→y) = x→z
                    compose.push((id(y, z), id(x, y), id(x, z)));
                }
            }
        }
        let inverse: Vec<_> = (0..n).flat_map(|d| (0..n).map(move |c| (id(d, c), id(c, d)))).collect();
        Self::new(labels, arrows, &compose, &inverse)
    }

    /// One-object groupoid from a Cayley table `table[i][j] = i·j`.
    pub fn group(labels: Vec<String>, table: &[Vec<usize>]) -> Result<Self> {
        let k = table.len();
        if k == 0 || labels.len() != k || table.iter().any(|row| row.len() != k) {
            return Err(Error::InvalidGroupoid(
                "Cayley table must be square and labelled".into(),
            ));
        }
        if table.iter().flatten().any(|&x| x >= k) {
            return Err(Error::InvalidGroupoid("Cayley table entry out of range".into()));
        }
        let e = (0..k)
            .find(|&i| (0..k).all(|j| table[i][j] == j && table[j][i] == j))
            .ok_or_else(|| Error::InvalidGroupoid("Cayley table has no identity".into()))?;
        let mut inverse = Vec::new();
        for a in 0..k {
            let b = (0..k)
                .find(|&b| table[a][b] == e && table[b][a] == e)
                .ok_or_else(|| Error::InvalidGroupoid(format!("element {} has no inverse", labels[a])))?;
            inverse.push((a, b));
        }
        let arrows = labels.iter().map(|l| (l.clone(), 0, 0)).collect();
        let compose: Vec<_> = (0..k).flat_map(|a| (0..k).map(move |b| (a, b, table[a][b]))).collect();
        Self::new(vec!["*".into()], arrows, &compose, &inverse)
    }

    /// Named one-object groupoids: `Z<k>`, `S3`, `V4`, `1`.
    pub fn named_group(name: &str) -> Result<Self> {
        let (labels, table) = match name {
            "1" | "trivial" => (vec!["1".to_string()], vec![vec![0]]),
            "V4" | "K4" => {
                let labels = ["1", "a", "b", "c"].map(String::from).to_vec();
                let table = (0..4).map(|i| (0..4).map(|j| i ^ j).collect()).collect();
                (labels, table)
            }
            "S3" => {
                let perms = crate::perm::Permutation::symmetric_group(3);
                let table = perms
                    .iter()
                    .map(|p| {
                        perms
                            .iter()
                            .map(|q| perms.iter().position(|r| *r == p.compose(q)).unwrap())
                            .collect()
                    })
                    .collect();
                let labels = perms.iter().map(|p| p.to_cycle_string()).collect();
                (labels, table)
            }
            _ => {
                let k: usize = name
                    .strip_prefix('Z')
                    .and_then(|s| s.parse().ok())
                    .filter(|&k| k >= 1)
                    .ok_or_else(|| Error::Parse(format!("unknown group `{name}`")))?;
                let labels = (0..k)
                    .map(|i| match i {
                        0 => "1".to_string(),
                        1 => "g".to_string(),
                        _ => format!("g^{i}"),
                    })
                    .collect();
                let table = (0..k).map(|i| (0..k).map(|j| (i + j) % k).collect()).collect();
                (labels, table)
            }
        };
        Self::group(labels, &table)
    }

    /// Disjoint union; objects are relabelled `1..` left to right and
    /// colliding arrow labels get an `a:`/`b:` prefix.
    pub fn disjoint_union(left: &Self, right: &Self) -> Result<Self> {
        let no = left.object_count();
        let na = left.arrow_count();
        let objects: Vec<String> = (1..=no + right.object_count()).map(|i| i.to_string()).collect();
        let clash: BTreeSet<&String> = left
            .arrow_labels
            .iter()
            .filter(|l| right.arrow_labels.contains(l))
            .collect();
        let relabel = |g: &Self, a: ArrowId, offset: usize, tag: &str| {
            let Arrow { dom, cod } = g.arrows[a];
            if g.is_principal_pair(dom, cod) {
                format!("{}->{}", dom + offset + 1, cod + offset + 1)
            } else if clash.contains(&g.arrow_labels[a]) {
                format!("{tag}:{}", g.arrow_labels[a])
            } else {
                g.arrow_labels[a].clone()
            }
        };
        let mut arrows = Vec::new();
        for a in 0..na {
            let Arrow { dom, cod } = left.arrows[a];
            arrows.push((relabel(left, a, 0, "a"), dom, cod));
        }
        for a in 0..right.arrow_count() {
            let Arrow { dom, cod } = right.arrows[a];
            arrows.push((relabel(right, a, no, "b"), dom + no, cod + no));
        }
        let mut compose = Vec::new();
        for (a, b, c) in left.compositions() {
            compose.push((a, b, c));
        }
        for (a, b, c) in right.compositions() {
            compose.push((a + na, b + na, c + na));
        }
        let mut inverse: Vec<_> = (0..na).map(|a| (a, left.inverse[a])).collect();
        inverse.extend((0..right.arrow_count()).map(|a| (a + na, right.inverse[a] + na)));
        Self::new(objects, arrows, &compose, &inverse)
    }

    /// Full subgroupoid on the given objects, with the map from new arrow ids
    /// to old ones.
    pub fn restrict(&self, objects: &[ObjectId]) -> Result<(Self, Vec<ArrowId>)> {
        let mut objects: Vec<ObjectId> = objects.to_vec();
        objects.sort_unstable();
        objects.dedup();
        let new_obj: HashMap<ObjectId, usize> = objects.iter().enumerate().map(|(i, &o)| (o, i)).collect();
        let kept: Vec<ArrowId> = (0..self.arrow_count())
            .filter(|&a| new_obj.contains_key(&self.arrows[a].dom) && new_obj.contains_key(&self.arrows[a].cod))
            .collect();
        let new_arrow: HashMap<ArrowId, usize> = kept.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let arrows = kept
            .iter()
            .map(|&a| {
                (
                    self.arrow_labels[a].clone(),
                    new_obj[&self.arrows[a].dom],
                    new_obj[&self.arrows[a].cod],
                )
            })
            .collect();
        let mut compose = Vec::new();
        for &a in &kept {
            for &b in &kept {
                if let Some(c) = self.compose(a, b) {
                    compose.push((new_arrow[&a], new_arrow[&b], new_arrow[&c]));
                }
            }
        }
        let inverse: Vec<_> = kept
            .iter()
            .map(|&a| (new_arrow[&a], new_arrow[&self.inverse[a]]))
            .collect();
        let labels = objects.iter().map(|&o| self.object_labels[o].clone()).collect();
        Ok((Self::new(labels, arrows, &compose, &inverse)?, kept))
    }

    pub fn object_count(&self) -> usize {
        self.object_labels.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn arrow(&self, a: ArrowId) -> Arrow {
        self.arrows[a]
    }

    pub fn object_label(&self, x: ObjectId) -> &str {
        &self.object_labels[x]
    }

    pub fn arrow_label(&self, a: ArrowId) -> &str {
        &self.arrow_labels[a]
    }

    /// `a∘b`, defined when `dom(a) = cod(b)`.
    pub fn compose(&self, a: ArrowId, b: ArrowId) -> Option<ArrowId> {
        self.compose[a * self.arrow_count() + b]
    }

    pub fn inverse(&self, a: ArrowId) -> ArrowId {
        self.inverse[a]
    }

    pub fn identity(&self, x: ObjectId) -> ArrowId {
        self.identity[x]
    }

    pub fn is_identity(&self, a: ArrowId) -> bool {
        let Arrow { dom, cod } = self.arrows[a];
        dom == cod && self.identity[dom] == a
    }

    pub fn compositions(&self) -> impl Iterator<Item = (ArrowId, ArrowId, ArrowId)> + '_ {
        let n = self.arrow_count();
        (0..n).flat_map(move |a| (0..n).filter_map(move |b| self.compose(a, b).map(|c| (a, b, c))))
    }

    fn is_principal_pair(&self, dom: ObjectId, cod: ObjectId) -> bool {
        self.arrows.iter().filter(|a| a.dom == dom && a.cod == cod).count() == 1
    }

    /// Display name of an arrow: `x->y` when it is the only arrow between its
    /// endpoints, otherwise its label.
    pub fn arrow_name(&self, a: ArrowId) -> String {
        let Arrow { dom, cod } = self.arrows[a];
        if self.is_principal_pair(dom, cod) {
            format!("{}->{}", self.object_labels[dom], self.object_labels[cod])
        } else {
            self.arrow_labels[a].clone()
        }
    }

    pub fn identities(&self) -> LocalBisection {
        let mut v = self.identity.clone();
        v.sort_unstable();
        LocalBisection(v)
    }

    pub fn bisection(&self, arrows: impl IntoIterator<Item = ArrowId>) -> Result<LocalBisection> {
        let mut v: Vec<ArrowId> = arrows.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        if let Some(&a) = v.iter().find(|&&a| a >= self.arrow_count()) {
            return Err(Error::NotLocalBisection(format!("unknown arrow id {a}")));
        }
        for (i, &a) in v.iter().enumerate() {
            for &b in &v[i + 1..] {
                if self.arrows[a].dom == self.arrows[b].dom || self.arrows[a].cod == self.arrows[b].cod {
                    return Err(Error::NotLocalBisection(format!(
                        "{} and {} share an endpoint",
                        self.arrow_name(a),
                        self.arrow_name(b)
                    )));
                }
            }
        }
        Ok(LocalBisection(v))
    }

    /// `{a∘b : a ∈ A, b ∈ B, dom(a) = cod(b)}`.
    pub fn bisection_product(&self, a: &LocalBisection, b: &LocalBisection) -> LocalBisection {
        let mut by_dom: Vec<Option<ArrowId>> = vec![None; self.object_count()];
        for &x in &a.0 {
            by_dom[self.arrows[x].dom] = Some(x);
        }
        let mut v: Vec<ArrowId> =
            b.0.iter()
                .filter_map(|&y| by_dom[self.arrows[y].cod].and_then(|x| self.compose(x, y)))
                .collect();
        v.sort_unstable();
        LocalBisection(v)
    }

    pub fn bisection_inverse(&self, a: &LocalBisection) -> LocalBisection {
        let mut v: Vec<ArrowId> = a.0.iter().map(|&x| self.inverse[x]).collect();
        v.sort_unstable();
        LocalBisection(v)
    }

    /// Every local bisection, in a deterministic order.
    pub fn local_bisections(&self) -> Vec<LocalBisection> {
        let mut out_arrows: Vec<Vec<ArrowId>> = vec![Vec::new(); self.object_count()];
        for (a, arrow) in self.arrows.iter().enumerate() {
            out_arrows[arrow.dom].push(a);
        }
        let mut result = Vec::new();
        let mut used_cod = vec![false; self.object_count()];
        let mut current = Vec::new();
        self.extend_bisections(0, &out_arrows, &mut used_cod, &mut current, &mut result);
        result.sort();
        result
    }

    fn extend_bisections(
        &self,
        object: ObjectId,
        out_arrows: &[Vec<ArrowId>],
        used_cod: &mut [bool],
        current: &mut Vec<ArrowId>,
        result: &mut Vec<LocalBisection>,
    ) {
        if object == self.object_count() {
            let mut v = current.clone();
            v.sort_unstable();
            result.push(LocalBisection(v));
            return;
        }
        self.extend_bisections(object + 1, out_arrows, used_cod, current, result);
        for &a in &out_arrows[object] {
            let c = self.arrows[a].cod;
            if used_cod[c] {
                continue;
            }
            used_cod[c] = true;
            current.push(a);
            self.extend_bisections(object + 1, out_arrows, used_cod, current, result);
            current.pop();
            used_cod[c] = false;
        }
    }

    pub fn orbits(&self) -> Vec<Vec<ObjectId>> {
        let mut seen = vec![false; self.object_count()];
        let mut orbits = Vec::new();
        for x in 0..self.object_count() {
            if seen[x] {
                continue;
            }
            let orbit: Vec<ObjectId> = (0..self.object_count())
                .filter(|&y| self.arrows.iter().any(|a| a.dom == x && a.cod == y))
                .collect();
            for &y in &orbit {
                seen[y] = true;
            }
            orbits.push(orbit);
        }
        orbits
    }

    pub fn isotropy(&self) -> Vec<ArrowId> {
        (0..self.arrow_count())
            .filter(|&a| self.arrows[a].dom == self.arrows[a].cod)
            .collect()
    }

    pub fn properties(&self) -> GroupoidProperties {
        let orbits = self.orbits();
        let isotropy = self.isotropy();
        let principal = isotropy.iter().all(|&a| self.is_identity(a));
        let minimal = orbits.len() == 1;
        GroupoidProperties {
            principal,
            effective: principal,
            minimal,
            connected: minimal,
            orbits,
            isotropy,
        }
    }

    /// Parses a shorthand spec (`pair:n`, `group:<name|table>`,
    /// `disjoint_union(a,b)`) or inline JSON.
    pub fn from_spec(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        if spec.starts_with('{') {
            return Self::from_json(spec);
        }
        if let Some(n) = spec.strip_prefix("pair:") {
            let n = n
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad object count in `{spec}`")))?;
            return Self::pair(n);
        }
        if let Some(g) = spec.strip_prefix("group:") {
            let g = g.trim();
            if g.starts_with('[') {
                let table: Vec<Vec<usize>> =
                    serde_json::from_str(g).map_err(|e| Error::Parse(format!("bad Cayley table: {e}")))?;
                let labels = (0..table.len()).map(|i| format!("x{i}")).collect();
                return Self::group(labels, &table);
            }
            return Self::named_group(g);
        }
        if let Some(inner) = spec.strip_prefix("disjoint_union(").and_then(|s| s.strip_suffix(')')) {
            let (a, b) = split_top_level_comma(inner)
                .ok_or_else(|| Error::Parse(format!("disjoint_union needs two arguments: `{spec}`")))?;
            return Self::disjoint_union(&Self::from_spec(a)?, &Self::from_spec(b)?);
        }
        Err(Error::Parse(format!("unrecognised groupoid spec `{spec}`")))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: GroupoidJson = serde_json::from_str(text).map_err(|e| Error::Parse(format!("groupoid JSON: {e}")))?;
        let objects: Vec<String> = raw.objects.iter().map(label_of).collect();
        let obj_index: HashMap<&str, usize> = objects.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let lookup_obj = |v: &Value| {
            let l = label_of(v);
            obj_index
                .get(l.as_str())
                .copied()
                .ok_or_else(|| Error::Parse(format!("unknown object `{l}`")))
        };
        let mut arrows = Vec::new();
        for a in &raw.arrows {
            arrows.push((label_of(&a.id), lookup_obj(&a.dom)?, lookup_obj(&a.cod)?));
        }
        let arrow_index: HashMap<String, usize> =
            arrows.iter().enumerate().map(|(i, (l, _, _))| (l.clone(), i)).collect();
        if arrow_index.len() != arrows.len() {
            return Err(Error::Parse("duplicate arrow id".into()));
        }
        let lookup = |v: &Value| {
            let l = label_of(v);
            arrow_index
                .get(&l)
                .copied()
                .ok_or_else(|| Error::Parse(format!("unknown arrow `{l}`")))
        };
        let compose = raw
            .compose
            .iter()
            .map(|[a, b, c]| Ok((lookup(a)?, lookup(b)?, lookup(c)?)))
            .collect::<Result<Vec<_>>>()?;
        let inverse = raw
            .inverse
            .iter()
            .map(|[a, b]| Ok((lookup(a)?, lookup(b)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(objects, arrows, &compose, &inverse)
    }

    pub fn to_json(&self) -> Value {
        let arrows: Vec<Value> = (0..self.arrow_count())
            .map(|a| {
                serde_json::json!({
                    "id": self.arrow_labels[a],
                    "dom": self.object_labels[self.arrows[a].dom],
                    "cod": self.object_labels[self.arrows[a].cod],
                })
            })
            .collect();
        let compose: Vec<[&str; 3]> = self
            .compositions()
            .map(|(a, b, c)| [&*self.arrow_labels[a], &*self.arrow_labels[b], &*self.arrow_labels[c]])
            .collect();
        let inverse: Vec<[&str; 2]> = (0..self.arrow_count())
            .map(|a| [&*self.arrow_labels[a], &*self.arrow_labels[self.inverse[a]]])
            .collect();
        serde_json::json!({
            "objects": self.object_labels,
            "arrows": arrows,
            "compose": compose,
            "inverse": inverse,
        })
    }

    /// Graphviz rendering of the arrow graph; identity arrows are omitted.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph \"{}\" {{", name.replace('"', "'"));
        for (i, l) in self.object_labels.iter().enumerate() {
            let _ = writeln!(out, "  o{i} [label=\"{}\"];", l.replace('"', "'"));
        }
        for (a, arrow) in self.arrows.iter().enumerate() {
            if self.is_identity(a) {
                continue;
            }
            let _ = writeln!(
                out,
                "  o{} -> o{} [label=\"{}\"];",
                arrow.dom,
                arrow.cod,
                self.arrow_labels[a].replace('"', "'")
            );
        }
        out.push_str("}\n");
        out
    }

    /// Parses the element DSL `{1->2, 3->3}`; a token is either `x->y`
    /// (the unique arrow between two objects) or an arrow label.
    pub fn parse_element(&self, text: &str) -> Result<LocalBisection> {
        let text = text.trim();
        if text.starts_with('[') {
            let ids: Vec<Value> = serde_json::from_str(text).map_err(|e| Error::Parse(format!("element JSON: {e}")))?;
            let arrows = ids
                .iter()
                .map(|v| self.resolve_arrow(&label_of(v)))
                .collect::<Result<Vec<_>>>()?;
            return self.bisection(arrows);
        }
        let inner = text
            .strip_prefix('{')
            .and_then(|s| s.strip_suffix('}'))
            .ok_or_else(|| Error::Parse(format!("element must be braced: `{text}`")))?;
        let arrows = inner
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| self.resolve_arrow(t))
            .collect::<Result<Vec<_>>>()?;
        self.bisection(arrows)
    }

    fn resolve_arrow(&self, token: &str) -> Result<ArrowId> {
        if let Some(a) = self.arrow_labels.iter().position(|l| l == token) {
            return Ok(a);
        }
        if let Some((d, c)) = token.split_once("->") {
            let d = d.trim();
            let c = c.trim();
            let candidates: Vec<ArrowId> = (0..self.arrow_count())
                .filter(|&a| self.object_labels[self.arrows[a].dom] == d && self.object_labels[self.arrows[a].cod] == c)
                .collect();
            return match candidates.as_slice() {
                [a] => Ok(*a),
                [] => Err(Error::Parse(format!("no arrow `{token}`"))),
                _ => Err(Error::Parse(format!("`{token}` is ambiguous; use an arrow label"))),
            };
        }
        Err(Error::Parse(format!("unknown arrow `{token}`")))
    }

    pub fn format_element(&self, s: &LocalBisection) -> String {
        let parts: Vec<String> = s.0.iter().map(|&a| self.arrow_name(a)).collect();
        format!("{{{}}}", parts.join(", "))
    }

    /// Per-object invariants used to prune isomorphism search:
    /// (orbit size, isotropy group order).
    pub fn object_signature(&self, x: ObjectId) -> (usize, usize) {
        let orbit = self.arrows.iter().filter(|a| a.dom == x).count();
        let iso = self.arrows.iter().filter(|a| a.dom == x && a.cod == x).count();
        (orbit / iso, iso)
    }

    pub fn hom_set(&self, dom: ObjectId, cod: ObjectId) -> Vec<ArrowId> {
        (0..self.arrow_count())
            .filter(|&a| self.arrows[a].dom == dom && self.arrows[a].cod == cod)
            .collect()
    }
}

#[derive(Deserialize)]
struct GroupoidJson {
    objects: Vec<Value>,
    arrows: Vec<ArrowJson>,
    compose: Vec<[Value; 3]>,
    inverse: Vec<[Value; 2]>,
}

#[derive(Deserialize)]
struct ArrowJson {
    id: Value,
    dom: Value,
    cod: Value,
}

fn label_of(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Splits `a,b` at the single comma that is not nested in brackets.
pub(crate) fn split_top_level_comma(s: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => depth -= 1,
            ',' if depth == 0 => return Some((s[..i].trim(), s[i + 1..].trim())),
            _ => {}
        }
    }
    None
}

/// Isomorphism between two groupoids as object and arrow maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupoidIso {
    pub objects: Vec<ObjectId>,
    pub arrows: Vec<ArrowId>,
}

/// Backtracking isomorphism search. Objects are matched first, pruned by
/// orbit size and isotropy order; arrows are then matched hom-set by
/// hom-set with composition checked as soon as both factors are assigned.
pub fn find_isomorphism(g: &FiniteGroupoid, h: &FiniteGroupoid) -> Option<GroupoidIso> {
    if g.object_count() != h.object_count() || g.arrow_count() != h.arrow_count() {
        return None;
    }
    let sig_g: Vec<_> = (0..g.object_count()).map(|x| g.object_signature(x)).collect();
    let sig_h: Vec<_> = (0..h.object_count()).map(|x| h.object_signature(x)).collect();
    let mut count: BTreeMap<(usize, usize), i64> = BTreeMap::new();
    for s in &sig_g {
        *count.entry(*s).or_default() += 1;
    }
    for s in &sig_h {
        *count.entry(*s).or_default() -= 1;
    }
    if count.values().any(|&c| c != 0) {
        return None;
    }
    let mut obj_map = vec![usize::MAX; g.object_count()];
    let mut used = vec![false; h.object_count()];
    search_objects(g, h, &sig_g, &sig_h, 0, &mut obj_map, &mut used)
}

fn search_objects(
    g: &FiniteGroupoid,
    h: &FiniteGroupoid,
    sig_g: &[(usize, usize)],
    sig_h: &[(usize, usize)],
    x: ObjectId,
    obj_map: &mut Vec<ObjectId>,
    used: &mut Vec<bool>,
) -> Option<GroupoidIso> {
    if x == g.object_count() {
        return search_arrows(g, h, obj_map);
    }
    for y in 0..h.object_count() {
        if used[y] || sig_g[x] != sig_h[y] {
            continue;
        }
        // objects in a common orbit must land in a common orbit
        let consistent = (0..x).all(|z| g.hom_set(z, x).is_empty() == h.hom_set(obj_map[z], y).is_empty());
        if !consistent {
            continue;
        }
        obj_map[x] = y;
        used[y] = true;
        if let Some(iso) = search_objects(g, h, sig_g, sig_h, x + 1, obj_map, used) {
            return Some(iso);
        }
        used[y] = false;
    }
    obj_map[x] = usize::MAX;
    None
}

fn search_arrows(g: &FiniteGroupoid, h: &FiniteGroupoid, obj_map: &[ObjectId]) -> Option<GroupoidIso> {
    let n = g.arrow_count();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let order: Vec<ArrowId> = (0..n).collect();
    if assign_arrow(g, h, obj_map, &order, 0, &mut map, &mut used) {
        Some(GroupoidIso {
            objects: obj_map.to_vec(),
            arrows: map,
        })
    } else {
        None
    }
}

fn assign_arrow(
    g: &FiniteGroupoid,
    h: &FiniteGroupoid,
    obj_map: &[ObjectId],
    order: &[ArrowId],
    pos: usize,
    map: &mut Vec<ArrowId>,
    used: &mut Vec<bool>,
) -> bool {
    if pos == order.len() {
        return true;
    }
    let a = order[pos];
    if map[a] != usize::MAX {
        return assign_arrow(g, h, obj_map, order, pos + 1, map, used);
    }
    let Arrow { dom, cod } = g.arrow(a);
    for b in h.hom_set(obj_map[dom], obj_map[cod]) {
        if used[b] {
            continue;
        }
        let mut trail = vec![(a, b)];
        map[a] = b;
        used[b] = true;
        if propagate(g, h, map, used, &mut trail) && assign_arrow(g, h, obj_map, order, pos + 1, map, used) {
            return true;
        }
        for (x, y) in trail {
            map[x] = usize::MAX;
            used[y] = false;
        }
    }
    false
}

/// Forces images of composites and inverses of assigned arrows; returns
/// false on a contradiction.
fn propagate(
    g: &FiniteGroupoid,
    h: &FiniteGroupoid,
    map: &mut [ArrowId],
    used: &mut [bool],
    trail: &mut Vec<(ArrowId, ArrowId)>,
) -> bool {
    loop {
        let mut changed = false;
        let n = g.arrow_count();
        for a in 0..n {
            if map[a] == usize::MAX {
                continue;
            }
            let ia = g.inverse(a);
            let want = h.inverse(map[a]);
            if !force(map, used, trail, ia, want) {
                return false;
            }
            for b in 0..n {
                if map[b] == usize::MAX {
                    continue;
                }
                if let Some(c) = g.compose(a, b) {
                    let Some(hc) = h.compose(map[a], map[b]) else {
                        return false;
                    };
                    if map[c] == usize::MAX {
                        changed = true;
                    }
                    if !force(map, used, trail, c, hc) {
                        return false;
                    }
                }
            }
        }
        if !changed {
            return true;
        }
    }
}

fn force(map: &mut [ArrowId], used: &mut [bool], trail: &mut Vec<(ArrowId, ArrowId)>, a: ArrowId, b: ArrowId) -> bool {
    if map[a] == b {
        return true;
    }
    if map[a] != usize::MAX || used[b] {
        return false;
    }
    map[a] = b;
    used[b] = true;
    trail.push((a, b));
    true
}

/// Checks that an object/arrow map is an isomorphism of groupoids.
pub fn verify_isomorphism(g: &FiniteGroupoid, h: &FiniteGroupoid, iso: &GroupoidIso) -> bool {
    let bijective = |v: &[usize], n: usize| {
        let mut seen = vec![false; n];
        v.len() == n && v.iter().all(|&x| x < n && !std::mem::replace(&mut seen[x], true))
    };
    if !bijective(&iso.objects, h.object_count()) || !bijective(&iso.arrows, h.arrow_count()) {
        return false;
    }
    let endpoints = (0..g.arrow_count()).all(|a| {
        let ga = g.arrow(a);
        let ha = h.arrow(iso.arrows[a]);
        ha.dom == iso.objects[ga.dom] && ha.cod == iso.objects[ga.cod]
    });
    endpoints
        && g.compositions()
            .all(|(a, b, c)| h.compose(iso.arrows[a], iso.arrows[b]) == Some(iso.arrows[c]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_two_counts() {
        let g = FiniteGroupoid::pair(2).unwrap();
        assert_eq!(g.object_count(), 2);
        assert_eq!(g.arrow_count(), 4);
        assert_eq!(g.identities().len(), 2);
    }

    #[test]
    fn group_z2_counts() {
        let g = FiniteGroupoid::from_spec("group:Z2").unwrap();
        assert_eq!(g.object_count(), 1);
        assert_eq!(g.arrow_count(), 2);
    }

    #[test]
    fn disjoint_union_counts() {
        let g = FiniteGroupoid::from_spec("disjoint_union(pair:2, pair:3)").unwrap();
        assert_eq!(g.object_count(), 5);
        assert_eq!(g.arrow_count(), 4 + 9);
        assert_eq!(g.orbits().len(), 2);
    }

    #[test]
    fn products_in_pair_two() {
        let g = FiniteGroupoid::pair(2).unwrap();
        let p = |s: &str| g.parse_element(s).unwrap();
        assert_eq!(g.bisection_product(&p("{1->2}"), &p("{2->1}")), p("{2->2}"));
        assert!(g.bisection_product(&p("{1->2}"), &p("{1->2}")).is_empty());
        let swap = p("{1->2, 2->1}");
        assert_eq!(g.bisection_product(&swap, &swap), p("{1->1, 2->2}"));
    }

    #[test]
    fn properties_of_small_groupoids() {
        let p3 = FiniteGroupoid::pair(3).unwrap().properties();
        assert!(p3.principal && p3.effective && p3.minimal);
        assert_eq!(p3.orbits.len(), 1);

        let z2 = FiniteGroupoid::from_spec("group:Z2").unwrap().properties();
        assert!(!z2.principal && !z2.effective && z2.minimal);

        let u = FiniteGroupoid::from_spec("disjoint_union(pair:2,pair:2)")
            .unwrap()
            .properties();
        assert!(!u.minimal);
        assert_eq!(u.orbits.len(), 2);
    }

    #[test]
    fn rejects_non_associative_table() {
        // a "group" whose table is a Latin square with identity but not associative
        let table = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let labels = (0..5).map(|i| i.to_string()).collect();
        let err = FiniteGroupoid::group(labels, &table).unwrap_err();
        assert!(
            matches!(err, Error::InvalidGroupoid(ref m) if m.contains("associativity")),
            "{err}"
        );
    }

    #[test]
    fn rejects_broken_inverse() {
        let err = FiniteGroupoid::new(
            vec!["x".into(), "y".into()],
            vec![("ix".into(), 0, 0), ("iy".into(), 1, 1), ("f".into(), 0, 1)],
            &[(0, 0, 0), (1, 1, 1), (2, 0, 2), (1, 2, 2)],
            &[(0, 0), (1, 1)],
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidGroupoid(ref m) if m.contains("no inverse")));
    }

    #[test]
    fn json_round_trip() {
        let g = FiniteGroupoid::from_spec("disjoint_union(group:Z2, pair:2)").unwrap();
        let text = g.to_json().to_string();
        let back = FiniteGroupoid::from_json(&text).unwrap();
        assert_eq!(g, back);
    }

    #[test]
    fn local_bisection_counts() {
        let counts: Vec<usize> = (1..=4)
            .map(|n| FiniteGroupoid::pair(n).unwrap().local_bisections().len())
            .collect();
        assert_eq!(counts, vec![2, 7, 34, 209]);
        let z2 = FiniteGroupoid::from_spec("group:Z2").unwrap();
        assert_eq!(z2.local_bisections().len(), 3);
    }

    #[test]
    fn rejects_shared_endpoint() {
        let g = FiniteGroupoid::pair(3).unwrap();
        assert!(g.parse_element("{1->2, 1->3}").is_err());
        assert!(g.parse_element("{1->3, 2->3}").is_err());
    }

    #[test]
    fn dot_has_edges_for_non_identities() {
        let dot = FiniteGroupoid::pair(2).unwrap().to_dot("pair2");
        assert_eq!(dot.lines().filter(|l| l.contains(" -> ")).count(), 2, "{dot}");
    }

    #[test]
    fn isomorphism_search() {
        let a = FiniteGroupoid::from_spec("disjoint_union(pair:2, group:Z3)").unwrap();
        let b = FiniteGroupoid::from_spec("disjoint_union(group:Z3, pair:2)").unwrap();
        let iso = find_isomorphism(&a, &b).expect("isomorphic");
        assert!(verify_isomorphism(&a, &b, &iso));
        let c = FiniteGroupoid::from_spec("disjoint_union(pair:2, group:V4)").unwrap();
        let d = FiniteGroupoid::from_spec("disjoint_union(pair:2, group:Z4)").unwrap();
        assert!(find_isomorphism(&c, &d).is_none());
    }
}
