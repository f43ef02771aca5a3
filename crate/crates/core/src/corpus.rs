//! Named finite monoids and groupoids used by the verification suites.

use crate::checkers::monoid_from_group;
use crate::error::Result;
use crate::finite::FinBim;
use crate::groupoid::FiniteGroupoid;
use crate::perm::Permutation;

#[derive(Debug, Clone)]
pub struct NamedMonoid {
    pub name: String,
    pub monoid: FinBim,
}

/// Generators of the six subgroups of `S_3`.
pub const S3_SUBGROUPS: [&[&str]; 6] = [
    &[],
    &["(1 2)"],
    &["(1 3)"],
    &["(2 3)"],
    &["(1 2 3)"],
    &["(1 2)", "(1 2 3)"],
];

pub fn s3_subgroup_generators(i: usize) -> Result<Vec<Permutation>> {
    S3_SUBGROUPS[i].iter().map(|g| Permutation::parse(g, 3)).collect()
}

pub fn mirror_groupoids() -> Result<Vec<(String, FiniteGroupoid)>> {
    [
        "pair:1",
        "pair:2",
        "pair:3",
        "pair:4",
        "group:Z2",
        "group:Z3",
        "group:S3",
        "group:V4",
        "disjoint_union(pair:2,pair:2)",
        "disjoint_union(pair:2,pair:3)",
        "disjoint_union(pair:1,group:Z2)",
    ]
    .iter()
    .map(|spec| Ok((spec.to_string(), FiniteGroupoid::from_spec(spec)?)))
    .collect()
}

/// Every finite monoid the suites quantify over: the symmetric inverse
/// monoids, Boolean inverse monoids of small groupoids, and the monoids
/// built from the subgroups of `S_3`.
pub fn finite_monoids() -> Result<Vec<NamedMonoid>> {
    let mut out = Vec::new();
    for spec in [
        "pair:1",
        "pair:2",
        "pair:3",
        "pair:4",
        "group:Z2",
        "group:Z3",
        "group:S3",
        "disjoint_union(pair:2,pair:2)",
        "disjoint_union(pair:2,pair:3)",
        "disjoint_union(pair:1,group:Z2)",
    ] {
        out.push(NamedMonoid {
            name: format!("kb({spec})"),
            monoid: FinBim::kb(FiniteGroupoid::from_spec(spec)?),
        });
    }
    for (i, gens) in S3_SUBGROUPS.iter().enumerate() {
        out.push(NamedMonoid {
            name: format!("from_group(3, [{}])", gens.join(", ")),
            monoid: monoid_from_group(3, &s3_subgroup_generators(i)?)?,
        });
    }
    Ok(out)
}
