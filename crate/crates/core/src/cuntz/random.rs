//! Seeded generators of clopen sets, elements and units of `C_n`.

use rand::seq::SliceRandom;
use rand::Rng;

use super::clopen::ClopenSet;
use super::element::{CuntzElement, Rule};
use super::word::Word;
use super::CuntzMonoid;

/// A complete prefix code obtained from `{ε}` by `splits` leaf splits, each
/// at a leaf shorter than `max_depth`.
pub fn prefix_code<R: Rng>(rng: &mut R, n: usize, max_depth: usize, splits: usize) -> Vec<Word> {
    let mut leaves: Vec<Word> = vec![Vec::new()];
    for _ in 0..splits {
        let open: Vec<usize> = (0..leaves.len()).filter(|&i| leaves[i].len() < max_depth).collect();
        let Some(&i) = open.choose(rng) else { break };
        let w = leaves.swap_remove(i);
        leaves.extend((0..n as u8).map(|a| {
            let mut x = w.clone();
            x.push(a);
            x
        }));
    }
    leaves.sort();
    leaves
}

pub fn clopen<R: Rng>(rng: &mut R, n: usize, max_depth: usize) -> ClopenSet {
    let splits = rng.gen_range(0..=2 * max_depth);
    let code = prefix_code(rng, n, max_depth, splits);
    ClopenSet::from_words(code.into_iter().filter(|_| rng.gen_bool(0.5)), n)
}

pub fn nonzero_clopen<R: Rng>(rng: &mut R, n: usize, max_depth: usize) -> ClopenSet {
    loop {
        let e = clopen(rng, n, max_depth);
        if !e.is_empty() {
            return e;
        }
    }
}

/// A partial bijection between leaves of two random prefix codes. The
/// rules are not canonicalized.
pub fn raw_rules<R: Rng>(rng: &mut R, n: usize, max_depth: usize) -> Vec<Rule> {
    let (sa, sb) = (rng.gen_range(0..=2 * max_depth), rng.gen_range(0..=2 * max_depth));
    let a = prefix_code(rng, n, max_depth, sa);
    let mut b = prefix_code(rng, n, max_depth, sb);
    b.shuffle(rng);
    let k = rng.gen_range(0..=a.len().min(b.len()));
    let mut domain = a;
    domain.shuffle(rng);
    domain.into_iter().zip(b).take(k).collect()
}

pub fn element<R: Rng>(rng: &mut R, m: &CuntzMonoid, max_depth: usize) -> CuntzElement {
    m.canonicalize(raw_rules(rng, m.n(), max_depth))
        .expect("leaves of prefix codes are prefix-free")
}

pub fn nonzero_element<R: Rng>(rng: &mut R, m: &CuntzMonoid, max_depth: usize) -> CuntzElement {
    loop {
        let s = element(rng, m, max_depth);
        if !s.is_empty() {
            return s;
        }
    }
}

/// A bijection between two complete prefix codes of equal size.
pub fn unit<R: Rng>(rng: &mut R, m: &CuntzMonoid, max_depth: usize) -> CuntzElement {
    let n = m.n();
    loop {
        let splits = rng.gen_range(0..=max_depth);
        let a = prefix_code(rng, n, max_depth, splits);
        let mut b = prefix_code(rng, n, max_depth, splits);
        if a.len() != b.len() {
            continue;
        }
        b.shuffle(rng);
        return m
            .canonicalize(a.into_iter().zip(b).collect())
            .expect("complete prefix codes are prefix-free");
    }
}

/// Refines some rules of `s` into their sibling families, then shuffles:
/// a non-canonical rule list denoting the same map.
pub fn split_rules<R: Rng>(rng: &mut R, s: &CuntzElement, n: usize, max_depth: usize) -> Vec<Rule> {
    let mut rules: Vec<Rule> = s.rules().to_vec();
    for _ in 0..rng.gen_range(0..=3) {
        let open: Vec<usize> = (0..rules.len())
            .filter(|&i| rules[i].0.len().max(rules[i].1.len()) < max_depth)
            .collect();
        let Some(&i) = open.choose(rng) else { break };
        let (u, v) = rules.swap_remove(i);
        rules.extend((0..n as u8).map(|a| {
            let (mut x, mut y) = (u.clone(), v.clone());
            x.push(a);
            y.push(a);
            (x, y)
        }));
    }
    rules.shuffle(rng);
    rules
}

/// Pairwise compatible elements: random subsets of a refinement of one
/// random element, so members may overlap.
pub fn compatible_family<R: Rng>(rng: &mut R, m: &CuntzMonoid, max_depth: usize) -> Vec<CuntzElement> {
    let s = element(rng, m, max_depth);
    let refined = split_rules(rng, &s, m.n(), max_depth + 1);
    let size = rng.gen_range(1..=4);
    (0..size)
        .map(|_| {
            let rules = refined.iter().filter(|_| rng.gen_bool(0.5)).cloned().collect();
            m.canonicalize(rules)
                .expect("sub-families of a partial bijection are prefix-free")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::BooleanInverseMonoid;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generators_respect_contracts() {
        let m = CuntzMonoid::new(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let code = prefix_code(&mut rng, 2, 6, 8);
            assert_eq!(ClopenSet::from_words(code.clone(), 2), ClopenSet::full());
            assert!(code.iter().all(|w| w.len() <= 6));
            let g = unit(&mut rng, &m, 6);
            assert!(m.is_unit(&g).unwrap());
            let fam = compatible_family(&mut rng, &m, 5);
            for a in &fam {
                for b in &fam {
                    assert!(m.compatible(a, b).unwrap());
                }
            }
            let s = element(&mut rng, &m, 5);
            assert_eq!(m.canonicalize(split_rules(&mut rng, &s, 2, 7)).unwrap(), s);
        }
    }
}
