//! Definitions recomputed straight from the Cayley table by set products.
//! Nothing here calls the structure code under test.

use std::collections::BTreeSet;

use crate::semigroup::FiniteSemigroup;

pub type Set = BTreeSet<usize>;

fn all(s: &FiniteSemigroup) -> std::ops::Range<usize> {
    0..s.size()
}

/// `S¹a`.
pub fn left_ideal(s: &FiniteSemigroup, a: usize) -> Set {
    let mut out: Set = all(s).map(|x| s.mul(x, a)).collect();
    out.insert(a);
    out
}

/// `aS¹`.
pub fn right_ideal(s: &FiniteSemigroup, a: usize) -> Set {
    let mut out: Set = all(s).map(|x| s.mul(a, x)).collect();
    out.insert(a);
    out
}

/// `S¹aS¹`.
pub fn two_sided_ideal(s: &FiniteSemigroup, a: usize) -> Set {
    let right = right_ideal(s, a);
    let mut out = right.clone();
    for x in all(s) {
        for &y in &right {
            out.insert(s.mul(x, y));
        }
    }
    out
}

pub fn idempotents(s: &FiniteSemigroup) -> Set {
    all(s).filter(|&e| s.mul(e, e) == e).collect()
}

/// The smallest principal two-sided ideal, checked to lie inside every
/// other one. `None` if no such ideal exists (impossible when finite).
pub fn kernel(s: &FiniteSemigroup) -> Option<Set> {
    let ideals: Vec<Set> = all(s).map(|a| two_sided_ideal(s, a)).collect();
    let smallest = ideals.iter().min_by_key(|i| i.len())?.clone();
    ideals
        .iter()
        .all(|i| smallest.is_subset(i))
        .then_some(smallest)
}

/// Principal left ideals containing no smaller principal left ideal.
pub fn minimal_left_ideals(s: &FiniteSemigroup) -> BTreeSet<Set> {
    let ideals: BTreeSet<Set> = all(s).map(|a| left_ideal(s, a)).collect();
    ideals
        .iter()
        .filter(|l| !ideals.iter().any(|m| m.len() < l.len() && m.is_subset(l)))
        .cloned()
        .collect()
}

pub fn h_classes(s: &FiniteSemigroup) -> BTreeSet<Set> {
    let left: Vec<Set> = all(s).map(|a| left_ideal(s, a)).collect();
    let right: Vec<Set> = all(s).map(|a| right_ideal(s, a)).collect();
    all(s)
        .map(|a| {
            all(s)
                .filter(|&b| left[a] == left[b] && right[a] == right[b])
                .collect()
        })
        .collect()
}

/// `∃x: axa = a ∧ ax = xa`.
pub fn is_completely_regular(s: &FiniteSemigroup, a: usize) -> bool {
    all(s).any(|x| s.mul(s.mul(a, x), a) == a && s.mul(a, x) == s.mul(x, a))
}

/// Every element equals `S¹aS¹`-wise every other one.
pub fn is_simple(s: &FiniteSemigroup) -> bool {
    all(s).all(|a| two_sided_ideal(s, a).len() == s.size())
}

/// `Sa = S` for every `a` in the subset `t`, products taken inside `t`.
pub fn is_left_simple_subset(s: &FiniteSemigroup, t: &Set) -> bool {
    t.iter()
        .all(|&a| &t.iter().map(|&x| s.mul(x, a)).collect::<Set>() == t)
}

pub fn is_closed(s: &FiniteSemigroup, t: &Set) -> bool {
    t.iter()
        .all(|&a| t.iter().all(|&b| t.contains(&s.mul(a, b))))
}

/// `map[x]` in `b` for each `x` in `a`: bijective and multiplicative.
pub fn is_isomorphism(a: &FiniteSemigroup, b: &FiniteSemigroup, map: &[usize]) -> bool {
    a.size() == b.size()
        && map.len() == a.size()
        && map.iter().copied().collect::<Set>().len() == a.size()
        && map.iter().all(|&y| y < b.size())
        && all(a).all(|x| all(a).all(|y| map[a.mul(x, y)] == b.mul(map[x], map[y])))
}

/// Powers `f, f², …` of a map given by its image vector.
pub fn cyclic_powers(f: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![f.to_vec()];
    loop {
        let last = out.last().expect("non-empty");
        let next: Vec<usize> = last.iter().map(|&x| f[x]).collect();
        if out.contains(&next) {
            return out;
        }
        out.push(next);
    }
}

/// `(f∘g)(x) = f(g(x))`.
pub fn compose(f: &[usize], g: &[usize]) -> Vec<usize> {
    g.iter().map(|&x| f[x]).collect()
}
