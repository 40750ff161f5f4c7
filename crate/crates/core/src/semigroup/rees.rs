use std::collections::BTreeSet;

use serde::Serialize;

use super::{find_isomorphism, greens, structure_report, FiniteSemigroup, SemigroupError};

/// A Rees matrix semigroup `M[G; I, Λ; A]` with `|I| = i_count`,
/// `|Λ| = lambda_count` and `sandwich[λ][i]` an index into `group`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReesData {
    pub group: FiniteSemigroup,
    pub i_count: usize,
    pub lambda_count: usize,
    pub sandwich: Vec<Vec<usize>>,
    pub normalized: bool,
}

/// `(i, g, λ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ReesElement(pub usize, pub usize, pub usize);

impl ReesData {
    pub fn new(
        group: FiniteSemigroup,
        i_count: usize,
        lambda_count: usize,
        sandwich: Vec<Vec<usize>>,
    ) -> Result<Self, SemigroupError> {
        if i_count == 0 || lambda_count == 0 {
            return Err(SemigroupError::InvalidRees("empty index set".into()));
        }
        if group.unit().is_none() || !structure_report(&group).is_group {
            return Err(SemigroupError::InvalidRees(
                "structure group is not a group".into(),
            ));
        }
        if sandwich.len() != lambda_count || sandwich.iter().any(|row| row.len() != i_count) {
            return Err(SemigroupError::InvalidRees(format!(
                "sandwich matrix must be {lambda_count}x{i_count}"
            )));
        }
        if sandwich.iter().flatten().any(|&g| g >= group.size()) {
            return Err(SemigroupError::InvalidRees(
                "sandwich entry is not a group element".into(),
            ));
        }
        let mut d = Self {
            group,
            i_count,
            lambda_count,
            sandwich,
            normalized: false,
        };
        d.normalized = d.first_row_and_column_are_identity();
        Ok(d)
    }

    pub fn identity(&self) -> usize {
        self.group.unit().expect("validated group has a unit")
    }

    pub fn inverse(&self, g: usize) -> usize {
        let e = self.identity();
        self.group
            .elements()
            .find(|&h| self.group.mul(g, h) == e)
            .expect("group element has an inverse")
    }

    fn first_row_and_column_are_identity(&self) -> bool {
        let e = self.identity();
        self.sandwich[0].iter().all(|&g| g == e) && self.sandwich.iter().all(|row| row[0] == e)
    }

    pub fn size(&self) -> usize {
        self.i_count * self.group.size() * self.lambda_count
    }

    pub fn elements(&self) -> Vec<ReesElement> {
        let mut out = Vec::with_capacity(self.size());
        for i in 0..self.i_count {
            for g in self.group.elements() {
                for l in 0..self.lambda_count {
                    out.push(ReesElement(i, g, l));
                }
            }
        }
        out
    }

    pub fn index_of(&self, x: ReesElement) -> usize {
        let ReesElement(i, g, l) = x;
        (i * self.group.size() + g) * self.lambda_count + l
    }
}

pub fn rees_multiply(
    d: &ReesData,
    x: ReesElement,
    y: ReesElement,
) -> Result<ReesElement, SemigroupError> {
    for ReesElement(i, g, l) in [x, y] {
        if i >= d.i_count || l >= d.lambda_count || g >= d.group.size() {
            return Err(SemigroupError::InvalidRees(format!(
                "({i}, {g}, {l}) is out of range"
            )));
        }
    }
    let ReesElement(i, g, l) = x;
    let ReesElement(j, h, m) = y;
    let gm = d.group.mul(g, d.sandwich[l][j]);
    Ok(ReesElement(i, d.group.mul(gm, h), m))
}

/// The Cayley table of `M[G; I, Λ; A]`, elements in [`ReesData::elements`] order.
pub fn rees_semigroup(d: &ReesData) -> FiniteSemigroup {
    let elements = d.elements();
    let rows = elements
        .iter()
        .map(|&x| {
            elements
                .iter()
                .map(|&y| d.index_of(rees_multiply(d, x, y).expect("elements are in range")))
                .collect()
        })
        .collect();
    let labels = elements
        .iter()
        .map(|&ReesElement(i, g, l)| format!("({i},{},{l})", d.group.label(g)))
        .collect();
    let gens = (0..elements.len()).collect();
    FiniteSemigroup::from_table_unchecked(labels, rows, gens).expect("rees table is well formed")
}

#[derive(Clone, Debug)]
pub struct ReesDecomposition {
    pub data: ReesData,
    /// Indices in the source semigroup of the structure group `H_e`, in the
    /// element order of `data.group`.
    pub group_elements: Vec<usize>,
    /// `r_i ∈ R_i ∩ L_e` and `q_λ ∈ R_e ∩ L_λ`.
    pub r_reps: Vec<usize>,
    pub q_reps: Vec<usize>,
    /// Source index of each Rees element, in [`ReesData::elements`] order.
    pub isomorphism: Vec<usize>,
}

pub fn rees_decompose(s: &FiniteSemigroup) -> Result<ReesDecomposition, SemigroupError> {
    if !structure_report(s).is_completely_simple {
        return Err(SemigroupError::NotCompletelySimple);
    }
    let g = greens(s);
    let e = s
        .elements()
        .find(|&x| s.is_idempotent(x))
        .expect("completely simple has an idempotent");
    let h_e = g.h_classes[g.h_of[e]].clone();
    let group = s.subsemigroup(&h_e)?;
    let pos_in_group = |x: usize| h_e.iter().position(|&y| y == x);

    let r_reps: Vec<usize> = (0..g.r_classes.len())
        .map(|r| {
            if r == g.r_of[e] {
                e
            } else {
                *g.r_classes[r]
                    .iter()
                    .find(|&&x| g.l_of[x] == g.l_of[e])
                    .expect("R and L classes meet")
            }
        })
        .collect();
    let q_reps: Vec<usize> = (0..g.l_classes.len())
        .map(|l| {
            if l == g.l_of[e] {
                e
            } else {
                *g.l_classes[l]
                    .iter()
                    .find(|&&x| g.r_of[x] == g.r_of[e])
                    .expect("R and L classes meet")
            }
        })
        .collect();
    let sandwich = q_reps
        .iter()
        .map(|&q| {
            r_reps
                .iter()
                .map(|&r| {
                    pos_in_group(s.mul(q, r)).ok_or_else(|| {
                        SemigroupError::Inconsistent("sandwich entry outside H_e".into())
                    })
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    let data = ReesData::new(group, r_reps.len(), q_reps.len(), sandwich)?;

    let isomorphism: Vec<usize> = data
        .elements()
        .iter()
        .map(|&ReesElement(i, x, l)| s.mul(s.mul(r_reps[i], h_e[x]), q_reps[l]))
        .collect();
    check_isomorphism(&rees_semigroup(&data), s, &isomorphism)?;
    Ok(ReesDecomposition {
        data,
        group_elements: h_e,
        r_reps,
        q_reps,
        isomorphism,
    })
}

/// Verifies that `map` is a bijective homomorphism `a -> b`.
pub(crate) fn check_isomorphism(
    a: &FiniteSemigroup,
    b: &FiniteSemigroup,
    map: &[usize],
) -> Result<(), SemigroupError> {
    let distinct: BTreeSet<usize> = map.iter().copied().collect();
    if map.len() != a.size() || a.size() != b.size() || distinct.len() != a.size() {
        return Err(SemigroupError::Inconsistent(
            "map is not a bijection".into(),
        ));
    }
    for x in a.elements() {
        for y in a.elements() {
            if map[a.mul(x, y)] != b.mul(map[x], map[y]) {
                return Err(SemigroupError::Inconsistent(format!(
                    "map is not multiplicative at ({x}, {y})"
                )));
            }
        }
    }
    Ok(())
}

/// Rescales the sandwich matrix so that its first row and first column are
/// the group identity.
pub fn rees_normalize(d: &ReesData) -> Result<ReesData, SemigroupError> {
    let grp = &d.group;
    let a = &d.sandwich;
    let u: Vec<usize> = (0..d.i_count).map(|j| a[0][j]).collect();
    let base = d.inverse(a[0][0]);
    let v: Vec<usize> = (0..d.lambda_count)
        .map(|l| grp.mul(a[l][0], base))
        .collect();
    let sandwich: Vec<Vec<usize>> = (0..d.lambda_count)
        .map(|l| {
            (0..d.i_count)
                .map(|j| grp.mul(grp.mul(d.inverse(v[l]), a[l][j]), d.inverse(u[j])))
                .collect()
        })
        .collect();
    let out = ReesData::new(grp.clone(), d.i_count, d.lambda_count, sandwich)?;
    if !out.normalized {
        return Err(SemigroupError::Inconsistent(
            "normalization left a non-identity entry".into(),
        ));
    }
    // (i, g, λ) ↦ (i, u_i g v_λ, λ)
    let map: Vec<usize> = d
        .elements()
        .iter()
        .map(|&ReesElement(i, g, l)| {
            out.index_of(ReesElement(i, grp.mul(grp.mul(u[i], g), v[l]), l))
        })
        .collect();
    check_isomorphism(&rees_semigroup(d), &rees_semigroup(&out), &map)?;
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Dichotomy {
    LeftSimple,
    TwoMinimalLeftIdeals,
}

/// For a completely simple `S = S1 ∪ S2` with `S1`, `S2` left simple
/// subsemigroups: either `S` is left simple, or `S1` and `S2` are disjoint
/// and are exactly the minimal left ideals of `S`.
pub fn left_simple_dichotomy(
    s: &FiniteSemigroup,
    s1: &[usize],
    s2: &[usize],
) -> Result<Dichotomy, SemigroupError> {
    let report = structure_report(s);
    if !report.is_completely_simple {
        return Err(SemigroupError::Precondition(
            "S is not completely simple".into(),
        ));
    }
    for (name, part) in [("S1", s1), ("S2", s2)] {
        for &x in part {
            s.check_element(x)?;
        }
        if part.is_empty() || !s.is_closed(part) {
            return Err(SemigroupError::Precondition(format!(
                "{name} is not a subsemigroup"
            )));
        }
        if !structure_report(&s.subsemigroup(part)?).is_left_simple {
            return Err(SemigroupError::Precondition(format!(
                "{name} is not left simple"
            )));
        }
    }
    let a: BTreeSet<usize> = s1.iter().copied().collect();
    let b: BTreeSet<usize> = s2.iter().copied().collect();
    if a.union(&b).count() != s.size() {
        return Err(SemigroupError::Precondition("S1 ∪ S2 ≠ S".into()));
    }

    let left_simple = report.is_left_simple;
    let minimal: BTreeSet<Vec<usize>> = report.minimal_left_ideals.iter().cloned().collect();
    let parts: BTreeSet<Vec<usize>> = [a.iter().copied().collect(), b.iter().copied().collect()]
        .into_iter()
        .collect();
    let two_branch = report.minimal_left_ideals.len() == 2 && a.is_disjoint(&b) && minimal == parts;
    match (left_simple, two_branch) {
        (true, false) => Ok(Dichotomy::LeftSimple),
        (false, true) => Ok(Dichotomy::TwoMinimalLeftIdeals),
        _ => Err(SemigroupError::Inconsistent(format!(
            "dichotomy violated: left simple = {left_simple}, two-ideal branch = {two_branch}"
        ))),
    }
}

/// Checks a decomposition against an independent isomorphism search.
pub fn rees_round_trip_by_search(d: &ReesData) -> bool {
    let m = rees_semigroup(d);
    match rees_decompose(&m) {
        Ok(dec) => find_isomorphism(&rees_semigroup(&dec.data), &m).is_some(),
        Err(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::Transformation;

    fn t(v: &[usize]) -> Transformation {
        Transformation::new(v.to_vec()).unwrap()
    }

    fn cyclic(n: usize) -> FiniteSemigroup {
        let images: Vec<usize> = (0..n).map(|x| (x + 1) % n).collect();
        let mut g = FiniteSemigroup::closure(&[t(&images)]).unwrap();
        // relabel so that index k is the rotation by k+1; identity is last
        let labels = g.elements().map(|k| ((k + 1) % n).to_string()).collect();
        g.set_labels(labels);
        g
    }

    fn z2() -> FiniteSemigroup {
        let rows = vec![vec![0, 1], vec![1, 0]];
        FiniteSemigroup::from_table(vec!["0".into(), "1".into()], rows, vec![1]).unwrap()
    }

    #[test]
    fn trivial_group_products() {
        let d = ReesData::new(cyclic(1), 2, 2, vec![vec![0, 0], vec![0, 0]]).unwrap();
        assert_eq!(
            rees_multiply(&d, ReesElement(1, 0, 0), ReesElement(0, 0, 1)).unwrap(),
            ReesElement(1, 0, 1)
        );
        assert!(rees_multiply(&d, ReesElement(2, 0, 0), ReesElement(0, 0, 0)).is_err());
    }

    #[test]
    fn z2_sandwich_arithmetic() {
        let d = ReesData::new(z2(), 2, 2, vec![vec![1, 1], vec![1, 0]]).unwrap();
        assert!(!d.normalized);
        assert_eq!(
            rees_multiply(&d, ReesElement(0, 1, 0), ReesElement(1, 1, 1)).unwrap(),
            ReesElement(0, 1, 1)
        );
        assert!(rees_semigroup(&d).check_associative().is_ok());
    }

    #[test]
    fn normalize_z2_example() {
        let d = ReesData::new(z2(), 2, 2, vec![vec![1, 1], vec![1, 0]]).unwrap();
        let n = rees_normalize(&d).unwrap();
        assert!(n.normalized);
        assert_eq!(n.sandwich, vec![vec![0, 0], vec![0, 1]]);
        assert!(find_isomorphism(&rees_semigroup(&d), &rees_semigroup(&n)).is_some());
        assert_eq!(rees_normalize(&n).unwrap().sandwich, n.sandwich);
    }

    #[test]
    fn decompose_left_zero() {
        let s = FiniteSemigroup::closure(&[t(&[0, 0, 0]), t(&[1, 1, 1]), t(&[2, 2, 2])]).unwrap();
        let dec = rees_decompose(&s).unwrap();
        assert_eq!(dec.data.group.size(), 1);
        assert_eq!((dec.data.i_count, dec.data.lambda_count), (3, 1));
    }

    #[test]
    fn decompose_group() {
        let s = cyclic(4);
        let dec = rees_decompose(&s).unwrap();
        assert_eq!((dec.data.i_count, dec.data.lambda_count), (1, 1));
        assert_eq!(dec.data.sandwich, vec![vec![dec.data.identity()]]);
    }

    #[test]
    fn decompose_rejects_fiber() {
        let s = FiniteSemigroup::closure(&[t(&[0, 0, 1]), t(&[0, 1, 2])]).unwrap();
        assert!(matches!(
            rees_decompose(&s),
            Err(SemigroupError::NotCompletelySimple)
        ));
    }

    #[test]
    fn round_trip_with_nontrivial_sandwich() {
        let g = cyclic(3);
        let d = ReesData::new(g, 2, 3, vec![vec![0, 1], vec![2, 0], vec![1, 1]]).unwrap();
        assert!(rees_round_trip_by_search(&d));
    }

    #[test]
    fn dichotomy_examples() {
        let lz = FiniteSemigroup::closure(&[t(&[0, 0]), t(&[1, 1])]).unwrap();
        assert_eq!(
            left_simple_dichotomy(&lz, &[0], &[1]).unwrap(),
            Dichotomy::LeftSimple
        );
        let rz = FiniteSemigroup::from_table(
            vec!["x".into(), "y".into()],
            vec![vec![0, 1], vec![0, 1]],
            vec![0, 1],
        )
        .unwrap();
        assert_eq!(
            left_simple_dichotomy(&rz, &[0], &[1]).unwrap(),
            Dichotomy::TwoMinimalLeftIdeals
        );
        let g = cyclic(3);
        let all: Vec<usize> = g.elements().collect();
        assert_eq!(
            left_simple_dichotomy(&g, &all, &all).unwrap(),
            Dichotomy::LeftSimple
        );
        assert!(matches!(
            left_simple_dichotomy(&rz, &[0], &[0]),
            Err(SemigroupError::Precondition(_))
        ));
    }
}
