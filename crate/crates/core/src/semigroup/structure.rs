use std::collections::BTreeSet;

use serde::Serialize;

use super::{greens, FiniteSemigroup};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdempotentPoset {
    pub idempotents: Vec<usize>,
    /// Pairs `(p, q)` with `p ≤ q`, i.e. `p = pq = qp`. Reflexive pairs included.
    pub leq: Vec<(usize, usize)>,
    pub minimal: Vec<usize>,
}

pub fn idempotent_poset(s: &FiniteSemigroup) -> IdempotentPoset {
    let idempotents: Vec<usize> = s.elements().filter(|&p| s.is_idempotent(p)).collect();
    let mut leq = Vec::new();
    for &p in &idempotents {
        for &q in &idempotents {
            if s.mul(p, q) == p && s.mul(q, p) == p {
                leq.push((p, q));
            }
        }
    }
    let minimal = idempotents
        .iter()
        .copied()
        .filter(|&q| !leq.iter().any(|&(p, r)| r == q && p != q))
        .collect();
    IdempotentPoset {
        idempotents,
        leq,
        minimal,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KernelInfo {
    pub kernel: Vec<usize>,
    pub minimal_left_ideals: Vec<Vec<usize>>,
    pub minimal_right_ideals: Vec<Vec<usize>>,
}

/// The minimal two-sided ideal together with the minimal one-sided ideals.
///
/// Panics if the finite structure theorems fail to hold for the computed
/// table, which can only happen for a non-associative table.
pub fn kernel(s: &FiniteSemigroup) -> KernelInfo {
    let z = s.elements().skip(1).fold(0, |acc, x| s.mul(acc, x));
    let mut inside = vec![false; s.size()];
    inside[z] = true;
    for x in s.elements() {
        let xz = s.mul(x, z);
        inside[xz] = true;
        inside[s.mul(z, x)] = true;
        for y in s.elements() {
            inside[s.mul(xz, y)] = true;
        }
    }
    let kernel: Vec<usize> = s.elements().filter(|&a| inside[a]).collect();

    let mut lefts: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut rights: BTreeSet<Vec<usize>> = BTreeSet::new();
    for &a in &kernel {
        let mut l: Vec<usize> = s.elements().map(|x| s.mul(x, a)).collect();
        l.push(a);
        l.sort_unstable();
        l.dedup();
        lefts.insert(l);
        let mut r: Vec<usize> = s.elements().map(|x| s.mul(a, x)).collect();
        r.push(a);
        r.sort_unstable();
        r.dedup();
        rights.insert(r);
    }
    let info = KernelInfo {
        kernel,
        minimal_left_ideals: lefts.into_iter().collect(),
        minimal_right_ideals: rights.into_iter().collect(),
    };
    for ideals in [&info.minimal_left_ideals, &info.minimal_right_ideals] {
        let total: usize = ideals.iter().map(Vec::len).sum();
        let union: BTreeSet<usize> = ideals.iter().flatten().copied().collect();
        assert_eq!(total, info.kernel.len(), "minimal ideals overlap");
        assert!(
            union.iter().eq(info.kernel.iter()),
            "minimal ideals do not cover the kernel"
        );
        assert!(
            ideals.iter().all(|i| i.iter().any(|&e| s.is_idempotent(e))),
            "minimal ideal without idempotent"
        );
    }
    info
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegularityCheck {
    pub completely_regular: bool,
    /// Some `x` with `a = axa` and `ax = xa`.
    pub witness: Option<usize>,
    /// Restriction of the transformation to its image is bijective.
    pub bijective_on_image: Option<bool>,
    /// `im a = im a²`.
    pub image_stable: Option<bool>,
}

pub fn is_completely_regular_element(s: &FiniteSemigroup, a: usize) -> RegularityCheck {
    let witness = s
        .elements()
        .find(|&x| s.mul(a, x) == s.mul(x, a) && s.mul(s.mul(a, x), a) == a);
    let t = s.transformation(a);
    let check = RegularityCheck {
        completely_regular: witness.is_some(),
        witness,
        bijective_on_image: t.map(|t| t.is_bijective_on_image()),
        image_stable: t.map(|t| t.image_is_stable()),
    };
    if let (Some(b), Some(i)) = (check.bijective_on_image, check.image_stable) {
        assert_eq!(
            b, check.completely_regular,
            "image bijectivity disagrees with witness search"
        );
        assert_eq!(
            i, check.completely_regular,
            "image stability disagrees with witness search"
        );
    }
    check
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct NormalInverse {
    pub inverse: usize,
    /// `a⁰ = a·a⁻¹`.
    pub zero: usize,
}

pub fn normal_inverse(s: &FiniteSemigroup, a: usize) -> Option<NormalInverse> {
    let found = s.elements().find(|&x| {
        let ax = s.mul(a, x);
        ax == s.mul(x, a) && s.mul(ax, a) == a && s.mul(s.mul(x, a), x) == x
    })?;
    if let Some(t) = s.transformation(a) {
        let g = t
            .normal_inverse()
            .expect("completely regular transformation is bijective on its image");
        assert_eq!(
            s.index_of(&g),
            Some(found),
            "normal inverse formula disagrees with search"
        );
    }
    Some(NormalInverse {
        inverse: found,
        zero: s.mul(a, found),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub size: usize,
    pub is_group: bool,
    pub is_left_simple: bool,
    pub is_right_simple: bool,
    pub is_simple: bool,
    pub is_completely_simple: bool,
    pub is_completely_regular: bool,
    /// `None` when the semigroup has no unit.
    pub is_nearly_simple: Option<bool>,
    pub kernel: Vec<usize>,
    pub minimal_left_ideals: Vec<Vec<usize>>,
    pub minimal_right_ideals: Vec<Vec<usize>>,
    /// `None` when the semigroup has no unit.
    pub units: Option<Vec<usize>>,
    pub idempotents: Vec<usize>,
    pub non_completely_regular: Vec<usize>,
}

pub fn structure_report(s: &FiniteSemigroup) -> StructureReport {
    let k = kernel(s);
    let n = s.size();
    let is_left_simple = k.minimal_left_ideals.len() == 1 && k.minimal_left_ideals[0].len() == n;
    let is_right_simple = k.minimal_right_ideals.len() == 1 && k.minimal_right_ideals[0].len() == n;
    let is_simple = k.kernel.len() == n;
    let poset = idempotent_poset(s);
    let is_completely_simple = is_simple && !poset.minimal.is_empty();

    let non_completely_regular: Vec<usize> = s
        .elements()
        .filter(|&a| !is_completely_regular_element(s, a).completely_regular)
        .collect();
    let is_completely_regular = non_completely_regular.is_empty();
    let g = greens(s);
    let all_groups = (0..g.h_classes.len()).all(|h| g.is_group(s, h));
    assert_eq!(
        all_groups, is_completely_regular,
        "union-of-groups test disagrees"
    );

    let units = s.unit().map(|u| {
        s.elements()
            .filter(|&a| s.elements().any(|b| s.mul(a, b) == u && s.mul(b, a) == u))
            .collect::<Vec<_>>()
    });
    let is_nearly_simple = units.as_ref().map(|units| {
        let in_kernel: BTreeSet<usize> = k.kernel.iter().copied().collect();
        s.elements()
            .all(|a| units.contains(&a) || in_kernel.contains(&a))
    });

    StructureReport {
        size: n,
        is_group: is_left_simple && is_right_simple,
        is_left_simple,
        is_right_simple,
        is_simple,
        is_completely_simple,
        is_completely_regular,
        is_nearly_simple,
        kernel: k.kernel,
        minimal_left_ideals: k.minimal_left_ideals,
        minimal_right_ideals: k.minimal_right_ideals,
        units,
        idempotents: poset.idempotents,
        non_completely_regular,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::Transformation;

    fn t(v: &[usize]) -> Transformation {
        Transformation::new(v.to_vec()).unwrap()
    }

    fn fiber() -> FiniteSemigroup {
        let gens = [
            t(&[0, 0, 1]),
            t(&[0, 0, 0]),
            t(&[1, 1, 1]),
            t(&[2, 2, 2]),
            t(&[0, 1, 2]),
        ];
        FiniteSemigroup::closure(&gens).unwrap()
    }

    fn idx(s: &FiniteSemigroup, v: &[usize]) -> usize {
        s.index_of(&t(v)).unwrap()
    }

    #[test]
    fn fiber_idempotents_and_kernel() {
        let s = fiber();
        let p = idempotent_poset(&s);
        let consts: BTreeSet<usize> = [
            idx(&s, &[0, 0, 0]),
            idx(&s, &[1, 1, 1]),
            idx(&s, &[2, 2, 2]),
        ]
        .into();
        let mut expected: Vec<usize> = consts.iter().copied().collect();
        expected.push(idx(&s, &[0, 1, 2]));
        expected.sort_unstable();
        assert_eq!(p.idempotents, expected);
        assert_eq!(p.minimal.iter().copied().collect::<BTreeSet<_>>(), consts);
        let pa = idx(&s, &[0, 0, 0]);
        let id = idx(&s, &[0, 1, 2]);
        assert!(p.leq.contains(&(pa, id)));
        assert!(p.leq.contains(&(pa, pa)));
        assert_eq!(
            kernel(&s).kernel.iter().copied().collect::<BTreeSet<_>>(),
            consts
        );
    }

    #[test]
    fn phi_is_not_completely_regular() {
        let s = fiber();
        let phi = idx(&s, &[0, 0, 1]);
        let c = is_completely_regular_element(&s, phi);
        assert!(!c.completely_regular);
        assert_eq!(c.bijective_on_image, Some(false));
        assert!(normal_inverse(&s, phi).is_none());
        let pa = idx(&s, &[0, 0, 0]);
        assert_eq!(
            is_completely_regular_element(&s, pa)
                .witness
                .map(|w| s.mul(pa, s.mul(w, pa))),
            Some(pa)
        );
    }

    #[test]
    fn normal_inverse_of_three_cycle() {
        let s = FiniteSemigroup::closure(&[t(&[1, 2, 0])]).unwrap();
        let c = idx(&s, &[1, 2, 0]);
        let n = normal_inverse(&s, c).unwrap();
        assert_eq!(n.inverse, idx(&s, &[2, 0, 1]));
        assert_eq!(n.zero, idx(&s, &[0, 1, 2]));
    }

    #[test]
    fn fiber_report() {
        let r = structure_report(&fiber());
        assert!(!r.is_completely_regular);
        assert_eq!(r.is_nearly_simple, Some(false));
        assert_eq!(r.units.as_ref().map(Vec::len), Some(1));
    }

    #[test]
    fn left_zero_report() {
        let s = FiniteSemigroup::closure(&[t(&[0, 0, 0]), t(&[1, 1, 1]), t(&[2, 2, 2])]).unwrap();
        let r = structure_report(&s);
        assert!(r.is_left_simple && r.is_completely_simple && r.is_completely_regular);
        assert!(!r.is_right_simple && !r.is_group);
        assert_eq!(r.is_nearly_simple, None);
        assert_eq!(r.minimal_left_ideals.len(), 1);
        assert_eq!(r.minimal_right_ideals.len(), 3);
    }

    #[test]
    fn closure_of_phi_kernel() {
        let s = FiniteSemigroup::closure(&[t(&[0, 0, 1])]).unwrap();
        assert_eq!(kernel(&s).kernel, vec![idx(&s, &[0, 0, 0])]);
    }

    #[test]
    fn group_report() {
        let s = FiniteSemigroup::closure(&[t(&[1, 2, 0, 3]), t(&[1, 0, 2, 3])]).unwrap();
        let r = structure_report(&s);
        assert_eq!(r.size, 6);
        assert!(r.is_group && r.is_simple && r.is_completely_regular);
        assert_eq!(r.is_nearly_simple, Some(true));
    }
}
