use ellis_core::semigroup::{
    greens, rees_decompose, rees_multiply, structure_report, FiniteSemigroup, Transformation,
};
use proptest::prelude::*;

fn generators() -> impl Strategy<Value = Vec<Transformation>> {
    (1usize..=4).prop_flat_map(|n| {
        prop::collection::vec(prop::collection::vec(0..n, n), 1..=3).prop_map(|gs| {
            gs.into_iter()
                .map(|g| Transformation::new(g).unwrap())
                .collect()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closure_is_an_associative_transformation_semigroup(gens in generators()) {
        let s = FiniteSemigroup::closure(&gens).unwrap();
        prop_assert!(s.check_associative().is_ok());
        for g in &gens {
            prop_assert!(s.index_of(g).is_some());
        }
        let ts = s.transformations().unwrap();
        for a in s.elements() {
            for b in s.elements() {
                prop_assert_eq!(&ts[s.mul(a, b)], &ts[a].compose(&ts[b]).unwrap());
            }
        }
    }

    #[test]
    fn completely_regular_iff_h_classes_are_groups(gens in generators()) {
        let s = FiniteSemigroup::closure(&gens).unwrap();
        let r = structure_report(&s);
        let g = greens(&s);
        let groups = g.h_classes.iter().all(|h| h.iter().any(|&e| s.is_idempotent(e)));
        prop_assert_eq!(r.is_completely_regular, groups);
        prop_assert_eq!(r.is_completely_regular, r.non_completely_regular.is_empty());
    }

    #[test]
    fn quotients_of_completely_regular_semigroups_stay_regular(
        gens in generators(),
        picks in prop::collection::vec((0usize..64, 0usize..64), 1..3),
    ) {
        let s = FiniteSemigroup::closure(&gens).unwrap();
        let n = s.size();
        let pairs: Vec<(usize, usize)> = picks.iter().map(|&(a, b)| (a % n, b % n)).collect();
        let class = s.congruence(&pairs).unwrap();
        let q = s.quotient(&class).unwrap();
        prop_assert!(q.check_associative().is_ok());
        for &(a, b) in &pairs {
            prop_assert_eq!(class[a], class[b]);
        }
        if structure_report(&s).is_completely_regular {
            prop_assert!(structure_report(&q).is_completely_regular);
        }
    }

    #[test]
    fn kernel_is_completely_simple_and_rees_round_trips(gens in generators()) {
        let s = FiniteSemigroup::closure(&gens).unwrap();
        let r = structure_report(&s);
        let k = s.subsemigroup(&r.kernel).unwrap();
        prop_assert!(structure_report(&k).is_completely_simple);
        let d = rees_decompose(&k).unwrap();
        let elements = d.data.elements();
        for &x in &elements {
            for &y in &elements {
                let xy = rees_multiply(&d.data, x, y).unwrap();
                let (ix, iy) = (d.data.index_of(x), d.data.index_of(y));
                prop_assert_eq!(d.isomorphism[d.data.index_of(xy)], k.mul(d.isomorphism[ix], d.isomorphism[iy]));
            }
        }
    }
}

#[test]
fn quotient_rejects_incompatible_partitions() {
    // identity and a constant on two points; merging them is fine, but
    // a partition splitting a congruence class is not
    let s = FiniteSemigroup::closure(&[
        Transformation::new(vec![1, 0]).unwrap(),
        Transformation::constant(2, 0),
    ])
    .unwrap();
    let id = s.index_of(&Transformation::identity(2)).unwrap();
    let swap = s
        .index_of(&Transformation::new(vec![1, 0]).unwrap())
        .unwrap();
    let mut class = vec![0; s.size()];
    class[id] = 1;
    class[swap] = 1;
    assert!(s.quotient(&class).is_ok());
    let mut bad = vec![0; s.size()];
    bad[id] = 1;
    assert!(s.quotient(&bad).is_err());
}
