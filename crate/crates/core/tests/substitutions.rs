use ellis_core::substitution::{agreement, distance, FixedPoints, OdometerElement, Substitution};
use proptest::prelude::*;

fn primitive_with_seeds() -> impl Strategy<Value = Substitution> {
    (2usize..=3, 2usize..=4)
        .prop_flat_map(|(n, l)| prop::collection::vec(prop::collection::vec(0..n, l), n))
        .prop_map(|rules| {
            let alphabet = (0..rules.len()).map(|a| a.to_string()).collect();
            Substitution::new(alphabet, rules).unwrap()
        })
        .prop_filter("primitive with fixed points", |s| {
            s.is_primitive() && FixedPoints::new(s).is_ok()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn deeper_windows_extend_shallower_ones(sub in primitive_with_seeds()) {
        let fp = FixedPoints::new(&sub).unwrap();
        for w in 0..fp.count() {
            let shallow = fp.window(w, 2);
            let deep = fp.window(w, 3);
            for m in shallow.start()..shallow.right() {
                prop_assert_eq!(shallow.get(m), deep.get(m));
            }
        }
    }

    #[test]
    fn windows_are_images_under_the_shifted_substitution(sub in primitive_with_seeds()) {
        let fp = FixedPoints::new(&sub).unwrap();
        let l = sub.length() as i64;
        for w in 0..fp.count() {
            // germs may be permuted by σ∘θ; x_w is the image of x_pred(w)
            let win = fp.window(w, 3);
            let prev = fp.window(fp.pred(w), 3);
            for j in win.start()..win.right() {
                // x[j] = θ(x[q])[r] with j + 1 = ℓq + r
                let q = (j + 1).div_euclid(l);
                let r = (j + 1).rem_euclid(l) as usize;
                if let (Some(x), Some(y)) = (win.get(j), prev.get(q)) {
                    prop_assert_eq!(x, sub.image(y, r));
                }
            }
        }
    }

    #[test]
    fn distance_is_symmetric_and_zero_only_on_equal_windows(sub in primitive_with_seeds()) {
        let fp = FixedPoints::new(&sub).unwrap();
        for u in 0..fp.count() {
            for v in 0..fp.count() {
                let (x, y) = (fp.window(u, 2), fp.window(v, 2));
                let d: f64 = distance(agreement(&x, &y));
                prop_assert_eq!(d, distance::<f64>(agreement(&y, &x)));
                prop_assert_eq!(d == 0.0, u == v);
            }
        }
    }

    #[test]
    fn odometer_addition(base in 2u32..6, depth in 1usize..6, a in -500i64..500, b in -500i64..500) {
        let x = OdometerElement::from_integer(base, depth, a);
        let y = OdometerElement::from_integer(base, depth, b);
        prop_assert_eq!(x.add_element(&y), OdometerElement::from_integer(base, depth, a + b));
        prop_assert_eq!(x.add(b), x.add_element(&y));
        prop_assert_eq!(x.add_element(&x.negate()), OdometerElement::zero(base, depth));
        let modulus = (base as i64).pow(depth as u32);
        prop_assert_eq!(x.to_integer(), Some(a.rem_euclid(modulus) as u64));
    }
}

#[test]
fn adding_one_to_all_top_digits_carries_to_zero() {
    let top = OdometerElement::new(3, vec![2, 2, 2, 2]).unwrap();
    assert_eq!(top.add(1), OdometerElement::zero(3, 4));
    assert_eq!(
        OdometerElement::ones(3, 4).add(-1),
        OdometerElement::new(3, vec![0, 1, 1, 1]).unwrap()
    );
}
