use num_traits::Float;
use serde::Serialize;

use super::Window;

/// `N(x, y)`: the largest `N` with `x_n = y_n` for all `|n| ≤ N`, measured
/// on the common part of two windows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Agreement {
    /// Differ at the origin.
    None,
    Upto(u64),
    /// Identical on every position both windows cover.
    Full,
}

pub fn agreement(x: &Window, y: &Window) -> Agreement {
    let reach = (x.left.min(y.left) as i64).min(x.right().min(y.right()) - 1);
    let mut n: i64 = -1;
    while n < reach {
        let m = n + 1;
        if x.get(m) != y.get(m) || x.get(-m) != y.get(-m) {
            break;
        }
        n = m;
    }
    if n < 0 {
        if reach < 0 {
            Agreement::Full
        } else {
            Agreement::None
        }
    } else if n == reach && covered_identical(x, y) {
        Agreement::Full
    } else {
        Agreement::Upto(n as u64)
    }
}

fn covered_identical(x: &Window, y: &Window) -> bool {
    let from = x.start().max(y.start());
    let to = x.right().min(y.right());
    (from..to).all(|m| x.get(m) == y.get(m))
}

/// `d(x, y) = e^{-N(x, y)}`; zero for identical windows. A disagreement at
/// the origin gives `N = -1`.
pub fn distance<F: Float>(a: Agreement) -> F {
    match a {
        Agreement::None => F::one().exp(),
        Agreement::Upto(n) => (-F::from(n).expect("agreement length fits the float type")).exp(),
        Agreement::Full => F::zero(),
    }
}

/// A window recoded by the `(2r+1)`-blocks centred at each position.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RecodedWindow {
    /// Occurring blocks, sorted; recoded letters index into this list.
    pub alphabet: Vec<Vec<usize>>,
    pub left: usize,
    pub letters: Vec<usize>,
}

impl RecodedWindow {
    pub fn as_window(&self) -> Window {
        Window {
            left: self.left,
            letters: self.letters.clone(),
        }
    }

    pub fn block(&self, m: i64) -> Option<&[usize]> {
        self.as_window().get(m).map(|i| self.alphabet[i].as_slice())
    }
}

/// Sliding block code of radius `r`: position `n` of the result is the
/// block `x[n-r ..= n+r]`. The result is `2r` positions shorter. Several
/// windows are coded over one shared block alphabet so that they can be
/// compared letter by letter.
pub fn higher_block_coding(windows: &[&Window], r: usize) -> Vec<RecodedWindow> {
    let blocks_of = |w: &Window| -> Vec<Vec<usize>> {
        if w.letters.len() < 2 * r + 1 {
            return Vec::new();
        }
        w.letters.windows(2 * r + 1).map(|b| b.to_vec()).collect()
    };
    let mut alphabet: Vec<Vec<usize>> = windows.iter().flat_map(|w| blocks_of(w)).collect();
    alphabet.sort();
    alphabet.dedup();
    windows
        .iter()
        .map(|w| {
            let letters = blocks_of(w)
                .iter()
                .map(|b| alphabet.binary_search(b).expect("block is in the alphabet"))
                .collect();
            RecodedWindow {
                alphabet: alphabet.clone(),
                left: w.left.saturating_sub(r),
                letters,
            }
        })
        .collect()
}

/// Moves the origin `n` places to the right, i.e. `σⁿ` on a window.
pub fn shift_window(w: &Window, n: i64) -> Window {
    Window {
        left: (w.left as i64 + n) as usize,
        letters: w.letters.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::substitution::{example_substitution, FixedPoints};

    fn win(left: usize, s: &str) -> Window {
        Window {
            left,
            letters: s.bytes().map(|b| (b - b'a') as usize).collect(),
        }
    }

    #[test]
    fn agreement_and_distance() {
        let x = win(2, "aabaa");
        assert_eq!(agreement(&x, &x), Agreement::Full);
        assert_eq!(distance::<f64>(agreement(&x, &x)), 0.0);
        let y = win(2, "babaa");
        assert_eq!(agreement(&x, &y), Agreement::Upto(1));
        assert!((distance::<f64>(Agreement::Upto(1)) - (-1f64).exp()).abs() < 1e-15);
        let z = win(2, "aaaaa");
        assert_eq!(agreement(&x, &z), Agreement::None);
        assert_eq!(agreement(&y, &x), agreement(&x, &y));
        assert_eq!(distance::<f32>(Agreement::None), 1f32.exp());
    }

    #[test]
    fn metric_matches_agreement_under_shift() {
        let fp = FixedPoints::new(&example_substitution()).unwrap();
        let x = fp.window(0, 4);
        let y = fp.window(2, 4);
        for n in -40..40i64 {
            let (sx, sy) = (shift_window(&x, n), shift_window(&y, n));
            let a = agreement(&sx, &sy);
            for big_n in 0..10u64 {
                let close = distance::<f64>(a) <= (-(big_n as f64)).exp();
                let agree = (n - big_n as i64..=n + big_n as i64).all(|m| x.get(m) == y.get(m));
                assert_eq!(close, agree, "n = {n}, N = {big_n}");
            }
        }
    }

    #[test]
    fn radius_zero_is_identity() {
        let w = win(1, "abcab");
        let r = &higher_block_coding(&[&w], 0)[0];
        assert_eq!(r.left, 1);
        let back: Vec<usize> = r.letters.iter().map(|&i| r.alphabet[i][0]).collect();
        assert_eq!(back, w.letters);
    }

    #[test]
    fn radius_one_blocks() {
        let fp = FixedPoints::new(&example_substitution()).unwrap();
        let x = fp.window(0, 3);
        let r = &higher_block_coding(&[&x], 1)[0];
        assert_eq!(r.letters.len(), x.letters.len() - 2);
        for m in x.start() + 1..x.right() - 1 {
            let expect: Vec<usize> = (m - 1..=m + 1).map(|j| x.get(j).unwrap()).collect();
            assert_eq!(r.block(m).unwrap(), expect.as_slice());
        }
    }

    #[test]
    fn coding_commutes_with_shift() {
        let fp = FixedPoints::new(&example_substitution()).unwrap();
        let x = fp.window(1, 3);
        for n in [-7i64, 0, 3, 11] {
            let a = &higher_block_coding(&[&shift_window(&x, n)], 2)[0];
            let b = &higher_block_coding(&[&x], 2)[0];
            assert_eq!(a.as_window(), shift_window(&b.as_window(), n));
        }
    }
}
