use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, RwLock};

use super::{Substitution, SubstitutionError};
use crate::semigroup::Transformation;

/// A finite piece of a bi-infinite sequence covering positions
/// `[-left, letters.len() - left)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window {
    pub left: usize,
    pub letters: Vec<usize>,
}

impl Window {
    /// First position to the right of the window.
    pub fn right(&self) -> i64 {
        self.letters.len() as i64 - self.left as i64
    }

    pub fn start(&self) -> i64 {
        -(self.left as i64)
    }

    pub fn get(&self, m: i64) -> Option<usize> {
        let i = m + self.left as i64;
        (0 <= i && i < self.letters.len() as i64).then(|| self.letters[i as usize])
    }

    pub fn covers(&self, from: i64, to: i64) -> bool {
        self.start() <= from && to <= self.right()
    }

    /// The word with a dot in front of position 0, e.g. `a.acaa`.
    pub fn render(&self, sub: &Substitution) -> String {
        format!(
            "{}.{}",
            sub.render(&self.letters[..self.left]),
            sub.render(&self.letters[self.left..])
        )
    }
}

/// The two-sided sequences fixed by a power of `θ̃ = σ∘θ`, indexed by their
/// germ at the origin.
///
/// For `ℓ ≥ 3` a germ is the letter at position 0. For `ℓ = 2` position 1
/// satisfies `x[1] = θ(x[1])[0]` and is not determined by position 0, so a
/// germ is the 2-block at positions 0 and 1. Every position `j` outside the
/// germ satisfies `x_w[j] = θ(x_v[q])[r]` with `j + 1 = ℓq + r`, where `v` is
/// the germ mapped to `w` by the germ map (column 1 of the block
/// substitution). Germs are the periodic points of that map; when it is the
/// identity on seeds these are the fixed points of `θ̃`.
#[derive(Debug)]
pub struct FixedPoints {
    sub: Substitution,
    germ_len: usize,
    blocks: Vec<Vec<usize>>,
    block_index: HashMap<Vec<usize>, usize>,
    germs: Vec<usize>,
    pred: Vec<usize>,
    eventual: Vec<usize>,
    cache: RwLock<HashMap<(usize, usize), Arc<Window>>>,
}

impl FixedPoints {
    pub fn new(sub: &Substitution) -> Result<Self, SubstitutionError> {
        let l = sub.length();
        let germ_len = if l == 2 { 2 } else { 1 };
        let blocks: Vec<Vec<usize>> = if germ_len == 1 {
            (0..sub.size()).map(|a| vec![a]).collect()
        } else {
            legal_two_blocks(sub).into_iter().collect()
        };
        let block_index: HashMap<Vec<usize>, usize> = blocks
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, b)| (b, i))
            .collect();
        let germ_map: Vec<usize> = blocks
            .iter()
            .map(|b| block_index[&block_image(sub, b, 1)])
            .collect();

        let n = blocks.len();
        let germs: Vec<usize> = (0..n)
            .filter(|&b| {
                let mut x = germ_map[b];
                for _ in 0..n {
                    if x == b {
                        return true;
                    }
                    x = germ_map[x];
                }
                false
            })
            .collect();
        if germs.is_empty() {
            return Err(SubstitutionError::NoSeeds);
        }
        let germ_of: HashMap<usize, usize> =
            germs.iter().enumerate().map(|(i, &b)| (b, i)).collect();
        let mut pred = vec![0; germs.len()];
        for (i, &b) in germs.iter().enumerate() {
            pred[germ_of[&germ_map[b]]] = i;
        }
        // after n steps every block sits on a cycle; walk on to the idempotent power
        let period = germs
            .iter()
            .map(|&b| {
                let mut k = 1;
                let mut x = germ_map[b];
                while x != b {
                    x = germ_map[x];
                    k += 1;
                }
                k
            })
            .fold(1usize, lcm);
        let steps = period * (n / period + 1);
        let eventual = (0..n)
            .map(|b| {
                let mut x = b;
                for _ in 0..steps {
                    x = germ_map[x];
                }
                germ_of[&x]
            })
            .collect();
        let cache = RwLock::new(HashMap::new());
        Ok(Self {
            sub: sub.clone(),
            germ_len,
            blocks,
            block_index,
            germs,
            pred,
            eventual,
            cache,
        })
    }

    pub fn substitution(&self) -> &Substitution {
        &self.sub
    }

    pub fn germ_len(&self) -> usize {
        self.germ_len
    }

    pub fn count(&self) -> usize {
        self.germs.len()
    }

    pub fn germ(&self, w: usize) -> &[usize] {
        &self.blocks[self.germs[w]]
    }

    pub fn label(&self, w: usize) -> String {
        self.sub.render(self.germ(w))
    }

    pub fn labels(&self) -> Vec<String> {
        (0..self.count()).map(|w| self.label(w)).collect()
    }

    /// Germ index whose first letter is `s`, if unique (always the case for
    /// `ℓ ≥ 3`).
    pub fn germ_of_letter(&self, s: usize) -> Option<usize> {
        let hits: Vec<usize> = (0..self.count())
            .filter(|&w| self.germ(w)[0] == s)
            .collect();
        (hits.len() == 1).then(|| hits[0])
    }

    pub fn germ_by_label(&self, label: &str) -> Option<usize> {
        (0..self.count()).find(|&w| self.label(w) == label)
    }

    pub fn pred(&self, w: usize) -> usize {
        self.pred[w]
    }

    /// The germ map restricted to germs, as a permutation.
    pub fn cycle_map(&self) -> Transformation {
        let mut images = vec![0; self.count()];
        for (w, &p) in self.pred.iter().enumerate() {
            images[p] = w;
        }
        Transformation::new(images).expect("germ map permutes germs")
    }

    pub(crate) fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub(crate) fn block_index(&self, b: &[usize]) -> usize {
        self.block_index[b]
    }

    /// Germ reached from block `b` by the idempotent power of the germ map.
    pub(crate) fn eventual_germ(&self, b: usize) -> usize {
        self.eventual[b]
    }

    /// Block substitution column `r` applied to block `b`.
    pub(crate) fn block_child(&self, b: usize, r: usize) -> usize {
        self.block_index[&block_image(&self.sub, &self.blocks[b], r)]
    }

    /// Window after `k` applications of `θ̃` to the germ of the predecessor
    /// chain ending in `w`.
    pub fn window(&self, w: usize, k: usize) -> Arc<Window> {
        if let Some(win) = self.cache.read().expect("window cache").get(&(w, k)) {
            return Arc::clone(win);
        }
        let win = if k == 0 {
            Window {
                left: 0,
                letters: self.germ(w).to_vec(),
            }
        } else {
            let prev = self.window(self.pred[w], k - 1);
            let letters = prev
                .letters
                .iter()
                .flat_map(|&a| self.sub.rule(a).iter().copied())
                .collect();
            Window {
                left: self.sub.length() * prev.left + 1,
                letters,
            }
        };
        // a concurrent reader may have inserted the same value already
        Arc::clone(
            self.cache
                .write()
                .expect("window cache")
                .entry((w, k))
                .or_insert_with(|| Arc::new(win)),
        )
    }

    /// Smallest window of `w` covering positions `[from, to)`.
    pub fn window_covering(&self, w: usize, from: i64, to: i64) -> Arc<Window> {
        let mut k = 0;
        loop {
            let win = self.window(w, k);
            if win.covers(from, to) {
                return win;
            }
            k += 1;
        }
    }

    pub fn letter_at(&self, w: usize, m: i64) -> usize {
        self.window_covering(w, m, m + 1).get(m).expect("covered")
    }

    /// The block of germ length starting at position `m`.
    pub fn block_at(&self, w: usize, m: i64) -> Vec<usize> {
        let g = self.germ_len as i64;
        let win = self.window_covering(w, m, m + g);
        (m..m + g).map(|j| win.get(j).expect("covered")).collect()
    }

    /// Rendered window `k`, e.g. `a.acaa` for the first iteration on `a`.
    pub fn expand_window(&self, w: usize, k: usize) -> String {
        self.window(w, k).render(&self.sub)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

/// Column `r` of the substitution induced on blocks of length 1 or 2.
fn block_image(sub: &Substitution, b: &[usize], r: usize) -> Vec<usize> {
    match b {
        [a] => vec![sub.image(*a, r)],
        [a, c] => {
            let next = if r + 1 < sub.length() {
                sub.image(*a, r + 1)
            } else {
                sub.image(*c, 0)
            };
            vec![sub.image(*a, r), next]
        }
        _ => unreachable!("germs have length 1 or 2"),
    }
}

/// 2-blocks of the subshift: those inside some `θ(a)`, closed under taking
/// the 2-blocks of `θ(a)θ(b)` for every legal `ab`.
fn legal_two_blocks(sub: &Substitution) -> BTreeSet<Vec<usize>> {
    let l = sub.length();
    let mut legal: BTreeSet<Vec<usize>> = BTreeSet::new();
    for a in 0..sub.size() {
        for i in 0..l - 1 {
            legal.insert(vec![sub.image(a, i), sub.image(a, i + 1)]);
        }
    }
    let mut work: Vec<Vec<usize>> = legal.iter().cloned().collect();
    while let Some(b) = work.pop() {
        let new = vec![sub.image(b[0], l - 1), sub.image(b[1], 0)];
        if legal.insert(new.clone()) {
            work.push(new);
        }
    }
    legal
}
