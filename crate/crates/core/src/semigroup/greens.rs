use std::collections::HashMap;

use serde::Serialize;

use super::FiniteSemigroup;

/// Green's L, R, H and D partitions with the egg-box layout of each D-class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GreensStructure {
    pub l_classes: Vec<Vec<usize>>,
    pub r_classes: Vec<Vec<usize>>,
    pub h_classes: Vec<Vec<usize>>,
    pub d_classes: Vec<Vec<usize>>,
    /// One grid per D-class: `cells[r][l]` is the index into `h_classes` of
    /// the H-class in the r-th R-class and l-th L-class of that D-class.
    pub eggbox: Vec<EggBox>,
    #[serde(skip)]
    pub l_of: Vec<usize>,
    #[serde(skip)]
    pub r_of: Vec<usize>,
    #[serde(skip)]
    pub h_of: Vec<usize>,
    #[serde(skip)]
    pub d_of: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EggBox {
    pub r_classes: Vec<usize>,
    pub l_classes: Vec<usize>,
    pub cells: Vec<Vec<usize>>,
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct BitSet(Vec<u64>);

impl BitSet {
    fn new(n: usize) -> Self {
        BitSet(vec![0; n.div_ceil(64)])
    }
    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
}

/// `S¹a` for every `a`.
pub(crate) fn left_ideals(s: &FiniteSemigroup) -> Vec<Vec<usize>> {
    s.elements()
        .map(|a| {
            let mut set = BitSet::new(s.size());
            set.insert(a);
            for x in s.elements() {
                set.insert(s.mul(x, a));
            }
            members(&set, s.size())
        })
        .collect()
}

/// `aS¹` for every `a`.
pub(crate) fn right_ideals(s: &FiniteSemigroup) -> Vec<Vec<usize>> {
    s.elements()
        .map(|a| {
            let mut set = BitSet::new(s.size());
            set.insert(a);
            for x in s.elements() {
                set.insert(s.mul(a, x));
            }
            members(&set, s.size())
        })
        .collect()
}

fn members(set: &BitSet, n: usize) -> Vec<usize> {
    (0..n)
        .filter(|&i| set.0[i / 64] >> (i % 64) & 1 == 1)
        .collect()
}

fn partition_by<K: std::hash::Hash + Eq>(keys: Vec<K>) -> (Vec<Vec<usize>>, Vec<usize>) {
    let mut class_of_key: HashMap<K, usize> = HashMap::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut of = Vec::with_capacity(keys.len());
    for (i, k) in keys.into_iter().enumerate() {
        let next = classes.len();
        let c = *class_of_key.entry(k).or_insert(next);
        if c == next {
            classes.push(Vec::new());
        }
        classes[c].push(i);
        of.push(c);
    }
    (classes, of)
}

pub fn greens(s: &FiniteSemigroup) -> GreensStructure {
    let (l_classes, l_of) = partition_by(left_ideals(s));
    let (r_classes, r_of) = partition_by(right_ideals(s));
    let (h_classes, h_of) = partition_by(s.elements().map(|a| (l_of[a], r_of[a])).collect());

    // D = L ∨ R; union-find over the two partitions.
    let n = s.size();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    for class in l_classes.iter().chain(r_classes.iter()) {
        for &x in &class[1..] {
            let (a, b) = (find(&mut parent, class[0]), find(&mut parent, x));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let roots: Vec<usize> = (0..n).map(|x| find(&mut parent, x)).collect();
    let (d_classes, d_of) = partition_by(roots);

    let eggbox = d_classes
        .iter()
        .map(|d| {
            let mut rs: Vec<usize> = d.iter().map(|&a| r_of[a]).collect();
            let mut ls: Vec<usize> = d.iter().map(|&a| l_of[a]).collect();
            rs.sort_unstable();
            rs.dedup();
            ls.sort_unstable();
            ls.dedup();
            let cells = rs
                .iter()
                .map(|&r| {
                    ls.iter()
                        .map(|&l| {
                            let a = *d
                                .iter()
                                .find(|&&a| r_of[a] == r && l_of[a] == l)
                                .expect("every R and L class in a D-class meet");
                            h_of[a]
                        })
                        .collect()
                })
                .collect();
            EggBox {
                r_classes: rs,
                l_classes: ls,
                cells,
            }
        })
        .collect();

    GreensStructure {
        l_classes,
        r_classes,
        h_classes,
        d_classes,
        eggbox,
        l_of,
        r_of,
        h_of,
        d_of,
    }
}

impl GreensStructure {
    /// Whether H-class `h` is a subgroup of `s`.
    pub fn is_group(&self, s: &FiniteSemigroup, h: usize) -> bool {
        let class = &self.h_classes[h];
        let Some(&e) = class.iter().find(|&&x| s.is_idempotent(x)) else {
            return false;
        };
        // An H-class containing an idempotent is a group (finite case); still
        // check closure, identity and inverses directly.
        let inside = |x: usize| self.h_of[x] == h;
        class.iter().all(|&a| {
            s.mul(e, a) == a
                && s.mul(a, e) == a
                && class.iter().all(|&b| inside(s.mul(a, b)))
                && class.iter().any(|&b| s.mul(a, b) == e && s.mul(b, a) == e)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::Transformation;

    fn t(v: &[usize]) -> Transformation {
        Transformation::new(v.to_vec()).unwrap()
    }

    #[test]
    fn left_zero_has_one_l_class() {
        let s = FiniteSemigroup::closure(&[t(&[0, 0, 0]), t(&[1, 1, 1]), t(&[2, 2, 2])]).unwrap();
        let g = greens(&s);
        assert_eq!(g.l_classes.len(), 1);
        assert_eq!(g.r_classes.len(), 3);
        assert_eq!(g.h_classes.len(), 3);
        assert_eq!(g.d_classes.len(), 1);
        assert_eq!(g.eggbox[0].cells.len(), 3);
        assert_eq!(g.eggbox[0].cells[0].len(), 1);
    }

    #[test]
    fn group_is_one_class() {
        let s = FiniteSemigroup::closure(&[t(&[1, 2, 0])]).unwrap();
        let g = greens(&s);
        assert_eq!(g.l_classes.len(), 1);
        assert_eq!(g.r_classes.len(), 1);
        assert_eq!(g.h_classes.len(), 1);
        assert!(g.is_group(&s, 0));
    }

    #[test]
    fn phi_h_class_is_not_a_group() {
        let phi = t(&[0, 0, 1]);
        let gens = [
            phi.clone(),
            t(&[0, 0, 0]),
            t(&[1, 1, 1]),
            t(&[2, 2, 2]),
            t(&[0, 1, 2]),
        ];
        let s = FiniteSemigroup::closure(&gens).unwrap();
        let g = greens(&s);
        let p = s.index_of(&phi).unwrap();
        assert_eq!(g.h_classes[g.h_of[p]], vec![p]);
        assert!(!g.is_group(&s, g.h_of[p]));
        for h in 0..g.h_classes.len() {
            let class = &g.h_classes[h];
            let l = g.l_of[class[0]];
            let r = g.r_of[class[0]];
            assert!(class.iter().all(|&x| g.l_of[x] == l && g.r_of[x] == r));
        }
    }
}
