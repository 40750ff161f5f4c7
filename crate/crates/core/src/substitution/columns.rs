use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, HashMap};

use serde::Serialize;

use super::FixedPoints;
use crate::semigroup::Transformation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    All,
    Positive,
    Negative,
}

/// The map `w ↦ x_w[m]` on fixed points, read at position `m`.
///
/// The value at `w` is the germ of the limit point reached along the column,
/// that is the block at `m` pushed to its periodic germ. When the germ map is
/// the identity this is just the letter `x_w[m]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColumnMap {
    pub map: Transformation,
    pub position: i64,
}

/// The column tuples `m ↦ (block_m(x_w))_w` on one side of the origin.
///
/// Column `m` determines column `ℓq + r - 1` for every `r < ℓ` (with
/// `m = q`), so the tuples form a finite graph; the tuples occurring at
/// arbitrarily large `|m|` are exactly those reachable from a cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColumnGraph {
    /// Raw tuples of block indices, one entry per fixed point.
    pub nodes: Vec<Vec<usize>>,
    /// Position closest to the origin at which each tuple occurs.
    pub positions: Vec<i64>,
    /// `children[v][r]`.
    pub children: Vec<Vec<usize>>,
    pub recurrent: Vec<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColumnShadow {
    pub positive: ColumnGraph,
    pub negative: ColumnGraph,
}

impl FixedPoints {
    /// Block indices at position `m`, one per fixed point.
    pub fn raw_column(&self, m: i64) -> Vec<usize> {
        (0..self.count())
            .map(|w| self.block_index(&self.block_at(w, m)))
            .collect()
    }

    pub(crate) fn raw_to_map(&self, raw: &[usize]) -> Transformation {
        Transformation::new(raw.iter().map(|&b| self.eventual_germ(b)).collect())
            .expect("germ indices are in range")
    }

    pub fn column_map_at(&self, m: i64) -> ColumnMap {
        ColumnMap {
            map: self.raw_to_map(&self.raw_column(m)),
            position: m,
        }
    }

    fn column_child(&self, raw: &[usize], r: usize) -> Vec<usize> {
        (0..self.count())
            .map(|w| self.block_child(raw[self.pred(w)], r))
            .collect()
    }

    fn column_graph(&self, base: &[i64]) -> ColumnGraph {
        let l = self.substitution().length() as i64;
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut nodes: Vec<Vec<usize>> = Vec::new();
        let mut positions: Vec<i64> = Vec::new();
        let mut heap = BinaryHeap::new();
        for &m in base {
            heap.push(Reverse((m.unsigned_abs(), m, self.raw_column(m))));
        }
        while let Some(Reverse((_, m, raw))) = heap.pop() {
            if index.contains_key(&raw) {
                continue;
            }
            index.insert(raw.clone(), nodes.len());
            for r in 0..l as usize {
                let child = self.column_child(&raw, r);
                if !index.contains_key(&child) {
                    let p = l * m + r as i64 - 1;
                    heap.push(Reverse((p.unsigned_abs(), p, child)));
                }
            }
            nodes.push(raw);
            positions.push(m);
        }
        let children: Vec<Vec<usize>> = nodes
            .iter()
            .map(|raw| {
                (0..l as usize)
                    .map(|r| index[&self.column_child(raw, r)])
                    .collect()
            })
            .collect();
        let recurrent = recurrent_nodes(&children);
        ColumnGraph {
            nodes,
            positions,
            children,
            recurrent,
        }
    }

    pub fn column_shadow(&self) -> ColumnShadow {
        let l = self.substitution().length() as i64;
        let forward: Vec<i64> = (1..l).collect();
        ColumnShadow {
            positive: self.column_graph(&forward),
            negative: self.column_graph(&[-1]),
        }
    }

    /// Column maps occurring at arbitrarily large `|m|` on the requested
    /// side. `Side::All` also includes the column at the origin, the
    /// identity.
    pub fn occurring_columns(&self, side: Side) -> Vec<ColumnMap> {
        self.column_shadow().occurring(self, side)
    }
}

impl ColumnShadow {
    pub fn occurring(&self, fp: &FixedPoints, side: Side) -> Vec<ColumnMap> {
        let mut found: BTreeMap<Transformation, i64> = BTreeMap::new();
        let mut add = |map: Transformation, position: i64| {
            let slot = found.entry(map).or_insert(position);
            if (position.unsigned_abs(), -position) < (slot.unsigned_abs(), -*slot) {
                *slot = position;
            }
        };
        if side == Side::All {
            add(Transformation::identity(fp.count()), 0);
        }
        let graphs: Vec<&ColumnGraph> = match side {
            Side::All => vec![&self.positive, &self.negative],
            Side::Positive => vec![&self.positive],
            Side::Negative => vec![&self.negative],
        };
        for g in graphs {
            for v in 0..g.nodes.len() {
                if g.recurrent[v] {
                    add(fp.raw_to_map(&g.nodes[v]), g.positions[v]);
                }
            }
        }
        found
            .into_iter()
            .map(|(map, position)| ColumnMap { map, position })
            .collect()
    }
}

/// Nodes reachable (in zero or more steps) from a node on a cycle.
pub(crate) fn recurrent_nodes(children: &[Vec<usize>]) -> Vec<bool> {
    let n = children.len();
    let reach = |from: usize| {
        let mut seen = vec![false; n];
        let mut stack: Vec<usize> = children[from].clone();
        while let Some(v) = stack.pop() {
            if !seen[v] {
                seen[v] = true;
                stack.extend(children[v].iter().copied());
            }
        }
        seen
    };
    let mut recurrent = vec![false; n];
    for v in 0..n {
        if recurrent[v] {
            continue;
        }
        let seen = reach(v);
        if seen[v] {
            recurrent[v] = true;
            for (u, &s) in seen.iter().enumerate() {
                if s {
                    recurrent[u] = true;
                }
            }
        }
    }
    recurrent
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::FiniteSemigroup;
    use crate::substitution::{bijective_substitution, example_substitution};

    fn t(v: &[usize]) -> Transformation {
        Transformation::new(v.to_vec()).unwrap()
    }

    fn maps(cols: &[ColumnMap]) -> Vec<Transformation> {
        cols.iter().map(|c| c.map.clone()).collect()
    }

    #[test]
    fn example_columns_near_origin() {
        let fp = FixedPoints::new(&example_substitution()).unwrap();
        assert_eq!(fp.column_map_at(0).map, Transformation::identity(3));
        assert_eq!(fp.column_map_at(1).map, t(&[2, 2, 2]));
        assert_eq!(fp.column_map_at(-1).map, t(&[0, 0, 0]));
    }

    #[test]
    fn example_occurring_columns() {
        let fp = FixedPoints::new(&example_substitution()).unwrap();
        let all = maps(&fp.occurring_columns(Side::All));
        assert_eq!(
            all,
            vec![
                t(&[0, 0, 0]),
                t(&[0, 0, 1]),
                t(&[0, 1, 2]),
                t(&[1, 1, 1]),
                t(&[2, 2, 2])
            ]
        );
        let neg = maps(&fp.occurring_columns(Side::Negative));
        assert_eq!(neg, vec![t(&[0, 0, 0]), t(&[1, 1, 1]), t(&[2, 2, 2])]);
        let pos = maps(&fp.occurring_columns(Side::Positive));
        assert!(pos.contains(&t(&[0, 0, 1])));
        // closure adds nothing
        assert_eq!(FiniteSemigroup::closure(&all).unwrap().size(), 5);
    }

    #[test]
    fn recorded_positions_reproduce_maps() {
        for sub in [example_substitution(), bijective_substitution()] {
            let fp = FixedPoints::new(&sub).unwrap();
            for side in [Side::All, Side::Positive, Side::Negative] {
                for c in fp.occurring_columns(side) {
                    assert_eq!(fp.column_map_at(c.position).map, c.map);
                }
            }
        }
    }

    #[test]
    fn graph_nodes_match_windows() {
        let fp = FixedPoints::new(&example_substitution()).unwrap();
        let shadow = fp.column_shadow();
        for g in [&shadow.positive, &shadow.negative] {
            for (v, raw) in g.nodes.iter().enumerate() {
                assert_eq!(&fp.raw_column(g.positions[v]), raw);
            }
        }
    }

    #[test]
    fn recurrent_columns_agree_with_sampling() {
        // every recurrent tuple shows up far from the origin, every other
        // tuple only near it
        let fp = FixedPoints::new(&example_substitution()).unwrap();
        let shadow = fp.column_shadow();
        let far: Vec<Vec<usize>> = (3000..3400).map(|m| fp.raw_column(m)).collect();
        for (v, raw) in shadow.positive.nodes.iter().enumerate() {
            if !shadow.positive.recurrent[v] {
                assert!(!far.contains(raw));
            }
        }
        for raw in &far {
            let v = shadow.positive.nodes.iter().position(|x| x == raw).unwrap();
            assert!(shadow.positive.recurrent[v]);
        }
    }

    #[test]
    fn bijective_columns() {
        let fp = FixedPoints::new(&bijective_substitution()).unwrap();
        let expect = vec![t(&[0, 1]), t(&[1, 0])];
        assert_eq!(maps(&fp.occurring_columns(Side::Positive)), expect);
        assert_eq!(maps(&fp.occurring_columns(Side::Negative)), expect);
        assert_eq!(maps(&fp.occurring_columns(Side::All)), expect);
    }

    #[test]
    fn recurrence_on_small_graph() {
        // 0 -> 1 -> 2 -> 1, 3 -> 0
        let children = vec![vec![1], vec![2], vec![1], vec![0]];
        assert_eq!(recurrent_nodes(&children), vec![false, true, true, false]);
    }
}
