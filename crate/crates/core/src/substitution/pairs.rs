use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use super::columns::{recurrent_nodes, ColumnShadow};
use super::{FixedPoints, SubstitutionError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Forward,
    Backward,
}

impl Direction {
    pub fn sign(self) -> i64 {
        match self {
            Direction::Forward => 1,
            Direction::Backward => -1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Asymptotic,
    LiYorke,
    DistalPair,
}

/// `x_n ≠ y_n` and `x_m = y_m` for `n < m ≤ n + N`, with positions measured
/// along the direction (position `-n` when backward).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LiYorkeWitness {
    pub n: u64,
    #[serde(rename = "N")]
    pub length: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairClassification {
    pub first: usize,
    pub second: usize,
    pub direction: Direction,
    pub verdict: Verdict,
    pub proximal: bool,
    pub asymptotic: bool,
    /// For asymptotic pairs: the sequences agree at every position at least
    /// this far from the origin in the given direction.
    pub threshold: Option<u64>,
    pub witnesses: Vec<LiYorkeWitness>,
    /// Letter pairs occurring arbitrarily far out in the given direction.
    pub recurrent_pairs: Vec<(usize, usize)>,
    /// Number of positions scanned for witnesses.
    pub scan_horizon: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairOptions {
    pub witnesses: usize,
    /// Positions to scan; `None` means `ℓ⁶`. Doubled (up to 2²⁰) while too
    /// few witnesses are found.
    pub horizon: Option<u64>,
}

impl Default for PairOptions {
    fn default() -> Self {
        Self {
            witnesses: 5,
            horizon: None,
        }
    }
}

const MAX_HORIZON: u64 = 1 << 20;

type State = (usize, usize, usize);

/// Greedy witnesses from an agreement profile along one direction:
/// `same[i]` tells whether the two sequences agree at distance `i`.
///
/// Both `n_k` and `N_k` strictly increase and `N_k ≥ k`.
pub fn scan_witnesses(same: &[bool], count: usize) -> Vec<LiYorkeWitness> {
    let mut out: Vec<LiYorkeWitness> = Vec::new();
    let disagreements: Vec<usize> = (0..same.len()).filter(|&i| !same[i]).collect();
    for (idx, &d) in disagreements.iter().enumerate() {
        if out.len() == count {
            break;
        }
        let end = disagreements.get(idx + 1).copied().unwrap_or(same.len());
        let run = (end - d - 1) as u64;
        let k = out.len() as u64 + 1;
        let longer = out.last().is_none_or(|w| run > w.length);
        if run >= k && longer {
            out.push(LiYorkeWitness {
                n: d as u64,
                length: run,
            });
        }
    }
    out
}

/// Checks the defining property of every witness against the profile.
pub fn witnesses_hold(same: &[bool], witnesses: &[LiYorkeWitness]) -> bool {
    let increasing = witnesses
        .windows(2)
        .all(|w| w[0].n < w[1].n && w[0].length < w[1].length);
    increasing
        && witnesses.iter().all(|w| {
            let n = w.n as usize;
            let end = n + w.length as usize;
            end < same.len() && !same[n] && same[n + 1..=end].iter().all(|&s| s)
        })
}

/// States `(k, a, b)`: letter pair `(a, b)` in the `k`-th pair of the cycle
/// of `(u, v)` under the germ map.
struct PairGraph {
    states: Vec<(usize, usize, usize)>,
    children: Vec<Vec<usize>>,
    base: Vec<(usize, i64)>,
}

impl FixedPoints {
    fn pair_cycle(&self, u: usize, v: usize) -> Vec<(usize, usize)> {
        let succ = self.cycle_map();
        let mut cycle = vec![(u, v)];
        loop {
            let (a, b) = *cycle.last().unwrap();
            let next = (succ.apply(a), succ.apply(b));
            if next == (u, v) {
                return cycle;
            }
            cycle.push(next);
        }
    }

    fn pair_graph(&self, u: usize, v: usize, direction: Direction) -> PairGraph {
        let sub = self.substitution();
        let l = sub.length();
        let cycle = self.pair_cycle(u, v);
        let p = cycle.len();
        let base_positions: Vec<i64> = match direction {
            Direction::Forward => (1..l as i64).collect(),
            Direction::Backward => vec![-1],
        };
        let mut index: HashMap<(usize, usize, usize), usize> = HashMap::new();
        let mut states: Vec<(usize, usize, usize)> = Vec::new();
        let mut base: Vec<(usize, i64)> = Vec::new();
        let mut stack: Vec<(usize, usize, usize)> = Vec::new();
        let mut intern = |s: (usize, usize, usize),
                          states: &mut Vec<(usize, usize, usize)>,
                          stack: &mut Vec<(usize, usize, usize)>| {
            *index.entry(s).or_insert_with(|| {
                states.push(s);
                stack.push(s);
                states.len() - 1
            })
        };
        for (k, &(a, b)) in cycle.iter().enumerate() {
            for &m in &base_positions {
                let s = (k, self.letter_at(a, m), self.letter_at(b, m));
                let id = intern(s, &mut states, &mut stack);
                base.push((id, m));
            }
        }
        // state = (phase in the germ cycle, letter of x, letter of y)
        let mut edges: Vec<(State, Vec<State>)> = Vec::new();
        while let Some(s @ (k, a, b)) = stack.pop() {
            let kids: Vec<_> = (0..l)
                .map(|r| ((k + 1) % p, sub.image(a, r), sub.image(b, r)))
                .collect();
            for &c in &kids {
                intern(c, &mut states, &mut stack);
            }
            edges.push((s, kids));
        }
        let position: HashMap<(usize, usize, usize), usize> =
            states.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let mut children = vec![Vec::new(); states.len()];
        for (s, kids) in edges {
            children[position[&s]] = kids.iter().map(|c| position[c]).collect();
        }
        PairGraph {
            states,
            children,
            base,
        }
    }

    /// Exact classification of the pair `(x_u, x_v)` in one direction.
    pub fn classify_pair(
        &self,
        u: usize,
        v: usize,
        direction: Direction,
        options: PairOptions,
    ) -> Result<PairClassification, SubstitutionError> {
        self.classify_pair_with(&self.column_shadow(), u, v, direction, options)
    }

    pub fn classify_pair_with(
        &self,
        shadow: &ColumnShadow,
        u: usize,
        v: usize,
        direction: Direction,
        options: PairOptions,
    ) -> Result<PairClassification, SubstitutionError> {
        for w in [u, v] {
            if w >= self.count() {
                return Err(SubstitutionError::NoSuchPoint(w));
            }
        }
        if u == v {
            return Err(SubstitutionError::SamePoint);
        }
        let l = self.substitution().length() as i64;
        let graph = self.pair_graph(u, v, direction);
        let recurrent = recurrent_nodes(&graph.children);
        let pairs: BTreeSet<(usize, usize)> = graph
            .states
            .iter()
            .zip(&recurrent)
            .filter(|(&(k, _, _), &rec)| k == 0 && rec)
            .map(|(&(_, a, b), _)| (a, b))
            .collect();
        let via_columns = column_route_pairs(self, shadow, u, v, direction);
        assert_eq!(
            pairs, via_columns,
            "pair graph and column graph disagree on recurrent pairs"
        );

        let asymptotic = pairs.iter().all(|&(a, b)| a == b);
        let proximal = pairs.iter().any(|&(a, b)| a == b);
        let verdict = match (proximal, asymptotic) {
            (_, true) => Verdict::Asymptotic,
            (true, false) => Verdict::LiYorke,
            (false, false) => Verdict::DistalPair,
        };

        let threshold = asymptotic.then(|| {
            let far = farthest_transient_disagreement(&graph, &recurrent, l, direction);
            match far {
                Some(m) => m + 1,
                None if self.letter_at(u, 0) == self.letter_at(v, 0) => 0,
                None => 1,
            }
        });

        let mut scan_horizon = options.horizon.unwrap_or((l as u64).pow(6));
        let mut witnesses = Vec::new();
        if verdict == Verdict::LiYorke {
            loop {
                let same = self.agreement_profile(u, v, direction, scan_horizon);
                witnesses = scan_witnesses(&same, options.witnesses);
                debug_assert!(witnesses_hold(&same, &witnesses));
                if witnesses.len() >= options.witnesses || scan_horizon >= MAX_HORIZON {
                    break;
                }
                scan_horizon = (scan_horizon * 2).min(MAX_HORIZON);
            }
        }

        Ok(PairClassification {
            first: u,
            second: v,
            direction,
            verdict,
            proximal,
            asymptotic,
            threshold,
            witnesses,
            recurrent_pairs: pairs.into_iter().collect(),
            scan_horizon,
        })
    }

    /// `same[i]` is whether `x_u` and `x_v` agree at distance `i` from the
    /// origin in `direction`, for `0 ≤ i < horizon`.
    pub fn agreement_profile(
        &self,
        u: usize,
        v: usize,
        direction: Direction,
        horizon: u64,
    ) -> Vec<bool> {
        let h = horizon as i64;
        let (from, to) = match direction {
            Direction::Forward => (0, h),
            Direction::Backward => (-h + 1, 1),
        };
        let x = self.window_covering(u, from, to);
        let y = self.window_covering(v, from, to);
        (0..h)
            .map(|i| {
                let m = direction.sign() * i;
                x.get(m) == y.get(m)
            })
            .collect()
    }
}

/// Recurrent letter pairs read off the column graph.
pub(crate) fn column_route_pairs(
    fp: &FixedPoints,
    shadow: &ColumnShadow,
    u: usize,
    v: usize,
    direction: Direction,
) -> BTreeSet<(usize, usize)> {
    let g = match direction {
        Direction::Forward => &shadow.positive,
        Direction::Backward => &shadow.negative,
    };
    let blocks = fp.blocks();
    g.nodes
        .iter()
        .zip(&g.recurrent)
        .filter(|(_, &rec)| rec)
        .map(|(raw, _)| (blocks[raw[u]][0], blocks[raw[v]][0]))
        .collect()
}

/// Largest distance from the origin of a disagreement carried by a
/// non-recurrent state of the pair's own sequence. Non-recurrent states
/// form a DAG; positions grow along edges so a longest-path pass suffices.
fn farthest_transient_disagreement(
    graph: &PairGraph,
    recurrent: &[bool],
    l: i64,
    direction: Direction,
) -> Option<u64> {
    let n = graph.states.len();
    let mut indegree = vec![0usize; n];
    for s in 0..n {
        if !recurrent[s] {
            for &c in &graph.children[s] {
                if !recurrent[c] {
                    indegree[c] += 1;
                }
            }
        }
    }
    // best[s]: farthest position (in the direction) at which s occurs
    let mut best: Vec<Option<i64>> = vec![None; n];
    for &(s, m) in &graph.base {
        if !recurrent[s] {
            let d = direction.sign() * m;
            best[s] = Some(best[s].map_or(d, |b| b.max(d)));
        }
    }
    let mut ready: Vec<usize> = (0..n)
        .filter(|&s| !recurrent[s] && indegree[s] == 0)
        .collect();
    while let Some(s) = ready.pop() {
        for (r, &c) in graph.children[s].iter().enumerate() {
            if recurrent[c] {
                continue;
            }
            if let Some(b) = best[s] {
                let m = direction.sign() * (l * direction.sign() * b + r as i64 - 1);
                best[c] = Some(best[c].map_or(m, |x| x.max(m)));
            }
            indegree[c] -= 1;
            if indegree[c] == 0 {
                ready.push(c);
            }
        }
    }
    (0..n)
        .filter(|&s| {
            let (k, a, b) = graph.states[s];
            !recurrent[s] && k == 0 && a != b
        })
        .filter_map(|s| best[s])
        .max()
        .map(|m| m as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::substitution::{bijective_substitution, example_substitution, Substitution};

    fn classify(fp: &FixedPoints, u: usize, v: usize, d: Direction) -> PairClassification {
        fp.classify_pair(u, v, d, PairOptions::default()).unwrap()
    }

    #[test]
    fn example_pairs() {
        let fp = FixedPoints::new(&example_substitution()).unwrap();
        let ab = classify(&fp, 0, 1, Direction::Forward);
        assert_eq!(ab.verdict, Verdict::Asymptotic);
        assert_eq!(ab.threshold, Some(1));
        for (u, v) in [(0, 2), (1, 2)] {
            let c = classify(&fp, u, v, Direction::Forward);
            assert_eq!(c.verdict, Verdict::LiYorke);
            assert_eq!(c.witnesses.len(), 5);
            let same = fp.agreement_profile(u, v, Direction::Forward, c.scan_horizon);
            assert!(witnesses_hold(&same, &c.witnesses));
            assert!(c
                .witnesses
                .iter()
                .enumerate()
                .all(|(k, w)| w.length > k as u64));
        }
        for (u, v) in [(0, 1), (0, 2), (1, 2)] {
            assert_eq!(
                classify(&fp, u, v, Direction::Backward).verdict,
                Verdict::Asymptotic
            );
        }
    }

    #[test]
    fn thresholds_hold_on_windows() {
        let fp = FixedPoints::new(&example_substitution()).unwrap();
        for (u, v) in [(0, 1), (0, 2), (1, 2)] {
            for d in [Direction::Forward, Direction::Backward] {
                let c = classify(&fp, u, v, d);
                if let Some(t) = c.threshold {
                    let same = fp.agreement_profile(u, v, d, 5000);
                    assert!(same[t as usize..].iter().all(|&s| s));
                    if t > 0 {
                        assert!(!same[t as usize - 1]);
                    }
                }
            }
        }
    }

    #[test]
    fn bijective_pair_is_distal() {
        let fp = FixedPoints::new(&bijective_substitution()).unwrap();
        for d in [Direction::Forward, Direction::Backward] {
            let c = classify(&fp, 0, 1, d);
            assert_eq!(c.verdict, Verdict::DistalPair);
            assert!(!c.proximal);
            assert!(c.recurrent_pairs.iter().all(|&(a, b)| a != b));
        }
    }

    #[test]
    fn rejects_equal_points() {
        let fp = FixedPoints::new(&example_substitution()).unwrap();
        assert_eq!(
            fp.classify_pair(1, 1, Direction::Forward, PairOptions::default()),
            Err(SubstitutionError::SamePoint)
        );
    }

    #[test]
    fn scanner_rules() {
        // disagree at 0, 2, 5, 9, 20
        let mut same = vec![true; 30];
        for i in [0, 2, 5, 9, 20] {
            same[i] = false;
        }
        let w = scan_witnesses(&same, 5);
        assert_eq!(
            w,
            vec![
                LiYorkeWitness { n: 0, length: 1 },
                LiYorkeWitness { n: 2, length: 2 },
                LiYorkeWitness { n: 5, length: 3 },
                LiYorkeWitness { n: 9, length: 10 },
            ]
        );
        assert!(witnesses_hold(&same, &w));
        same[15] = false;
        assert!(!witnesses_hold(&same, &w));
    }

    #[test]
    fn verdict_stable_under_horizon() {
        let fp = FixedPoints::new(&example_substitution()).unwrap();
        let small = fp
            .classify_pair(
                0,
                2,
                Direction::Forward,
                PairOptions {
                    witnesses: 2,
                    horizon: Some(50),
                },
            )
            .unwrap();
        let large = fp
            .classify_pair(
                0,
                2,
                Direction::Forward,
                PairOptions {
                    witnesses: 5,
                    horizon: Some(20000),
                },
            )
            .unwrap();
        assert_eq!(small.verdict, large.verdict);
        assert_eq!(
            small.witnesses[..],
            large.witnesses[..small.witnesses.len()]
        );
    }

    #[test]
    fn length_two_pairs() {
        let sub = Substitution::from_words(&[("a", "ab"), ("b", "ba")]).unwrap();
        let fp = FixedPoints::new(&sub).unwrap();
        for u in 0..fp.count() {
            for v in u + 1..fp.count() {
                for d in [Direction::Forward, Direction::Backward] {
                    let c = classify(&fp, u, v, d);
                    assert!(!c.asymptotic || c.proximal);
                }
            }
        }
    }
}
