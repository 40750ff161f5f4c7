use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use super::{SemigroupError, Transformation};

/// A finite semigroup given by its Cayley table.
///
/// Elements are addressed by index. When the semigroup was produced by
/// [`FiniteSemigroup::closure`], each index also carries the concrete
/// [`Transformation`]; semigroups imported from a table carry only labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSemigroup {
    labels: Vec<String>,
    transformations: Option<Vec<Transformation>>,
    table: Vec<usize>,
    size: usize,
    generators: Vec<usize>,
    unit: Option<usize>,
}

/// Serialized form of a Cayley table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CayleyTable {
    pub elements: Vec<String>,
    pub table: Vec<Vec<usize>>,
    pub generators: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transformations: Option<Vec<Transformation>>,
}

impl FiniteSemigroup {
    /// Smallest composition-closed set containing `generators`.
    ///
    /// Elements are ordered breadth-first by word length over the generators,
    /// ties broken lexicographically by image array.
    pub fn closure(generators: &[Transformation]) -> Result<Self, SemigroupError> {
        let first = generators.first().ok_or(SemigroupError::NoGenerators)?;
        let degree = first.degree();
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(SemigroupError::DegreeMismatch {
                left: degree,
                right: g.degree(),
            });
        }
        let gens: Vec<Transformation> = generators
            .iter()
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();

        let mut elements: Vec<Transformation> = gens.clone();
        let mut index: HashMap<Transformation, usize> = elements
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, t)| (t, i))
            .collect();
        let mut frontier = 0..elements.len();
        while !frontier.is_empty() {
            let mut fresh = BTreeSet::new();
            for w in frontier.clone() {
                for g in &gens {
                    let p = elements[w].compose_unchecked(g);
                    if !index.contains_key(&p) {
                        fresh.insert(p);
                    }
                }
            }
            let start = elements.len();
            for t in fresh {
                index.insert(t.clone(), elements.len());
                elements.push(t);
            }
            frontier = start..elements.len();
        }

        let n = elements.len();
        let mut table = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                table[i * n + j] = index[&elements[i].compose_unchecked(&elements[j])];
            }
        }
        let generator_indices = gens.iter().map(|g| index[g]).collect();
        let labels = elements.iter().map(|t| t.to_string()).collect();
        let mut s = Self {
            labels,
            transformations: Some(elements),
            table,
            size: n,
            generators: generator_indices,
            unit: None,
        };
        s.unit = s.find_unit();
        Ok(s)
    }

    /// Builds a semigroup from an explicit table, checking closure,
    /// associativity and that `generators` generate everything.
    pub fn from_table(
        labels: Vec<String>,
        rows: Vec<Vec<usize>>,
        generators: Vec<usize>,
    ) -> Result<Self, SemigroupError> {
        let s = Self::from_table_unchecked(labels, rows, generators)?;
        s.check_associative()?;
        let generated = s.generated_by(&s.generators);
        if generated.len() != s.size {
            return Err(SemigroupError::NotGenerated {
                generated: generated.len(),
                size: s.size,
            });
        }
        Ok(s)
    }

    /// Like [`from_table`](Self::from_table) but skips the associativity and
    /// generation checks. Shape and range are still validated.
    pub fn from_table_unchecked(
        labels: Vec<String>,
        rows: Vec<Vec<usize>>,
        generators: Vec<usize>,
    ) -> Result<Self, SemigroupError> {
        let n = rows.len();
        if n == 0 {
            return Err(SemigroupError::EmptyTable);
        }
        if labels.len() != n {
            return Err(SemigroupError::LabelCount {
                labels: labels.len(),
                size: n,
            });
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(SemigroupError::RaggedTable {
                    row: i,
                    len: row.len(),
                    size: n,
                });
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(SemigroupError::TableEntryOutOfRange {
                        row: i,
                        col: j,
                        value: v,
                    });
                }
                table.push(v);
            }
        }
        if let Some(&g) = generators.iter().find(|&&g| g >= n) {
            return Err(SemigroupError::ElementOutOfRange { index: g, size: n });
        }
        let mut s = Self {
            labels,
            transformations: None,
            table,
            size: n,
            generators,
            unit: None,
        };
        s.unit = s.find_unit();
        Ok(s)
    }

    pub fn from_cayley(cayley: CayleyTable) -> Result<Self, SemigroupError> {
        let mut s = Self::from_table(cayley.elements, cayley.table, cayley.generators)?;
        if let Some(ts) = cayley.transformations {
            if ts.len() != s.size {
                return Err(SemigroupError::LabelCount {
                    labels: ts.len(),
                    size: s.size,
                });
            }
            for i in 0..s.size {
                for j in 0..s.size {
                    if ts[i].compose(&ts[j])? != ts[s.mul(i, j)] {
                        return Err(SemigroupError::TransformationTableMismatch {
                            left: i,
                            right: j,
                        });
                    }
                }
            }
            s.transformations = Some(ts);
        }
        Ok(s)
    }

    pub fn to_cayley(&self) -> CayleyTable {
        CayleyTable {
            elements: self.labels.clone(),
            table: self.rows(),
            generators: self.generators.clone(),
            transformations: self.transformations.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_cayley()).expect("cayley table serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, SemigroupError> {
        let cayley: CayleyTable =
            serde_json::from_str(text).map_err(|e| SemigroupError::Json(e.to_string()))?;
        Self::from_cayley(cayley)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.size + b]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.size).map(|r| r.to_vec()).collect()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn set_labels(&mut self, labels: Vec<String>) {
        assert_eq!(labels.len(), self.size);
        self.labels = labels;
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn unit(&self) -> Option<usize> {
        self.unit
    }

    pub fn transformation(&self, a: usize) -> Option<&Transformation> {
        self.transformations.as_ref().map(|ts| &ts[a])
    }

    pub fn transformations(&self) -> Option<&[Transformation]> {
        self.transformations.as_deref()
    }

    pub fn index_of(&self, t: &Transformation) -> Option<usize> {
        self.transformations.as_ref()?.iter().position(|x| x == t)
    }

    pub fn check_element(&self, a: usize) -> Result<(), SemigroupError> {
        if a < self.size {
            Ok(())
        } else {
            Err(SemigroupError::ElementOutOfRange {
                index: a,
                size: self.size,
            })
        }
    }

    pub fn is_idempotent(&self, a: usize) -> bool {
        self.mul(a, a) == a
    }

    pub fn check_associative(&self) -> Result<(), SemigroupError> {
        for i in 0..self.size {
            for j in 0..self.size {
                let ij = self.mul(i, j);
                for k in 0..self.size {
                    if self.mul(ij, k) != self.mul(i, self.mul(j, k)) {
                        return Err(SemigroupError::NotAssociative { a: i, b: j, c: k });
                    }
                }
            }
        }
        Ok(())
    }

    fn find_unit(&self) -> Option<usize> {
        (0..self.size).find(|&u| (0..self.size).all(|x| self.mul(u, x) == x && self.mul(x, u) == x))
    }

    /// Subsemigroup generated by `seeds`, as a sorted index list.
    pub fn generated_by(&self, seeds: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.size];
        let mut members: Vec<usize> = Vec::new();
        for &s in seeds {
            if !inside[s] {
                inside[s] = true;
                members.push(s);
            }
        }
        let mut cursor = 0;
        while cursor < members.len() {
            let a = members[cursor];
            cursor += 1;
            for &g in seeds {
                for p in [self.mul(a, g), self.mul(g, a)] {
                    if !inside[p] {
                        inside[p] = true;
                        members.push(p);
                    }
                }
            }
        }
        members.sort_unstable();
        members
    }

    pub fn is_closed(&self, subset: &[usize]) -> bool {
        let inside: BTreeSet<usize> = subset.iter().copied().collect();
        subset
            .iter()
            .all(|&a| subset.iter().all(|&b| inside.contains(&self.mul(a, b))))
    }

    /// Restriction of the table to a multiplicatively closed subset. Element
    /// order follows `subset`.
    pub fn subsemigroup(&self, subset: &[usize]) -> Result<FiniteSemigroup, SemigroupError> {
        if subset.is_empty() {
            return Err(SemigroupError::EmptyTable);
        }
        let position: HashMap<usize, usize> =
            subset.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let mut rows = Vec::with_capacity(subset.len());
        for &a in subset {
            let mut row = Vec::with_capacity(subset.len());
            for &b in subset {
                let p = self.mul(a, b);
                row.push(*position.get(&p).ok_or(SemigroupError::NotClosed { a, b })?);
            }
            rows.push(row);
        }
        let labels = subset.iter().map(|&a| self.labels[a].clone()).collect();
        let mut sub = Self::from_table_unchecked(labels, rows, (0..subset.len()).collect())?;
        if let Some(ts) = &self.transformations {
            sub.transformations = Some(subset.iter().map(|&a| ts[a].clone()).collect());
        }
        Ok(sub)
    }

    /// Smallest congruence containing `pairs`, as a class index per element
    /// (classes numbered by first occurrence).
    pub fn congruence(&self, pairs: &[(usize, usize)]) -> Result<Vec<usize>, SemigroupError> {
        let mut parent: Vec<usize> = (0..self.size).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            let mut y = x;
            while parent[y] != r {
                let next = parent[y];
                parent[y] = r;
                y = next;
            }
            r
        }
        let mut pending: Vec<(usize, usize)> = Vec::new();
        for &(a, b) in pairs {
            self.check_element(a)?;
            self.check_element(b)?;
            pending.push((a, b));
        }
        // merging a and b forces ca ~ cb and ac ~ bc for every c
        while let Some((a, b)) = pending.pop() {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra == rb {
                continue;
            }
            parent[ra] = rb;
            for c in 0..self.size {
                pending.push((self.mul(c, a), self.mul(c, b)));
                pending.push((self.mul(a, c), self.mul(b, c)));
            }
        }
        let mut ids: HashMap<usize, usize> = HashMap::new();
        let class = (0..self.size)
            .map(|x| {
                let r = find(&mut parent, x);
                let next = ids.len();
                *ids.entry(r).or_insert(next)
            })
            .collect();
        Ok(class)
    }

    /// Quotient by the congruence given as a class index per element.
    /// Fails if the partition is not compatible with multiplication.
    pub fn quotient(&self, class: &[usize]) -> Result<FiniteSemigroup, SemigroupError> {
        if class.len() != self.size {
            return Err(SemigroupError::Precondition(format!(
                "partition covers {} of {} elements",
                class.len(),
                self.size
            )));
        }
        let k = class.iter().max().map_or(0, |m| m + 1);
        let mut reps = vec![usize::MAX; k];
        for (x, &c) in class.iter().enumerate() {
            if reps[c] == usize::MAX {
                reps[c] = x;
            }
        }
        if reps.contains(&usize::MAX) {
            return Err(SemigroupError::Precondition(
                "class indices are not contiguous".into(),
            ));
        }
        let mut rows = vec![vec![usize::MAX; k]; k];
        for a in 0..self.size {
            for b in 0..self.size {
                let c = class[self.mul(a, b)];
                let slot = &mut rows[class[a]][class[b]];
                if *slot != usize::MAX && *slot != c {
                    return Err(SemigroupError::Precondition(format!(
                        "not a congruence: the class of {a}·{b} is not determined by the classes of its factors"
                    )));
                }
                *slot = c;
            }
        }
        let labels = reps
            .iter()
            .map(|&r| format!("[{}]", self.labels[r]))
            .collect();
        let mut gens: Vec<usize> = self.generators.iter().map(|&g| class[g]).collect();
        gens.sort_unstable();
        gens.dedup();
        Self::from_table_unchecked(labels, rows, gens)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(v: &[usize]) -> Transformation {
        Transformation::new(v.to_vec()).unwrap()
    }

    #[test]
    fn closure_of_identity_is_trivial() {
        let s = FiniteSemigroup::closure(&[Transformation::identity(3)]).unwrap();
        assert_eq!(s.size(), 1);
        assert_eq!(s.unit(), Some(0));
    }

    #[test]
    fn closure_of_phi_has_two_elements() {
        let phi = t(&[0, 0, 1]);
        let s = FiniteSemigroup::closure(std::slice::from_ref(&phi)).unwrap();
        assert_eq!(s.size(), 2);
        assert_eq!(s.transformation(0), Some(&phi));
        assert_eq!(s.transformation(1), Some(&t(&[0, 0, 0])));
        assert_eq!(s.unit(), None);
    }

    #[test]
    fn closure_of_fiber_maps_adds_nothing() {
        let gens = [
            t(&[0, 0, 1]),
            t(&[0, 0, 0]),
            t(&[1, 1, 1]),
            t(&[2, 2, 2]),
            t(&[0, 1, 2]),
        ];
        let s = FiniteSemigroup::closure(&gens).unwrap();
        assert_eq!(s.size(), 5);
        assert!(s.check_associative().is_ok());
    }

    #[test]
    fn closure_rejects_bad_input() {
        assert!(matches!(
            FiniteSemigroup::closure(&[]),
            Err(SemigroupError::NoGenerators)
        ));
        assert!(FiniteSemigroup::closure(&[t(&[0]), t(&[0, 1])]).is_err());
    }

    #[test]
    fn closure_order_is_breadth_first_then_lexicographic() {
        // generators sorted first, then length-2 words
        let s = FiniteSemigroup::closure(&[t(&[1, 2, 0]), t(&[0, 0, 2])]).unwrap();
        assert_eq!(s.transformation(0), Some(&t(&[0, 0, 2])));
        assert_eq!(s.transformation(1), Some(&t(&[1, 2, 0])));
        let level_two: Vec<_> = (2..s.size())
            .map(|i| s.transformation(i).unwrap().clone())
            .collect();
        assert!(level_two.windows(2).take(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn table_import_validates() {
        let bad = FiniteSemigroup::from_table(vec!["x".into()], vec![vec![1]], vec![0]);
        assert!(matches!(
            bad,
            Err(SemigroupError::TableEntryOutOfRange { .. })
        ));
        // x*y = y*x = x, x*x = y, y*y = y is not associative? check a non-associative magma
        let rows = vec![vec![1, 0], vec![0, 0]];
        let r = FiniteSemigroup::from_table(vec!["x".into(), "y".into()], rows, vec![0]);
        assert!(matches!(r, Err(SemigroupError::NotAssociative { .. })));
    }

    #[test]
    fn json_round_trip() {
        let s = FiniteSemigroup::closure(&[t(&[0, 0, 1]), t(&[0, 1, 2])]).unwrap();
        let back = FiniteSemigroup::from_json(&s.to_json()).unwrap();
        assert_eq!(back, s);
    }
}
