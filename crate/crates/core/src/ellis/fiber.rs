use serde::Serialize;

use crate::semigroup::{FiniteSemigroup, Transformation};
use crate::substitution::{ColumnMap, ColumnShadow, FixedPoints, Side};

use super::EllisError;

/// Finite shadow of the Ellis semigroup on the fiber of the `σ∘θ`-fixed
/// points: the closure of the occurring column maps.
#[derive(Clone, Debug)]
pub struct FiberSemigroup {
    /// Labels of the fixed points (their germs).
    pub points: Vec<String>,
    pub semigroup: FiniteSemigroup,
    /// Closure of the columns recurring to the right, as indices into
    /// `semigroup`.
    pub forward: Vec<usize>,
    /// Closure of the columns recurring to the left.
    pub backward: Vec<usize>,
    pub unit: Option<usize>,
    /// Occurring columns (both sides and the origin) with the positions they were read at.
    pub columns: Vec<ColumnMap>,
}

impl FiberSemigroup {
    pub fn build(fp: &FixedPoints, shadow: &ColumnShadow) -> Result<Self, EllisError> {
        let columns = shadow.occurring(fp, Side::All);
        let maps: Vec<Transformation> = columns.iter().map(|c| c.map.clone()).collect();
        let mut semigroup = FiniteSemigroup::closure(&maps)?;
        let points = fp.labels();
        semigroup.set_labels(element_names(&semigroup, &points));

        let side = |s: Side| -> Result<Vec<usize>, EllisError> {
            let gens: Vec<Transformation> =
                shadow.occurring(fp, s).into_iter().map(|c| c.map).collect();
            let sub = FiniteSemigroup::closure(&gens)?;
            let mut idx: Vec<usize> = sub
                .transformations()
                .expect("closure keeps transformations")
                .iter()
                .map(|t| {
                    semigroup
                        .index_of(t)
                        .expect("directional shadow lies in the base")
                })
                .collect();
            idx.sort_unstable();
            Ok(idx)
        };
        let forward = side(Side::Positive)?;
        let backward = side(Side::Negative)?;
        let unit = semigroup.unit();
        Ok(Self {
            points,
            semigroup,
            forward,
            backward,
            unit,
            columns,
        })
    }

    pub fn size(&self) -> usize {
        self.semigroup.size()
    }

    pub fn map(&self, a: usize) -> &Transformation {
        self.semigroup
            .transformation(a)
            .expect("fiber elements are transformations")
    }

    pub fn name(&self, a: usize) -> &str {
        self.semigroup.label(a)
    }

    pub fn index_by_name(&self, name: &str) -> Option<usize> {
        self.semigroup.elements().find(|&a| self.name(a) == name)
    }

    /// `(a↦a, b↦a, c↦b)`.
    pub fn render_map(&self, a: usize) -> String {
        let t = self.map(a);
        let parts: Vec<String> = (0..t.degree())
            .map(|w| format!("{}↦{}", self.points[w], self.points[t.apply(w)]))
            .collect();
        format!("({})", parts.join(", "))
    }

    pub fn forward_semigroup(&self) -> FiniteSemigroup {
        self.semigroup
            .subsemigroup(&self.forward)
            .expect("forward shadow is closed")
    }

    pub fn backward_semigroup(&self) -> FiniteSemigroup {
        self.semigroup
            .subsemigroup(&self.backward)
            .expect("backward shadow is closed")
    }

    /// All products `x·y` as name triples, in element order.
    pub fn products(&self) -> Vec<(String, String, String)> {
        let s = &self.semigroup;
        let mut out = Vec::with_capacity(s.size() * s.size());
        for x in s.elements() {
            for y in s.elements() {
                out.push((
                    self.name(x).into(),
                    self.name(y).into(),
                    self.name(s.mul(x, y)).into(),
                ));
            }
        }
        out
    }
}

/// `id` for the identity, `Π_x` for the constant map onto `x`, `φ…` for
/// other non-bijective maps and `ψ…` for other permutations; the families
/// are numbered only when they have more than one member.
fn element_names(s: &FiniteSemigroup, points: &[String]) -> Vec<String> {
    let ts = s.transformations().expect("closure keeps transformations");
    let count = |f: &dyn Fn(&Transformation) -> bool| {
        ts.iter()
            .filter(|t| !t.is_identity() && t.constant_value().is_none() && f(t))
            .count()
    };
    let phis = count(&|t| !t.is_permutation());
    let psis = count(&|t| t.is_permutation());
    let (mut phi, mut psi) = (0, 0);
    ts.iter()
        .map(|t| {
            if t.is_identity() {
                "id".to_string()
            } else if let Some(v) = t.constant_value().filter(|_| t.degree() > 1) {
                format!("Π_{}", points[v])
            } else if t.is_permutation() {
                psi += 1;
                if psis == 1 {
                    "ψ".into()
                } else {
                    format!("ψ{psi}")
                }
            } else {
                phi += 1;
                if phis == 1 {
                    "φ".into()
                } else {
                    format!("φ{phi}")
                }
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CayleyView {
    pub elements: Vec<String>,
    pub maps: Vec<String>,
    pub table: Vec<Vec<String>>,
}

pub fn cayley_of_fiber(fiber: &FiberSemigroup) -> CayleyView {
    let s = &fiber.semigroup;
    CayleyView {
        elements: s.labels().to_vec(),
        maps: s.elements().map(|a| fiber.render_map(a)).collect(),
        table: s
            .elements()
            .map(|x| {
                s.elements()
                    .map(|y| fiber.name(s.mul(x, y)).to_string())
                    .collect()
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::substitution::{bijective_substitution, example_substitution, Substitution};

    fn fiber(sub: &Substitution) -> FiberSemigroup {
        let fp = FixedPoints::new(sub).unwrap();
        FiberSemigroup::build(&fp, &fp.column_shadow()).unwrap()
    }

    #[test]
    fn example_fiber() {
        let f = fiber(&example_substitution());
        let mut names: Vec<&str> = f.semigroup.labels().iter().map(String::as_str).collect();
        names.sort_unstable();
        assert_eq!(names, vec!["id", "Π_a", "Π_b", "Π_c", "φ"]);
        let phi = f.index_by_name("φ").unwrap();
        assert_eq!(f.render_map(phi), "(a↦a, b↦a, c↦b)");
        let fwd: Vec<&str> = f.forward.iter().map(|&a| f.name(a)).collect();
        assert!(fwd.contains(&"φ"));
        let mut bwd: Vec<&str> = f.backward.iter().map(|&a| f.name(a)).collect();
        bwd.sort_unstable();
        assert_eq!(bwd, vec!["Π_a", "Π_b", "Π_c"]);
    }

    #[test]
    fn example_products() {
        let f = fiber(&example_substitution());
        let s = &f.semigroup;
        let n = |x: &str| f.index_by_name(x).unwrap();
        let mul = |x: &str, y: &str| f.name(s.mul(n(x), n(y))).to_string();
        assert_eq!(mul("φ", "φ"), "Π_a");
        assert_eq!(mul("φ", "Π_a"), "Π_a");
        assert_eq!(mul("Π_a", "φ"), "Π_a");
        assert_eq!(mul("φ", "Π_b"), "Π_a");
        assert_eq!(mul("φ", "Π_c"), "Π_b");
        assert_eq!(mul("Π_b", "φ"), "Π_b");
        assert_eq!(mul("Π_c", "φ"), "Π_c");
        for x in ["Π_a", "Π_b", "Π_c"] {
            for y in ["Π_a", "Π_b", "Π_c"] {
                assert_eq!(mul(x, y), x);
            }
        }
        let view = cayley_of_fiber(&f);
        assert_eq!(view.table.len(), 5);
    }

    #[test]
    fn bijective_fiber_is_a_group() {
        let f = fiber(&bijective_substitution());
        let mut names: Vec<&str> = f.semigroup.labels().iter().map(String::as_str).collect();
        names.sort_unstable();
        assert_eq!(names, vec!["id", "ψ"]);
        assert_eq!(f.forward, vec![0, 1]);
        assert_eq!(f.backward, vec![0, 1]);
    }

    #[test]
    fn single_letter_fiber_is_trivial() {
        let f = fiber(&Substitution::from_words(&[("a", "aa")]).unwrap());
        assert_eq!(f.size(), 1);
        assert_eq!(f.name(0), "id");
    }
}
