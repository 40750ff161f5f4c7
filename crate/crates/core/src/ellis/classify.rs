use std::collections::BTreeSet;

use serde::Serialize;

use crate::semigroup::{kernel, structure_report, StructureReport, Transformation};
use crate::substitution::{
    higher_block_coding, scan_witnesses, Direction, FixedPoints, LiYorkeWitness,
    PairClassification, PairOptions, Verdict,
};

use super::{EllisError, FiberSemigroup};

/// What the theorems predict from the pair verdicts alone. Empty when the
/// substitution is not primitive.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Predictions {
    pub nearly_simple: Option<bool>,
    pub completely_regular: Option<bool>,
    /// Only when forward and backward proximality are both transitive.
    pub minimal_left_ideals: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComputedAlgebra {
    pub completely_regular: bool,
    pub nearly_simple: Option<bool>,
    pub minimal_left_ideals: usize,
    pub kernel: Vec<String>,
    pub forward_kernel: Vec<String>,
    pub backward_kernel: Vec<String>,
    pub directional_kernels_equal: bool,
    pub non_completely_regular: Vec<String>,
}

/// A fiber element realizing the non-regularity forced by a Li-Yorke pair:
/// it separates the pair, sends it to an asymptotic pair, and
/// `im f² ⊊ im f`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessMap {
    pub pair: (String, String),
    pub direction: Direction,
    pub element: String,
    pub map: String,
    /// Position of a column reading off this map, if it is a column.
    pub position: Option<i64>,
    pub image: Vec<String>,
    pub square_image: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub minimality_guaranteed: bool,
    /// Serialized at the top level of the analysis report instead.
    #[serde(skip)]
    pub pairs: Vec<PairClassification>,
    pub forward_almost_distal: bool,
    pub backward_almost_distal: bool,
    pub almost_distal: bool,
    /// Transitivity is evaluated on the computed fixed-point pairs only.
    pub forward_proximality_transitive: bool,
    pub backward_proximality_transitive: bool,
    pub proximality_transitive: bool,
    pub predicted: Predictions,
    pub computed: ComputedAlgebra,
    /// First element failing complete regularity.
    pub witness: Option<String>,
    pub witness_maps: Vec<WitnessMap>,
    /// Li-Yorke pairs for which no single fiber element separates the pair
    /// onto an asymptotic pair; the fiber over the fixed points need not
    /// contain one.
    pub unwitnessed_pairs: Vec<String>,
    /// Prediction/algebra mismatches; empty on success.
    pub inconsistencies: Vec<String>,
}

impl ClassificationReport {
    pub fn is_consistent(&self) -> bool {
        self.inconsistencies.is_empty()
    }

    pub fn pair(&self, u: usize, v: usize, direction: Direction) -> Option<&PairClassification> {
        let (u, v) = (u.min(v), u.max(v));
        self.pairs
            .iter()
            .find(|p| p.first == u && p.second == v && p.direction == direction)
    }

    pub fn has_li_yorke_pair(&self) -> bool {
        self.pairs.iter().any(|p| p.verdict == Verdict::LiYorke)
    }
}

fn names(fiber: &FiberSemigroup, idx: &[usize]) -> Vec<String> {
    idx.iter().map(|&a| fiber.name(a).to_string()).collect()
}

fn transitive(n: usize, related: &dyn Fn(usize, usize) -> bool) -> bool {
    (0..n)
        .all(|u| (0..n).all(|v| (0..n).all(|w| !(related(u, v) && related(v, w)) || related(u, w))))
}

/// Classifies every pair of fixed points in both directions and checks the
/// theorems against the computed fiber semigroup.
pub fn classify_system(
    fp: &FixedPoints,
    fiber: &FiberSemigroup,
    options: PairOptions,
) -> Result<ClassificationReport, EllisError> {
    let n = fp.count();
    let shadow = fp.column_shadow();
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            for dir in [Direction::Forward, Direction::Backward] {
                pairs.push(fp.classify_pair_with(&shadow, u, v, dir, options)?);
            }
        }
    }
    let lookup = |u: usize, v: usize, dir: Direction| {
        let (u, v) = (u.min(v), u.max(v));
        pairs
            .iter()
            .find(|p| p.first == u && p.second == v && p.direction == dir)
            .expect("all pairs classified")
    };
    let proximal = |u: usize, v: usize, dir: Direction| u == v || lookup(u, v, dir).proximal;
    let forward_almost_distal = pairs
        .iter()
        .filter(|p| p.direction == Direction::Forward)
        .all(|p| p.verdict != Verdict::LiYorke);
    let backward_almost_distal = pairs
        .iter()
        .filter(|p| p.direction == Direction::Backward)
        .all(|p| p.verdict != Verdict::LiYorke);
    let almost_distal = forward_almost_distal && backward_almost_distal;
    let fwd_t = transitive(n, &|u, v| proximal(u, v, Direction::Forward));
    let bwd_t = transitive(n, &|u, v| proximal(u, v, Direction::Backward));
    let two_sided = |u: usize, v: usize| {
        proximal(u, v, Direction::Forward) || proximal(u, v, Direction::Backward)
    };
    let prox_t = transitive(n, &two_sided);

    let s = &fiber.semigroup;
    let report: StructureReport = structure_report(s);
    let k_base: BTreeSet<usize> = report.kernel.iter().copied().collect();
    let directional_kernel = |part: &[usize]| -> BTreeSet<usize> {
        let sub = s
            .subsemigroup(part)
            .expect("directional shadows are closed");
        kernel(&sub).kernel.into_iter().map(|i| part[i]).collect()
    };
    let k_fwd = directional_kernel(&fiber.forward);
    let k_bwd = directional_kernel(&fiber.backward);
    let computed = ComputedAlgebra {
        completely_regular: report.is_completely_regular,
        nearly_simple: report.is_nearly_simple,
        minimal_left_ideals: report.minimal_left_ideals.len(),
        kernel: names(fiber, &report.kernel),
        forward_kernel: names(fiber, &k_fwd.iter().copied().collect::<Vec<_>>()),
        backward_kernel: names(fiber, &k_bwd.iter().copied().collect::<Vec<_>>()),
        directional_kernels_equal: k_fwd == k_bwd,
        non_completely_regular: names(fiber, &report.non_completely_regular),
    };

    let primitive = fp.substitution().is_primitive();
    let predicted = Predictions {
        nearly_simple: primitive.then_some(almost_distal),
        completely_regular: primitive.then_some(almost_distal),
        minimal_left_ideals: (primitive && fwd_t && bwd_t).then_some(if prox_t { 1 } else { 2 }),
    };

    let mut bad = Vec::new();
    let label = |w: usize| fp.label(w);

    // proximal ⟺ some element collapses the pair, per direction and overall
    let collapses = |part: &[usize], u: usize, v: usize| {
        part.iter().any(|&g| {
            let t = fiber.map(g);
            t.apply(u) == t.apply(v)
        })
    };
    let all: Vec<usize> = s.elements().collect();
    for u in 0..n {
        for v in u + 1..n {
            for (dir, part) in [
                (Direction::Forward, &fiber.forward),
                (Direction::Backward, &fiber.backward),
            ] {
                if proximal(u, v, dir) != collapses(part, u, v) {
                    bad.push(format!(
                        "{dir:?} proximality of ({}, {}) disagrees with the collapsing elements of the directional shadow",
                        label(u),
                        label(v)
                    ));
                }
            }
            if two_sided(u, v) != collapses(&all, u, v) {
                bad.push(format!(
                    "proximality of ({}, {}) disagrees with the collapsing elements of the fiber semigroup",
                    label(u),
                    label(v)
                ));
            }
        }
    }
    if prox_t != (report.minimal_left_ideals.len() == 1) {
        bad.push(format!(
            "proximality transitive = {prox_t} but the kernel has {} minimal left ideals",
            report.minimal_left_ideals.len()
        ));
    }
    let union: BTreeSet<usize> = k_fwd.union(&k_bwd).copied().collect();
    if union != k_base {
        bad.push("kernel is not the union of the directional kernels".into());
    }
    for part in [&fiber.forward, &fiber.backward] {
        if !s.elements().all(|x| {
            part.iter()
                .all(|&y| part.binary_search(&s.mul(x, y)).is_ok())
        }) {
            bad.push("a directional shadow is not a left ideal of the fiber semigroup".into());
        }
    }
    if fwd_t && bwd_t {
        let count = report.minimal_left_ideals.len();
        let ok = if prox_t {
            count == 1 && k_fwd == k_bwd
        } else {
            count == 2 && k_fwd.is_disjoint(&k_bwd)
        };
        if !ok {
            bad.push(format!(
                "directional proximality transitive, proximality transitive = {prox_t}, but {count} minimal left ideals with directional kernels {:?} and {:?}",
                computed.forward_kernel, computed.backward_kernel
            ));
        }
    }
    if report.is_nearly_simple == Some(true) && !report.is_completely_regular {
        bad.push("nearly simple but not completely regular".into());
    }

    let mut witness_maps = Vec::new();
    let mut unwitnessed = Vec::new();
    if primitive {
        if almost_distal
            && !(report.is_completely_regular && report.is_nearly_simple != Some(false))
        {
            bad.push(format!(
                "almost distal but the fiber semigroup is not completely regular and nearly simple (non-regular: {:?})",
                computed.non_completely_regular
            ));
        }
        let li_yorke: Vec<&PairClassification> = pairs
            .iter()
            .filter(|p| p.verdict == Verdict::LiYorke)
            .collect();
        if !li_yorke.is_empty() && report.is_completely_regular {
            let p = li_yorke[0];
            bad.push(format!(
                "{:?} Li-Yorke pair ({}, {}) but the fiber semigroup is completely regular",
                p.direction,
                label(p.first),
                label(p.second)
            ));
        }
        for p in li_yorke {
            match find_witness_map(fp, fiber, &pairs, p.first, p.second, p.direction) {
                Ok(w) => witness_maps.push(w),
                Err(_) => unwitnessed.push(format!(
                    "{:?} ({}, {})",
                    p.direction,
                    label(p.first),
                    label(p.second)
                )),
            }
        }
    }

    Ok(ClassificationReport {
        minimality_guaranteed: primitive,
        witness: computed.non_completely_regular.first().cloned(),
        pairs,
        forward_almost_distal,
        backward_almost_distal,
        almost_distal,
        forward_proximality_transitive: fwd_t,
        backward_proximality_transitive: bwd_t,
        proximality_transitive: prox_t,
        predicted,
        computed,
        witness_maps,
        unwitnessed_pairs: unwitnessed,
        inconsistencies: bad,
    })
}

fn image_of(t: &Transformation) -> Vec<usize> {
    t.image().into_iter().collect()
}

fn find_witness_map(
    fp: &FixedPoints,
    fiber: &FiberSemigroup,
    pairs: &[PairClassification],
    u: usize,
    v: usize,
    direction: Direction,
) -> Result<WitnessMap, EllisError> {
    let asymptotic = |a: usize, b: usize| {
        a == b
            || pairs.iter().any(|p| {
                p.first == a.min(b)
                    && p.second == a.max(b)
                    && p.direction == direction
                    && p.asymptotic
            })
    };
    let part = match direction {
        Direction::Forward => &fiber.forward,
        Direction::Backward => &fiber.backward,
    };
    let s = &fiber.semigroup;
    for &f in part {
        let t = fiber.map(f);
        let (a, b) = (t.apply(u), t.apply(v));
        if a == b || !asymptotic(a, b) {
            continue;
        }
        let sq = fiber.map(s.mul(f, f));
        let (im, im2) = (image_of(t), image_of(sq));
        let strict = im2.len() < im.len() && im2.iter().all(|x| im.contains(x));
        let regular = crate::semigroup::is_completely_regular_element(s, f).completely_regular;
        if strict && !regular {
            let lbl = |xs: &[usize]| xs.iter().map(|&w| fp.label(w)).collect();
            return Ok(WitnessMap {
                pair: (fp.label(u), fp.label(v)),
                direction,
                element: fiber.name(f).to_string(),
                map: fiber.render_map(f),
                position: fiber
                    .columns
                    .iter()
                    .find(|c| &c.map == t)
                    .map(|c| c.position),
                image: lbl(&im),
                square_image: lbl(&im2),
            });
        }
    }
    Err(EllisError::NoWitness(format!(
        "no element of the {direction:?} shadow separates ({}, {}) onto an asymptotic pair while failing complete regularity",
        fp.label(u),
        fp.label(v)
    )))
}

/// The fiber element forced by the Li-Yorke pair `(u, v)`; rejects pairs
/// that are not Li-Yorke in `direction`.
pub fn li_yorke_witness_map(
    fp: &FixedPoints,
    fiber: &FiberSemigroup,
    u: usize,
    v: usize,
    direction: Direction,
) -> Result<WitnessMap, EllisError> {
    let mut pairs = Vec::new();
    let shadow = fp.column_shadow();
    let opts = PairOptions {
        witnesses: 0,
        horizon: Some(1),
    };
    let p = fp.classify_pair_with(&shadow, u, v, direction, opts)?;
    if p.verdict != Verdict::LiYorke {
        return Err(EllisError::NotLiYorke(fp.label(u), fp.label(v)));
    }
    for a in 0..fp.count() {
        for b in a + 1..fp.count() {
            pairs.push(fp.classify_pair_with(&shadow, a, b, direction, opts)?);
        }
    }
    find_witness_map(fp, fiber, &pairs, u, v, direction)
}

/// Li-Yorke witnesses for `(x_u, x_v)` after recoding both sequences by
/// their `(2r+1)`-blocks.
pub fn recoded_witnesses(
    fp: &FixedPoints,
    u: usize,
    v: usize,
    direction: Direction,
    radius: usize,
    horizon: u64,
    count: usize,
) -> Vec<LiYorkeWitness> {
    let h = horizon as i64 + radius as i64;
    let (from, to) = match direction {
        Direction::Forward => (-(radius as i64), h),
        Direction::Backward => (-h + 1, radius as i64 + 1),
    };
    let x = fp.window_covering(u, from, to);
    let y = fp.window_covering(v, from, to);
    let coded = higher_block_coding(&[&x, &y], radius);
    let (cx, cy) = (coded[0].as_window(), coded[1].as_window());
    let same: Vec<bool> = (0..horizon as i64)
        .map(|i| {
            let m = direction.sign() * i;
            cx.get(m) == cy.get(m)
        })
        .collect();
    scan_witnesses(&same, count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::substitution::{bijective_substitution, example_substitution, Substitution};

    fn setup(sub: &Substitution) -> (FixedPoints, FiberSemigroup) {
        let fp = FixedPoints::new(sub).unwrap();
        let fiber = FiberSemigroup::build(&fp, &fp.column_shadow()).unwrap();
        (fp, fiber)
    }

    #[test]
    fn example_classification() {
        let (fp, fiber) = setup(&example_substitution());
        let r = classify_system(&fp, &fiber, PairOptions::default()).unwrap();
        assert!(r.is_consistent(), "{:?}", r.inconsistencies);
        assert!(r.backward_almost_distal && !r.forward_almost_distal);
        assert!(!r.computed.completely_regular);
        assert_eq!(r.witness.as_deref(), Some("φ"));
        assert!(r.proximality_transitive);
        assert!(r.computed.directional_kernels_equal);
        assert_eq!(r.predicted.minimal_left_ideals, Some(1));
        assert_eq!(r.witness_maps.len(), 2);
        assert!(r.witness_maps.iter().all(|w| w.element == "φ"));
        assert!(r.unwitnessed_pairs.is_empty());
    }

    #[test]
    fn bijective_classification() {
        let (fp, fiber) = setup(&bijective_substitution());
        let r = classify_system(&fp, &fiber, PairOptions::default()).unwrap();
        assert!(r.is_consistent(), "{:?}", r.inconsistencies);
        assert!(r.almost_distal);
        assert_eq!(r.predicted.nearly_simple, Some(true));
        assert!(r.computed.completely_regular);
        assert_eq!(r.witness, None);
    }

    #[test]
    fn witness_map_for_example_pairs() {
        let (fp, fiber) = setup(&example_substitution());
        let w = li_yorke_witness_map(&fp, &fiber, 1, 2, Direction::Forward).unwrap();
        assert_eq!(w.element, "φ");
        assert_eq!(w.image, vec!["a", "b"]);
        assert_eq!(w.square_image, vec!["a"]);
        assert!(li_yorke_witness_map(&fp, &fiber, 0, 2, Direction::Forward).is_ok());
        assert!(matches!(
            li_yorke_witness_map(&fp, &fiber, 0, 1, Direction::Forward),
            Err(EllisError::NotLiYorke(..))
        ));
    }

    #[test]
    fn recoding_keeps_li_yorke() {
        let fp = FixedPoints::new(&example_substitution()).unwrap();
        for r in 0..3 {
            assert!(
                !recoded_witnesses(&fp, 0, 2, Direction::Forward, r, 5u64.pow(5), 3).is_empty()
            );
        }
    }
}
