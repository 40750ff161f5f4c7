use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::semigroup::{
    find_isomorphism, greens, is_completely_regular_element, kernel, left_simple_dichotomy,
    rees_decompose, rees_normalize, rees_semigroup, structure_report, Dichotomy, FiniteSemigroup,
    ReesData, ReesElement, Transformation,
};

use super::raw::{self, Set};
use super::{enumerate_transformations, OracleError, OracleOptions, OracleReport, Suite};
use crate::ellis::FiberSemigroup;
use crate::substitution::{example_substitution, FixedPoints};

/// Completely regular maps of each degree: 1, 4, 21, 148.
pub fn cpreg_counts() -> [usize; 4] {
    [1, 4, 21, 148]
}

/// For every map: `fxf = f ∧ fx = xf` for some power `x`, bijectivity on
/// the image, and `im f = im f²` must agree with each other and with the
/// structure code.
pub fn verify_cpreg_criterion(degree: usize) -> Result<OracleReport, OracleError> {
    let mut report = OracleReport::new("cpreg");
    for n in 1..=degree {
        let maps: Vec<Transformation> = enumerate_transformations(n)?.collect();
        let results: Vec<(bool, Vec<String>)> = maps
            .par_iter()
            .map(|t| {
                let f = t.images().to_vec();
                let powers = raw::cyclic_powers(&f);
                let a = powers.iter().any(|x| {
                    raw::compose(&raw::compose(&f, x), &f) == f
                        && raw::compose(&f, x) == raw::compose(x, &f)
                });
                let image: BTreeSet<usize> = f.iter().copied().collect();
                let restricted: BTreeSet<usize> = image.iter().map(|&x| f[x]).collect();
                let b = restricted.len() == image.len();
                let square: BTreeSet<usize> = raw::compose(&f, &f).into_iter().collect();
                let c = square == image;
                let s =
                    FiniteSemigroup::closure(std::slice::from_ref(t)).expect("single generator");
                let idx = s.index_of(t).expect("generator is an element");
                let core = is_completely_regular_element(&s, idx).completely_regular;
                let mut bad = Vec::new();
                if !(a == b && b == c) {
                    bad.push(format!(
                        "{t}: power criterion {a}, bijective on image {b}, stable image {c}"
                    ));
                }
                if core != a {
                    bad.push(format!(
                        "{t}: structure code says completely regular = {core}, brute force {a}"
                    ));
                }
                (a, bad)
            })
            .collect();
        report.instances += maps.len();
        report.bump(format!("degree {n} maps"), maps.len());
        report.bump(
            format!("degree {n} completely regular"),
            results.iter().filter(|r| r.0).count(),
        );
        for (_, bad) in results {
            report.checks += 2;
            for b in bad {
                report.fail(b);
            }
        }
    }
    Ok(report)
}

pub struct CorpusEntry {
    pub name: String,
    pub semigroup: FiniteSemigroup,
}

fn table(name: &str, n: usize, f: impl Fn(usize, usize) -> usize) -> CorpusEntry {
    let rows = (0..n).map(|x| (0..n).map(|y| f(x, y)).collect()).collect();
    let labels = (0..n).map(|x| x.to_string()).collect();
    CorpusEntry {
        name: name.to_string(),
        semigroup: FiniteSemigroup::from_table(labels, rows, (0..n).collect())
            .expect("named table is a semigroup"),
    }
}

/// Every closure of one or two maps of degree up to `closure_degree`, a few
/// named tables, and seeded random three-generator closures at degree 4.
pub fn semigroup_corpus(options: &OracleOptions) -> Result<Vec<CorpusEntry>, OracleError> {
    let mut out = vec![
        table("LZ3", 3, |x, _| x),
        table("RZ2", 2, |_, y| y),
        table("Z4", 4, |x, y| (x + y) % 4),
        fiber_of_worked_example(),
    ];
    for n in 1..=options.closure_degree.min(3) {
        let maps: Vec<Transformation> = enumerate_transformations(n)?.collect();
        for i in 0..maps.len() {
            for j in i..maps.len() {
                let gens: Vec<Transformation> = if i == j {
                    vec![maps[i].clone()]
                } else {
                    vec![maps[i].clone(), maps[j].clone()]
                };
                let s = FiniteSemigroup::closure(&gens).expect("maps of one degree");
                let name = gens
                    .iter()
                    .map(|g| g.to_string())
                    .collect::<Vec<_>>()
                    .join(" ");
                out.push(CorpusEntry {
                    name: format!("⟨{name}⟩"),
                    semigroup: s,
                });
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    for _ in 0..options.random_closures {
        let gens: Vec<Transformation> = (0..3)
            .map(|_| {
                Transformation::new((0..4).map(|_| rng.gen_range(0..4)).collect())
                    .expect("in range")
            })
            .collect();
        let name = gens
            .iter()
            .map(|g| g.to_string())
            .collect::<Vec<_>>()
            .join(" ");
        out.push(CorpusEntry {
            name: format!("⟨{name}⟩"),
            semigroup: FiniteSemigroup::closure(&gens).expect("degree 4"),
        });
    }
    Ok(out)
}

fn fiber_of_worked_example() -> CorpusEntry {
    let fp =
        FixedPoints::new(&example_substitution()).expect("bundled substitution has fixed points");
    let fiber = FiberSemigroup::build(&fp, &fp.column_shadow()).expect("column maps close");
    CorpusEntry {
        name: "E^fib".into(),
        semigroup: fiber.semigroup,
    }
}

fn sets(v: &[Vec<usize>]) -> BTreeSet<Set> {
    v.iter().map(|x| x.iter().copied().collect()).collect()
}

/// Kernel = disjoint union of minimal left ideals, each with an
/// idempotent, and simple.
pub fn verify_kernel_structure(corpus: &[CorpusEntry]) -> OracleReport {
    let results: Vec<OracleReport> = corpus
        .par_iter()
        .map(|entry| {
            let s = &entry.semigroup;
            let mut r = OracleReport::new("kernel");
            let name = &entry.name;
            let Some(k) = raw::kernel(s) else {
                r.fail(format!("{name}: no smallest ideal"));
                return r;
            };
            let core = kernel(s);
            r.check(core.kernel.iter().copied().collect::<Set>() == k, || {
                format!("{name}: kernel differs")
            });
            let raw_left: BTreeSet<Set> = raw::minimal_left_ideals(s);
            r.check(sets(&core.minimal_left_ideals) == raw_left, || {
                format!("{name}: minimal left ideals differ")
            });
            let union: Set = raw_left.iter().flatten().copied().collect();
            let total: usize = raw_left.iter().map(|l| l.len()).sum();
            r.check(union == k && total == k.len(), || {
                format!("{name}: kernel is not the disjoint union of the minimal left ideals")
            });
            let idem = raw::idempotents(s);
            r.check(raw_left.iter().all(|l| !l.is_disjoint(&idem)), || {
                format!("{name}: a minimal left ideal has no idempotent")
            });
            let simple = k.iter().all(|&a| {
                let mut kak: Set = Set::from([a]);
                for &x in &k {
                    kak.insert(s.mul(x, a));
                    kak.insert(s.mul(a, x));
                    for &y in &k {
                        kak.insert(s.mul(s.mul(x, a), y));
                    }
                }
                kak == k
            });
            r.check(simple, || format!("{name}: kernel is not simple"));
            r.instances = 1;
            r.bump(format!("{} minimal left ideal(s)", raw_left.len()), 1);
            r
        })
        .collect();
    let mut report = OracleReport::new("kernel");
    for r in results {
        report.merge_same(r);
    }
    report
}

/// Completely regular ⟺ every H-class is a group ⟺ the maximal subgroups
/// cover the semigroup.
pub fn verify_union_of_groups(corpus: &[CorpusEntry]) -> OracleReport {
    let results: Vec<OracleReport> = corpus
        .par_iter()
        .map(|entry| {
            let s = &entry.semigroup;
            let name = &entry.name;
            let mut r = OracleReport::new("union");
            r.instances = 1;
            let cr = s.elements().all(|a| raw::is_completely_regular(s, a));
            let h = raw::h_classes(s);
            let idem = raw::idempotents(s);
            let groups = h.iter().all(|c| !c.is_disjoint(&idem));
            let cover: Set = h.iter().filter(|c| !c.is_disjoint(&idem)).flatten().copied().collect();
            let partition = cover.len() == s.size();
            r.check(cr == groups && groups == partition, || {
                format!("{name}: completely regular {cr}, H-classes groups {groups}, subgroups cover {partition}")
            });
            r.check(structure_report(s).is_completely_regular == cr, || {
                format!("{name}: structure code disagrees on complete regularity")
            });
            r.check(sets(&greens(s).h_classes) == h, || format!("{name}: H-classes differ"));
            r.bump(if cr { "completely regular" } else { "not completely regular" }, 1);
            r
        })
        .collect();
    let mut report = OracleReport::new("union");
    for r in results {
        report.merge_same(r);
    }
    report
}

pub struct ReesInstance {
    pub data: ReesData,
    pub label: String,
}

fn cyclic_group(n: usize) -> FiniteSemigroup {
    let rows = (0..n)
        .map(|x| (0..n).map(|y| (x + y) % n).collect())
        .collect();
    FiniteSemigroup::from_table(
        (0..n).map(|x| x.to_string()).collect(),
        rows,
        (0..n).collect(),
    )
    .expect("cyclic group table")
}

/// Every sandwich matrix for groups of order below `group_order`, and a
/// seeded sample per shape at `group_order` itself when it is 3.
pub fn rees_instances(options: &OracleOptions) -> Vec<ReesInstance> {
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed ^ 0x5ee5);
    for order in 1..=options.group_order {
        let g = cyclic_group(order);
        for i_count in 1..=options.max_index {
            for lambda_count in 1..=options.max_index {
                let cells = i_count * lambda_count;
                let exhaustive = order <= 2;
                let codes: Vec<usize> = if exhaustive {
                    (0..order.pow(cells as u32)).collect()
                } else {
                    (0..options.rees_samples)
                        .map(|_| rng.gen_range(0..order.pow(cells as u32)))
                        .collect()
                };
                for code in codes {
                    let mut c = code;
                    let sandwich: Vec<Vec<usize>> = (0..lambda_count)
                        .map(|_| {
                            (0..i_count)
                                .map(|_| {
                                    let v = c % order;
                                    c /= order;
                                    v
                                })
                                .collect()
                        })
                        .collect();
                    let label = format!("G=Z{order} I={i_count} Λ={lambda_count} A={sandwich:?}");
                    let data = ReesData::new(g.clone(), i_count, lambda_count, sandwich)
                        .expect("valid data");
                    out.push(ReesInstance { data, label });
                }
            }
        }
    }
    out
}

/// Built matrix semigroups are completely simple, decompose and rebuild
/// isomorphically, normalize isomorphically, and have exactly the
/// idempotents `(i, a_{λi}⁻¹, λ)`.
pub fn verify_rees_roundtrip(instances: &[ReesInstance]) -> OracleReport {
    let results: Vec<OracleReport> = instances
        .par_iter()
        .map(|inst| {
            let d = &inst.data;
            let name = &inst.label;
            let mut r = OracleReport::new("rees");
            r.instances = 1;
            let s = rees_semigroup(d);
            let simple = raw::is_simple(&s) && !raw::idempotents(&s).is_empty();
            r.check(simple, || format!("{name}: not completely simple"));
            match rees_decompose(&s) {
                Ok(dec) => {
                    let rebuilt = rees_semigroup(&dec.data);
                    r.check(raw::is_isomorphism(&rebuilt, &s, &dec.isomorphism), || {
                        format!("{name}: decomposition map is not an isomorphism")
                    });
                    r.check(find_isomorphism(&rebuilt, &s).is_some(), || {
                        format!("{name}: rebuilt semigroup not isomorphic")
                    });
                    r.check(
                        dec.data.i_count == d.i_count
                            && dec.data.lambda_count == d.lambda_count
                            && dec.data.group.size() == d.group.size(),
                        || format!("{name}: decomposition has the wrong shape"),
                    );
                }
                Err(e) => r.fail(format!("{name}: decomposition failed: {e}")),
            }
            match rees_normalize(d) {
                Ok(n) => {
                    r.check(n.normalized, || {
                        format!("{name}: normalization left a non-identity entry")
                    });
                    r.check(find_isomorphism(&rees_semigroup(&n), &s).is_some(), || {
                        format!("{name}: normalization changed the isomorphism class")
                    });
                }
                Err(e) => r.fail(format!("{name}: normalization failed: {e}")),
            }
            let expected: Set = (0..d.i_count)
                .flat_map(|i| {
                    (0..d.lambda_count)
                        .map(move |l| d.index_of(ReesElement(i, d.inverse(d.sandwich[l][i]), l)))
                })
                .collect();
            r.check(raw::idempotents(&s) == expected, || {
                format!("{name}: idempotents differ")
            });
            r.bump(format!("|G| = {}", d.group.size()), 1);
            r
        })
        .collect();
    let mut report = OracleReport::new("rees");
    for r in results {
        report.merge_same(r);
    }
    report
}

/// For each completely simple instance with at most `max_size` elements,
/// every pair of left simple subsemigroups covering it satisfies exactly
/// one branch of the dichotomy.
pub fn verify_left_simple_dichotomy(instances: &[ReesInstance], max_size: usize) -> OracleReport {
    let max_size = max_size.min(16);
    let results: Vec<OracleReport> = instances
        .par_iter()
        .filter(|inst| inst.data.size() <= max_size)
        .map(|inst| {
            let s = rees_semigroup(&inst.data);
            let n = s.size();
            let name = &inst.label;
            let mut r = OracleReport::new("dichotomy");
            r.instances = 1;
            let full: u32 = (1 << n) - 1;
            let set_of = |mask: u32| -> Set { (0..n).filter(|&x| mask >> x & 1 == 1).collect() };
            let left_simple: Vec<u32> = (1..=full)
                .filter(|&m| {
                    let t = set_of(m);
                    raw::is_closed(&s, &t) && raw::is_left_simple_subset(&s, &t)
                })
                .collect();
            let whole_left_simple = raw::is_left_simple_subset(&s, &set_of(full));
            let minimal: BTreeSet<Set> = raw::minimal_left_ideals(&s);
            let mut covering = 0;
            for (x, &a) in left_simple.iter().enumerate() {
                for &b in &left_simple[x..] {
                    if a | b != full {
                        continue;
                    }
                    covering += 1;
                    let (sa, sb) = (set_of(a), set_of(b));
                    let branch_two =
                        a & b == 0 && minimal.len() == 2 && minimal.contains(&sa) && minimal.contains(&sb);
                    r.check(whole_left_simple != branch_two, || {
                        format!("{name}: {sa:?} ∪ {sb:?}: left simple {whole_left_simple}, two ideals {branch_two}")
                    });
                    let expect = if whole_left_simple { Dichotomy::LeftSimple } else { Dichotomy::TwoMinimalLeftIdeals };
                    let va: Vec<usize> = sa.iter().copied().collect();
                    let vb: Vec<usize> = sb.iter().copied().collect();
                    match left_simple_dichotomy(&s, &va, &vb) {
                        Ok(v) => r.check(v == expect, || format!("{name}: structure code chose {v:?}")),
                        Err(e) => r.fail(format!("{name}: structure code rejected {sa:?} ∪ {sb:?}: {e}")),
                    }
                }
            }
            r.bump("covering pairs", covering);
            r.bump(if whole_left_simple { "left simple" } else { "not left simple" }, 1);
            if !whole_left_simple {
                r.check(covering > 0 || minimal.len() > 2, || {
                    format!("{name}: two minimal left ideals but no covering pair")
                });
            }
            r
        })
        .collect();
    let mut report = OracleReport::new("dichotomy");
    for r in results {
        report.merge_same(r);
    }
    report
}

pub fn run_suite(suite: Suite, options: &OracleOptions) -> Result<OracleReport, OracleError> {
    options.validate()?;
    let corpus = || semigroup_corpus(options);
    Ok(match suite {
        Suite::Cpreg => verify_cpreg_criterion(options.degree)?,
        Suite::Kernel => verify_kernel_structure(&corpus()?),
        Suite::Union => verify_union_of_groups(&corpus()?),
        Suite::Rees => verify_rees_roundtrip(&rees_instances(options)),
        Suite::Dichotomy => {
            verify_left_simple_dichotomy(&rees_instances(options), options.dichotomy_max_size)
        }
        Suite::All => {
            let mut all = OracleReport::new("all");
            let c = corpus()?;
            let rees = rees_instances(options);
            all.absorb(verify_cpreg_criterion(options.degree)?);
            all.absorb(verify_kernel_structure(&c));
            all.absorb(verify_union_of_groups(&c));
            all.absorb(verify_rees_roundtrip(&rees));
            all.absorb(verify_left_simple_dichotomy(
                &rees,
                options.dichotomy_max_size,
            ));
            all
        }
    })
}
