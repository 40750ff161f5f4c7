use serde::Serialize;

use crate::semigroup::{
    idempotent_poset, is_completely_regular_element, structure_report, StructureReport,
};
use crate::substitution::{
    witnesses_hold, Direction, FixedPoints, PairOptions, Substitution, Verdict,
};

use super::{classify_system, kernel_model, ClassificationReport, EllisError, FiberSemigroup};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GoldenAssertion {
    pub id: usize,
    pub name: String,
    pub passed: bool,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GoldenReport {
    pub assertions: Vec<GoldenAssertion>,
}

impl GoldenReport {
    pub fn passed(&self) -> bool {
        self.assertions.iter().all(|a| a.passed)
    }

    pub fn first_failure(&self) -> Option<&GoldenAssertion> {
        self.assertions.iter().find(|a| !a.passed)
    }

    pub fn count_passed(&self) -> usize {
        self.assertions.iter().filter(|a| a.passed).count()
    }
}

const NAMES: [&str; 14] = [
    "fixed point seeds",
    "first iteration windows",
    "second iteration windows",
    "fiber semigroup elements",
    "product table",
    "idempotents",
    "minimal idempotents form the kernel, a left zero semigroup",
    "φ is the only element that is not completely regular",
    "(x_a, x_b) forward asymptotic",
    "(x_a, x_c) and (x_b, x_c) forward Li-Yorke with valid witnesses",
    "all pairs backward asymptotic",
    "backward but not forward almost distal, witness φ",
    "proximality transitive, equal directional kernels, one minimal left ideal",
    "kernel model at depth 2",
];

struct Context {
    fp: FixedPoints,
    fiber: FiberSemigroup,
    report: StructureReport,
    classification: ClassificationReport,
}

fn context(sub: &Substitution) -> Result<Context, EllisError> {
    let fp = FixedPoints::new(sub)?;
    let fiber = FiberSemigroup::build(&fp, &fp.column_shadow())?;
    let report = structure_report(&fiber.semigroup);
    let classification = classify_system(&fp, &fiber, PairOptions::default())?;
    Ok(Context {
        fp,
        fiber,
        report,
        classification,
    })
}

fn sorted(mut v: Vec<String>) -> Vec<String> {
    v.sort();
    v
}

fn list(v: &[String]) -> String {
    format!("{{{}}}", v.join(", "))
}

/// Every fact of the worked example, checked on `sub` (normally the
/// bundled substitution a→aacaa, b→abcaa, c→accba).
pub fn golden_suite(sub: &Substitution) -> GoldenReport {
    let ctx = match context(sub) {
        Ok(c) => c,
        Err(e) => {
            let assertions = NAMES
                .iter()
                .enumerate()
                .map(|(i, n)| GoldenAssertion {
                    id: i + 1,
                    name: n.to_string(),
                    passed: false,
                    expected: "analysis succeeds".into(),
                    actual: e.to_string(),
                })
                .collect();
            return GoldenReport { assertions };
        }
    };
    let actuals = actual_values(&ctx);
    let expected = expected_values();
    let assertions = NAMES
        .iter()
        .zip(expected.into_iter().zip(actuals))
        .enumerate()
        .map(|(i, (n, (expected, actual)))| GoldenAssertion {
            id: i + 1,
            name: n.to_string(),
            passed: expected == actual,
            expected,
            actual,
        })
        .collect();
    GoldenReport { assertions }
}

fn expected_values() -> Vec<String> {
    [
        "{a, b, c}",
        "a.acaa | a.bcaa | a.ccba",
        "aacaaa.acaaaccbaaacaaaacaa | aacaaa.bcaaaccbaaacaaaacaa | aacaaa.ccbaaccbaabcaaaacaa",
        "{id, Π_a, Π_b, Π_c, φ}; φ = (a↦a, b↦a, c↦b)",
        "φφ=Π_a φΠ_a=Π_a Π_aφ=Π_a φΠ_b=Π_a φΠ_c=Π_b Π_bφ=Π_b Π_cφ=Π_c; ΠsΠs'=Πs: true; id·f=f·id=f: true",
        "{id, Π_a, Π_b, Π_c}",
        "minimal {Π_a, Π_b, Π_c} = kernel {Π_a, Π_b, Π_c}; left zero: true",
        "{φ}; im φ² = {a} ⊊ im φ = {a, b}",
        "asymptotic",
        "(a, c): li_yorke, 5 witnesses, valid; (b, c): li_yorke, 5 witnesses, valid",
        "(a, b): asymptotic; (a, c): asymptotic; (b, c): asymptotic",
        "backward true, forward false; completely regular false; witness φ",
        "transitive true; M⁺ = M⁻: true; minimal left ideals 1",
        "75 elements; completely simple true; |G| = 25 cyclic true; |I| = 3; |Λ| = 1",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect()
}

fn actual_values(ctx: &Context) -> Vec<String> {
    let fp = &ctx.fp;
    let f = &ctx.fiber;
    let s = &f.semigroup;
    let c = &ctx.classification;
    let names = |xs: &[usize]| sorted(xs.iter().map(|&a| f.name(a).to_string()).collect());
    let n = fp.count();
    let mut out = Vec::new();

    out.push(list(&fp.labels()));
    for k in [1, 2] {
        out.push(
            (0..n)
                .map(|w| fp.expand_window(w, k))
                .collect::<Vec<_>>()
                .join(" | "),
        );
    }

    let all: Vec<usize> = s.elements().collect();
    let phi = f.index_by_name("φ");
    out.push(format!(
        "{}; φ = {}",
        list(&names(&all)),
        phi.map_or("absent".to_string(), |p| f.render_map(p))
    ));

    let prod = |x: &str, y: &str| match (f.index_by_name(x), f.index_by_name(y)) {
        (Some(a), Some(b)) => f.name(s.mul(a, b)).to_string(),
        _ => "?".into(),
    };
    let listed = [
        ("φ", "φ"),
        ("φ", "Π_a"),
        ("Π_a", "φ"),
        ("φ", "Π_b"),
        ("φ", "Π_c"),
        ("Π_b", "φ"),
        ("Π_c", "φ"),
    ];
    let products: Vec<String> = listed
        .iter()
        .map(|(x, y)| format!("{x}{y}={}", prod(x, y)))
        .collect();
    let constants: Vec<usize> = all
        .iter()
        .copied()
        .filter(|&a| f.name(a).starts_with("Π_"))
        .collect();
    let left_zero = !constants.is_empty()
        && constants
            .iter()
            .all(|&x| constants.iter().all(|&y| s.mul(x, y) == x));
    let unit_ok = f
        .unit
        .is_some_and(|u| all.iter().all(|&x| s.mul(u, x) == x && s.mul(x, u) == x));
    out.push(format!(
        "{}; ΠsΠs'=Πs: {left_zero}; id·f=f·id=f: {unit_ok}",
        products.join(" ")
    ));

    out.push(list(&names(&ctx.report.idempotents)));
    let minimal = idempotent_poset(s).minimal;
    let kernel_lz = ctx
        .report
        .kernel
        .iter()
        .all(|&x| ctx.report.kernel.iter().all(|&y| s.mul(x, y) == x));
    out.push(format!(
        "minimal {} = kernel {}; left zero: {kernel_lz}",
        list(&names(&minimal)),
        list(&names(&ctx.report.kernel))
    ));

    let non_cr = names(&ctx.report.non_completely_regular);
    let images = phi.map_or("φ absent".to_string(), |p| {
        let img = |t: &crate::semigroup::Transformation| {
            t.image()
                .into_iter()
                .map(|w| fp.label(w))
                .collect::<Vec<_>>()
                .join(", ")
        };
        let sq = f.map(s.mul(p, p));
        let strict =
            sq.image().is_subset(&f.map(p).image()) && sq.image().len() < f.map(p).image().len();
        let regular = is_completely_regular_element(s, p).completely_regular;
        format!(
            "im φ² = {{{}}} {} im φ = {{{}}}",
            img(sq),
            if strict && !regular { "⊊" } else { "⊄" },
            img(f.map(p))
        )
    });
    out.push(format!("{}; {images}", list(&non_cr)));

    let by_label = |l: &str| fp.germ_by_label(l);
    let verdict = |a: &str, b: &str, dir: Direction| match (by_label(a), by_label(b)) {
        (Some(u), Some(v)) => c.pair(u, v, dir),
        _ => None,
    };
    let verdict_name = |p: Option<&crate::substitution::PairClassification>| {
        p.map_or("missing".to_string(), |p| {
            serde_json::to_value(p.verdict)
                .ok()
                .and_then(|v| v.as_str().map(String::from))
                .unwrap_or_default()
        })
    };
    out.push(verdict_name(verdict("a", "b", Direction::Forward)));

    let ly = ["a", "b"]
        .iter()
        .map(|a| {
            let p = verdict(a, "c", Direction::Forward);
            let valid = p.is_some_and(|p| {
                let horizon = p
                    .witnesses
                    .iter()
                    .map(|w| w.n + w.length + 2)
                    .max()
                    .unwrap_or(1);
                let same = fp.agreement_profile(p.first, p.second, Direction::Forward, horizon);
                p.verdict == Verdict::LiYorke && witnesses_hold(&same, &p.witnesses)
            });
            format!(
                "({a}, c): {}, {} witnesses, {}",
                verdict_name(p),
                p.map_or(0, |p| p.witnesses.len()),
                if valid { "valid" } else { "invalid" }
            )
        })
        .collect::<Vec<_>>();
    out.push(ly.join("; "));

    let back = [("a", "b"), ("a", "c"), ("b", "c")]
        .iter()
        .map(|(a, b)| {
            format!(
                "({a}, {b}): {}",
                verdict_name(verdict(a, b, Direction::Backward))
            )
        })
        .collect::<Vec<_>>();
    out.push(back.join("; "));

    out.push(format!(
        "backward {}, forward {}; completely regular {}; witness {}",
        c.backward_almost_distal,
        c.forward_almost_distal,
        c.computed.completely_regular,
        c.witness.as_deref().unwrap_or("none")
    ));
    out.push(format!(
        "transitive {}; M⁺ = M⁻: {}; minimal left ideals {}",
        c.proximality_transitive,
        c.computed.directional_kernels_equal,
        c.computed.minimal_left_ideals
    ));

    out.push(match kernel_model(f, fp.substitution().length(), 2) {
        Ok(m) => format!(
            "{} elements; completely simple {}; |G| = {} cyclic {}; |I| = {}; |Λ| = {}",
            m.semigroup.size(),
            m.report.is_completely_simple,
            m.rees.group_order,
            m.rees.group_is_cyclic,
            m.rees.i_count,
            m.rees.lambda_count
        ),
        Err(e) => e.to_string(),
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::substitution::example_substitution;

    #[test]
    fn all_pass_on_the_bundled_example() {
        let r = golden_suite(&example_substitution());
        assert_eq!(r.assertions.len(), 14);
        for a in &r.assertions {
            assert!(
                a.passed,
                "{}: expected {} got {}",
                a.name, a.expected, a.actual
            );
        }
    }

    #[test]
    fn tampering_is_caught() {
        let sub =
            Substitution::from_words(&[("a", "aacaa"), ("b", "abcaa"), ("c", "acaba")]).unwrap();
        let r = golden_suite(&sub);
        assert!(!r.passed());
        assert!(r.first_failure().is_some());
    }
}
