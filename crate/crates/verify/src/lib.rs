//! The five acceptance criteria, each reduced to a pass flag and a one-line
//! detail. The `acceptance` test target prints them.

use std::path::PathBuf;

use ellis_core::ellis::{fuzz, golden_suite, Analysis, AnalysisOptions, FuzzOptions};
use ellis_core::oracle::{run_suite, OracleOptions, Suite};
use ellis_core::semigroup::structure_report;
use ellis_core::substitution::{bijective_substitution, example_substitution};

// Every criterion is an exact comparison; these are the pinned targets.
pub const GOLDEN_ASSERTIONS: usize = 14;
pub const MAX_ORACLE_FAILURES: usize = 0;
pub const FUZZ_INSTANCES: usize = 100;
pub const MAX_COUNTEREXAMPLES: usize = 0;

pub struct Criterion {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Criterion {
    pub fn line(&self) -> String {
        format!(
            "criterion {} {}: {}: {}",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.detail
        )
    }
}

pub fn golden() -> (bool, String) {
    let r = golden_suite(&example_substitution());
    let detail = match r.first_failure() {
        None => format!("{}/{GOLDEN_ASSERTIONS} golden assertions", r.count_passed()),
        Some(a) => format!(
            "#{} {}: expected `{}`, got `{}`",
            a.id, a.name, a.expected, a.actual
        ),
    };
    (
        r.assertions.len() == GOLDEN_ASSERTIONS && r.passed(),
        detail,
    )
}

pub fn bijective() -> (bool, String) {
    let a = match Analysis::run(&bijective_substitution(), AnalysisOptions::default()) {
        Ok(a) => a,
        Err(e) => return (false, e.to_string()),
    };
    let r = structure_report(&a.fiber.semigroup);
    let c = &a.classification;
    let checks = [
        ("fiber is a group of order 2", r.is_group && r.size == 2),
        ("completely regular", r.is_completely_regular),
        (
            "almost distal both ways",
            c.forward_almost_distal && c.backward_almost_distal,
        ),
        (
            "near simplicity predicted",
            c.predicted.nearly_simple == Some(true),
        ),
        ("kernel model declines", a.kernel_model.is_err()),
    ];
    let failed: Vec<&str> = checks
        .iter()
        .filter(|(_, ok)| !ok)
        .map(|(n, _)| *n)
        .collect();
    if failed.is_empty() {
        (
            true,
            "group fiber, almost distal, kernel model declined".into(),
        )
    } else {
        (false, format!("failed: {}", failed.join(", ")))
    }
}

pub fn oracle() -> (bool, String) {
    match run_suite(Suite::All, &OracleOptions::default()) {
        Ok(r) => (
            r.failure_count == MAX_ORACLE_FAILURES,
            format!(
                "{} instances, {} checks, {} failures",
                r.instances, r.checks, r.failure_count
            ),
        ),
        Err(e) => (false, e.to_string()),
    }
}

pub fn fuzz_prediction() -> (bool, String) {
    let r = fuzz(FuzzOptions {
        instances: FUZZ_INSTANCES,
        ..FuzzOptions::default()
    });
    let t = r.table;
    let mut detail = format!(
        "{} instances, seed {:#x}: {} counterexamples (Li-Yorke with regular fiber {}, no Li-Yorke with irregular fiber {})",
        r.instances,
        r.seed,
        r.counterexamples.len(),
        t[1][0],
        t[0][1]
    );
    if let Some(c) = r.counterexamples.first() {
        detail.push_str(&format!("; first: {}", c.substitution));
    }
    (
        r.instances >= FUZZ_INSTANCES && r.counterexamples.len() == MAX_COUNTEREXAMPLES,
        detail,
    )
}

fn data(name: &str) -> PathBuf {
    [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name]
        .iter()
        .collect()
}

/// Two runs of `ellis analyze <file> --format json` on each bundled file.
pub fn determinism() -> (bool, String) {
    let mut notes = Vec::new();
    let mut ok = true;
    for name in ["paper.sub", "bijective.sub"] {
        let path = data(name);
        let run = || {
            let (mut out, mut err) = (Vec::new(), Vec::new());
            let args: [&std::ffi::OsStr; 5] = [
                "ellis".as_ref(),
                "analyze".as_ref(),
                path.as_os_str(),
                "--format".as_ref(),
                "json".as_ref(),
            ];
            let status = ellis_cli::run(args, &mut out, &mut err);
            (status, out)
        };
        let (first, second) = (run(), run());
        let same = first.0 == 0 && second.0 == 0 && !first.1.is_empty() && first.1 == second.1;
        ok &= same;
        notes.push(format!(
            "{name} {} bytes {}",
            first.1.len(),
            if same { "identical" } else { "differ" }
        ));
    }
    (ok, notes.join(", "))
}

type Check = fn() -> (bool, String);

pub fn run_all() -> Vec<Criterion> {
    let checks: [(&'static str, Check); 5] = [
        ("golden worked example", golden),
        ("bijective example", bijective),
        ("oracle suites", oracle),
        ("fuzz Li-Yorke prediction", fuzz_prediction),
        ("deterministic JSON", determinism),
    ];
    checks
        .iter()
        .enumerate()
        .map(|(i, (name, check))| {
            let (passed, detail) = check();
            Criterion {
                id: i + 1,
                name,
                passed,
                detail,
            }
        })
        .collect()
}
