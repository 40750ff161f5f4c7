//! Brute-force verification of the semigroup structure code on exhaustively
//! enumerated small instances.

pub mod raw;
mod suites;

pub use suites::{
    cpreg_counts, rees_instances, run_suite, semigroup_corpus, verify_cpreg_criterion,
    verify_kernel_structure, verify_left_simple_dichotomy, verify_rees_roundtrip,
    verify_union_of_groups, CorpusEntry, ReesInstance,
};

use std::collections::BTreeMap;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::semigroup::Transformation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("degree must be between 1 and 4, got {0}")]
    Degree(usize),
    #[error("group order must be between 1 and 3, got {0}")]
    GroupOrder(usize),
    #[error("index set size must be between 1 and 3, got {0}")]
    IndexSize(usize),
    #[error("unknown suite `{0}` (expected cpreg, kernel, union, rees, dichotomy or all)")]
    UnknownSuite(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Cpreg,
    Kernel,
    Union,
    Rees,
    Dichotomy,
    All,
}

impl FromStr for Suite {
    type Err = OracleError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "cpreg" => Suite::Cpreg,
            "kernel" => Suite::Kernel,
            "union" => Suite::Union,
            "rees" => Suite::Rees,
            "dichotomy" => Suite::Dichotomy,
            "all" => Suite::All,
            other => return Err(OracleError::UnknownSuite(other.to_string())),
        })
    }
}

/// Bounds for the enumerations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct OracleOptions {
    /// Transformations of every degree up to this are enumerated (≤ 4).
    pub degree: usize,
    /// Exhaustive ≤2-generator closures use degrees up to this (≤ 3).
    pub closure_degree: usize,
    /// Random 3-generator closures at degree 4.
    pub random_closures: usize,
    pub group_order: usize,
    pub max_index: usize,
    /// Random sandwich matrices per shape at the largest group order.
    pub rees_samples: usize,
    /// Largest semigroup searched exhaustively for covering pairs.
    pub dichotomy_max_size: usize,
    pub seed: u64,
}

impl Default for OracleOptions {
    fn default() -> Self {
        Self {
            degree: 4,
            closure_degree: 3,
            random_closures: 40,
            group_order: 3,
            max_index: 3,
            rees_samples: 6,
            dichotomy_max_size: 12,
            seed: 0x0dd5eed,
        }
    }
}

impl OracleOptions {
    pub fn validate(&self) -> Result<(), OracleError> {
        if !(1..=4).contains(&self.degree) {
            return Err(OracleError::Degree(self.degree));
        }
        if !(1..=4).contains(&self.closure_degree) {
            return Err(OracleError::Degree(self.closure_degree));
        }
        if !(1..=3).contains(&self.group_order) {
            return Err(OracleError::GroupOrder(self.group_order));
        }
        if !(1..=3).contains(&self.max_index) {
            return Err(OracleError::IndexSize(self.max_index));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub suite: String,
    pub instances: usize,
    pub checks: usize,
    /// Named tallies, e.g. completely regular maps per degree.
    pub counts: BTreeMap<String, usize>,
    pub failure_count: usize,
    /// The first few failures.
    pub failures: Vec<String>,
}

const KEPT_FAILURES: usize = 20;

impl OracleReport {
    pub fn new(suite: &str) -> Self {
        Self {
            suite: suite.to_string(),
            ..Self::default()
        }
    }

    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }

    pub(crate) fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.fail(what());
        }
    }

    pub(crate) fn fail(&mut self, what: String) {
        self.failure_count += 1;
        if self.failures.len() < KEPT_FAILURES {
            self.failures.push(what);
        }
    }

    pub(crate) fn bump(&mut self, key: impl Into<String>, by: usize) {
        *self.counts.entry(key.into()).or_default() += by;
    }

    /// Adds a report of the same suite.
    pub(crate) fn merge_same(&mut self, other: OracleReport) {
        self.instances += other.instances;
        self.checks += other.checks;
        for (k, v) in other.counts {
            self.bump(k, v);
        }
        self.failure_count += other.failure_count;
        let room = KEPT_FAILURES.saturating_sub(self.failures.len());
        self.failures.extend(other.failures.into_iter().take(room));
    }

    /// Adds a report of another suite, prefixing its keys.
    pub(crate) fn absorb(&mut self, other: OracleReport) {
        self.instances += other.instances;
        self.checks += other.checks;
        for (k, v) in other.counts {
            self.bump(format!("{}.{k}", other.suite), v);
        }
        self.failure_count += other.failure_count;
        for f in other.failures {
            if self.failures.len() < KEPT_FAILURES {
                self.failures.push(format!("{}: {f}", other.suite));
            }
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn summary(&self) -> String {
        let mut out = format!(
            "{}: {} instances, {} checks, {} failures\n",
            self.suite, self.instances, self.checks, self.failure_count
        );
        for (k, v) in &self.counts {
            out.push_str(&format!("  {k}: {v}\n"));
        }
        for f in &self.failures {
            out.push_str(&format!("  FAIL {f}\n"));
        }
        out
    }
}

/// All `nⁿ` maps of `{0..n}`, image vectors in lexicographic order.
pub fn enumerate_transformations(
    n: usize,
) -> Result<impl Iterator<Item = Transformation>, OracleError> {
    if !(1..=4).contains(&n) {
        return Err(OracleError::Degree(n));
    }
    let total = n.pow(n as u32);
    Ok((0..total).map(move |mut code| {
        let mut images = vec![0; n];
        for slot in images.iter_mut().rev() {
            *slot = code % n;
            code /= n;
        }
        Transformation::new(images).expect("images are in range")
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_sizes_and_order() {
        for (n, count) in [(1, 1), (2, 4), (3, 27), (4, 256)] {
            let all: Vec<Transformation> = enumerate_transformations(n).unwrap().collect();
            assert_eq!(all.len(), count);
            assert!(all.windows(2).all(|w| w[0] < w[1]));
        }
        assert!(enumerate_transformations(0).is_err());
        assert!(enumerate_transformations(5).is_err());
    }

    #[test]
    fn suite_names() {
        assert_eq!("rees".parse::<Suite>().unwrap(), Suite::Rees);
        assert!("nope".parse::<Suite>().is_err());
    }
}
