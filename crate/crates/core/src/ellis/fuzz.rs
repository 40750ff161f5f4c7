use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::semigroup::structure_report;
use crate::substitution::{FixedPoints, PairOptions, Substitution};

use super::{classify_system, FiberSemigroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FuzzOptions {
    pub seed: u64,
    pub instances: usize,
    pub max_alphabet: usize,
    pub max_length: usize,
}

impl Default for FuzzOptions {
    fn default() -> Self {
        Self {
            seed: 0x5eed,
            instances: 100,
            max_alphabet: 4,
            max_length: 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FuzzCase {
    pub index: usize,
    pub substitution: String,
    pub li_yorke: bool,
    pub not_completely_regular: bool,
    pub inconsistencies: Vec<String>,
}

impl FuzzCase {
    /// Li-Yorke pair present ⟺ fiber semigroup not completely regular.
    pub fn prediction_holds(&self) -> bool {
        self.li_yorke == self.not_completely_regular
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FuzzReport {
    pub seed: u64,
    pub instances: usize,
    /// Instances drawn before `instances` usable ones were found.
    pub drawn: usize,
    /// Counts of (Li-Yorke, not completely regular) over the instances:
    /// `[[no/no, no/yes], [yes/no, yes/yes]]`.
    pub table: [[usize; 2]; 2],
    pub counterexamples: Vec<FuzzCase>,
    /// Instances with any failed cross-check, counterexamples included.
    pub inconsistent: Vec<FuzzCase>,
}

impl FuzzReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Uniform rules over digits `0..n` with `2 ≤ n ≤ max_alphabet` and
/// `2 ≤ ℓ ≤ max_length`.
pub fn random_substitution(
    rng: &mut impl Rng,
    max_alphabet: usize,
    max_length: usize,
) -> Substitution {
    let n = rng.gen_range(2..=max_alphabet.max(2));
    let l = rng.gen_range(2..=max_length.max(2));
    let alphabet = (0..n).map(|a| a.to_string()).collect();
    let rules = (0..n)
        .map(|_| (0..l).map(|_| rng.gen_range(0..n)).collect())
        .collect();
    Substitution::new(alphabet, rules).expect("random rules are well formed")
}

fn describe(sub: &Substitution) -> String {
    (0..sub.size())
        .map(|a| format!("{}→{}", sub.letter(a), sub.render(sub.rule(a))))
        .collect::<Vec<_>>()
        .join(", ")
}

/// Draws primitive substitutions with fixed points of `σ∘θ` until
/// `instances` are found, then checks each in parallel.
pub fn fuzz(options: FuzzOptions) -> FuzzReport {
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let mut subs = Vec::with_capacity(options.instances);
    let mut drawn = 0;
    while subs.len() < options.instances {
        drawn += 1;
        let sub = random_substitution(&mut rng, options.max_alphabet, options.max_length);
        if sub.is_primitive() && FixedPoints::new(&sub).is_ok() {
            subs.push(sub);
        }
    }
    let pair_options = PairOptions {
        witnesses: 1,
        horizon: Some(256),
    };
    let cases: Vec<FuzzCase> = subs
        .par_iter()
        .enumerate()
        .map(|(index, sub)| {
            let fp = FixedPoints::new(sub).expect("checked above");
            let fiber =
                FiberSemigroup::build(&fp, &fp.column_shadow()).expect("closure of column maps");
            let report =
                classify_system(&fp, &fiber, pair_options).expect("pairs are classifiable");
            FuzzCase {
                index,
                substitution: describe(sub),
                li_yorke: report.has_li_yorke_pair(),
                not_completely_regular: !structure_report(&fiber.semigroup).is_completely_regular,
                inconsistencies: report.inconsistencies,
            }
        })
        .collect();
    let mut table = [[0; 2]; 2];
    for c in &cases {
        table[c.li_yorke as usize][c.not_completely_regular as usize] += 1;
    }
    FuzzReport {
        seed: options.seed,
        instances: cases.len(),
        drawn,
        table,
        counterexamples: cases
            .iter()
            .filter(|c| !c.prediction_holds())
            .cloned()
            .collect(),
        inconsistent: cases
            .into_iter()
            .filter(|c| !c.inconsistencies.is_empty())
            .collect(),
    }
}
