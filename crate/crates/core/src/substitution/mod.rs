//! Constant-length substitutions, the fixed points of `σ∘θ`, column maps,
//! pair classification and odometer arithmetic.

mod coding;
mod columns;
mod fixed_point;
mod odometer;
mod pairs;
mod parse;

pub use coding::{
    agreement, distance, higher_block_coding, shift_window, Agreement, RecodedWindow,
};
pub use columns::{ColumnGraph, ColumnMap, ColumnShadow, Side};
pub use fixed_point::{FixedPoints, Window};
pub use odometer::OdometerElement;
pub use pairs::{
    scan_witnesses, witnesses_hold, Direction, LiYorkeWitness, PairClassification, PairOptions,
    Verdict,
};
pub use parse::parse_substitution;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubstitutionError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: unknown symbol `{symbol}`")]
    UnknownSymbol { line: usize, symbol: String },
    #[error("line {line}: duplicate symbol `{symbol}`")]
    DuplicateSymbol { line: usize, symbol: String },
    #[error("line {line}: second rule for `{letter}`")]
    DuplicateRule { line: usize, letter: String },
    #[error("no rule for `{letter}`")]
    MissingRule { letter: String },
    #[error("line {line}: rule for `{letter}` has length {found}, expected {expected} (substitution must have constant length)")]
    NonConstantLength {
        line: usize,
        letter: String,
        expected: usize,
        found: usize,
    },
    #[error("substitution length must be at least 2, got {0}")]
    TooShort(usize),
    #[error("empty alphabet")]
    EmptyAlphabet,
    #[error("no fixed points of the shifted substitution")]
    NoSeeds,
    #[error("pair must consist of two distinct fixed points")]
    SamePoint,
    #[error("fixed point index {0} out of range")]
    NoSuchPoint(usize),
    #[error("invalid JSON: {0}")]
    Json(String),
}

/// A substitution `θ` of constant length `ℓ ≥ 2` over a finite alphabet.
///
/// Letters are addressed by index into `alphabet`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Substitution {
    alphabet: Vec<String>,
    rules: Vec<Vec<usize>>,
    length: usize,
    primitive: bool,
}

impl Substitution {
    pub fn new(alphabet: Vec<String>, rules: Vec<Vec<usize>>) -> Result<Self, SubstitutionError> {
        if alphabet.is_empty() {
            return Err(SubstitutionError::EmptyAlphabet);
        }
        if rules.len() != alphabet.len() {
            let letter = alphabet.get(rules.len()).cloned().unwrap_or_default();
            return Err(SubstitutionError::MissingRule { letter });
        }
        let length = rules[0].len();
        for (a, w) in rules.iter().enumerate() {
            if w.len() != length {
                return Err(SubstitutionError::NonConstantLength {
                    line: 0,
                    letter: alphabet[a].clone(),
                    expected: length,
                    found: w.len(),
                });
            }
            if let Some(&b) = w.iter().find(|&&b| b >= alphabet.len()) {
                return Err(SubstitutionError::UnknownSymbol {
                    line: 0,
                    symbol: b.to_string(),
                });
            }
        }
        if length < 2 {
            return Err(SubstitutionError::TooShort(length));
        }
        let primitive = is_primitive(&rules);
        Ok(Self {
            alphabet,
            rules,
            length,
            primitive,
        })
    }

    /// Builds from single-character letters, e.g. `&[("a", "aacaa"), ..]`.
    pub fn from_words(rules: &[(&str, &str)]) -> Result<Self, SubstitutionError> {
        let alphabet: Vec<String> = rules.iter().map(|(a, _)| a.to_string()).collect();
        let index = |c: char| {
            alphabet
                .iter()
                .position(|s| s.len() == c.len_utf8() && s.starts_with(c))
                .ok_or(SubstitutionError::UnknownSymbol {
                    line: 0,
                    symbol: c.to_string(),
                })
        };
        let words = rules
            .iter()
            .map(|(_, w)| w.chars().map(index).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(alphabet, words)
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn size(&self) -> usize {
        self.alphabet.len()
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn rule(&self, a: usize) -> &[usize] {
        &self.rules[a]
    }

    pub fn rules(&self) -> &[Vec<usize>] {
        &self.rules
    }

    #[inline]
    pub fn image(&self, a: usize, r: usize) -> usize {
        self.rules[a][r]
    }

    pub fn is_primitive(&self) -> bool {
        self.primitive
    }

    pub fn letter(&self, a: usize) -> &str {
        &self.alphabet[a]
    }

    pub fn letter_index(&self, name: &str) -> Option<usize> {
        self.alphabet.iter().position(|s| s == name)
    }

    /// Letters `s` with `θ(s)[1] = s`.
    pub fn fixed_point_seeds(&self) -> Vec<usize> {
        (0..self.size())
            .filter(|&s| self.rules[s][1] == s)
            .collect()
    }

    /// The `r`-th column `a ↦ θ(a)[r]`.
    pub fn column(&self, r: usize) -> Vec<usize> {
        self.rules.iter().map(|w| w[r]).collect()
    }

    /// Renders a word, separating letters by spaces only if some letter name
    /// is longer than one character.
    pub fn render(&self, word: &[usize]) -> String {
        let sep = if self.alphabet.iter().all(|s| s.chars().count() == 1) {
            ""
        } else {
            " "
        };
        word.iter()
            .map(|&a| self.alphabet[a].as_str())
            .collect::<Vec<_>>()
            .join(sep)
    }

    /// Text form accepted by [`parse_substitution`].
    pub fn to_text(&self) -> String {
        let mut out = format!("alphabet: {}\nrules:\n", self.alphabet.join(" "));
        for (a, w) in self.rules.iter().enumerate() {
            let word: Vec<&str> = w.iter().map(|&b| self.alphabet[b].as_str()).collect();
            out.push_str(&format!("{}: {}\n", self.alphabet[a], word.join(" ")));
        }
        out
    }
}

/// Some power of the incidence matrix is strictly positive. Wielandt's bound
/// `(n-1)² + 1` limits the number of powers to try.
fn is_primitive(rules: &[Vec<usize>]) -> bool {
    let n = rules.len();
    let step: Vec<Vec<bool>> = (0..n)
        .map(|a| (0..n).map(|b| rules[a].contains(&b)).collect())
        .collect();
    let mut power = step.clone();
    for _ in 0..(n - 1) * (n - 1) + 1 {
        if power.iter().all(|row| row.iter().all(|&x| x)) {
            return true;
        }
        power = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| (0..n).any(|c| power[a][c] && step[c][b]))
                    .collect()
            })
            .collect();
    }
    false
}

/// The substitution of the worked example: a→aacaa, b→abcaa, c→accba.
pub fn example_substitution() -> Substitution {
    Substitution::from_words(&[("a", "aacaa"), ("b", "abcaa"), ("c", "accba")])
        .expect("bundled substitution is valid")
}

/// The bijective substitution a→bab, b→aba.
pub fn bijective_substitution() -> Substitution {
    Substitution::from_words(&[("a", "bab"), ("b", "aba")]).expect("bundled substitution is valid")
}
