//! Finite shadows of the Ellis semigroup of a substitution subshift, the
//! classification theorems run as decision procedures, and the worked
//! example as a golden suite.

mod classify;
mod fiber;
mod fuzz;
mod golden;
mod kernel_model;
mod report;

pub use classify::{
    classify_system, li_yorke_witness_map, recoded_witnesses, ClassificationReport,
    ComputedAlgebra, Predictions, WitnessMap,
};
pub use fiber::{cayley_of_fiber, CayleyView, FiberSemigroup};
pub use fuzz::{fuzz, random_substitution, FuzzCase, FuzzOptions, FuzzReport};
pub use golden::{golden_suite, GoldenAssertion, GoldenReport};
pub use kernel_model::{kernel_model, KernelModel, ReesSummary, MAX_MODEL_SIZE};
pub use report::{Analysis, AnalysisOptions, Stratum};

use thiserror::Error;

use crate::semigroup::SemigroupError;
use crate::substitution::SubstitutionError;

#[derive(Debug, Error)]
pub enum EllisError {
    #[error(transparent)]
    Substitution(#[from] SubstitutionError),
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
    #[error("pair ({0}, {1}) is not a Li-Yorke pair in that direction")]
    NotLiYorke(String, String),
    #[error("no witness map: {0}")]
    NoWitness(String),
    #[error("declined: {0}")]
    Declined(String),
}
