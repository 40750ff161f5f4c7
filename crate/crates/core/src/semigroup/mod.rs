//! Finite semigroups: closure of transformation generators, Green's
//! relations, ideals, complete regularity and Rees matrix presentations.

mod dot;
mod finite;
mod greens;
mod iso;
mod rees;
mod structure;
mod transformation;

pub use dot::eggbox_dot;
pub use finite::{CayleyTable, FiniteSemigroup};
pub use greens::{greens, EggBox, GreensStructure};
pub use iso::find_isomorphism;
pub use rees::{
    left_simple_dichotomy, rees_decompose, rees_multiply, rees_normalize,
    rees_round_trip_by_search, rees_semigroup, Dichotomy, ReesData, ReesDecomposition, ReesElement,
};
pub use structure::{
    idempotent_poset, is_completely_regular_element, kernel, normal_inverse, structure_report,
    IdempotentPoset, KernelInfo, NormalInverse, RegularityCheck, StructureReport,
};
pub use transformation::Transformation;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemigroupError {
    #[error("transformation of degree 0")]
    ZeroDegree,
    #[error("image {image} of point {point} is out of range for degree {degree}")]
    ImageOutOfRange {
        point: usize,
        image: usize,
        degree: usize,
    },
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("empty generator list")]
    NoGenerators,
    #[error("empty Cayley table")]
    EmptyTable,
    #[error("{labels} labels for {size} elements")]
    LabelCount { labels: usize, size: usize },
    #[error("row {row} has length {len}, expected {size}")]
    RaggedTable { row: usize, len: usize, size: usize },
    #[error("table entry ({row}, {col}) = {value} is not an element index")]
    TableEntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
    },
    #[error("element index {index} out of range for size {size}")]
    ElementOutOfRange { index: usize, size: usize },
    #[error("table is not associative at ({a}, {b}, {c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("generators produce {generated} of {size} elements")]
    NotGenerated { generated: usize, size: usize },
    #[error("transformations disagree with the table at ({left}, {right})")]
    TransformationTableMismatch { left: usize, right: usize },
    #[error("subset is not closed: product of {a} and {b} leaves it")]
    NotClosed { a: usize, b: usize },
    #[error("semigroup is not completely simple")]
    NotCompletelySimple,
    #[error("invalid Rees data: {0}")]
    InvalidRees(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
    #[error("invalid JSON: {0}")]
    Json(String),
}
