//! Based chain complexes over group rings, chain maps, homology and contractions.

mod complex;
mod contraction;
mod homology;

pub use complex::{BasedComplex, ChainMap, ComplexJson, EntryJson, RingMorphism};
pub use contraction::{default_window, find_contraction, find_contraction_top_down, Contraction};
pub use homology::{induced_map, HomologyGroup, IntComplex};

use crate::coefficients::RingError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChainError {
    #[error("boundary composite is nonzero into degree {degree}")]
    NotAComplex { degree: i64 },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("complex is not acyclic: {detail}")]
    NotAcyclic { degree: i64, detail: String },
    #[error("no contraction found in degree {degree} within Laurent window {window}")]
    NoContractionWithinBound { degree: i64, window: i64 },
    #[error("chain is not a cycle in degree {degree}")]
    NotACycle { degree: i64 },
    #[error("not a chain map in degree {degree}")]
    NotAChainMap { degree: i64 },
    #[error("contraction identity fails in degree {degree}")]
    NotAContraction { degree: i64 },
}

#[cfg(test)]
mod tests;
