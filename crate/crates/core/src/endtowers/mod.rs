//! Towers of finitely generated abelian groups, the vanishing of the epsilon
//! and Delta constructions, end towers and locally finite homology of
//! end-periodic complexes.

mod decide;
mod ends;
mod generate;
mod homology;
mod tower;

pub use decide::{
    brute_force_epsilon, delta_vanishes, epsilon_vanishes, exactness_check, Decision, DeltaDecision,
    EntryCertificate, EntryStatus, EpsilonDecision, ExactnessReport, LevelwiseSequence, DEFAULT_HORIZON,
};
pub use ends::{collar_contraction, EndJson, EndPeriodicComplex, EndPeriodicJson, Truncation, TruncationOracle};
pub use generate::{random_exact_sequence, random_multitower};
pub use homology::{tower_homology, ComplexTower};
pub use tower::{MultiTower, MultiTowerJson, Multiplicity, Periodicity, Tower, TowerJson};

use crate::chains::ChainError;
use crate::coefficients::RingError;
use crate::simplicial::SpaceError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TowerError {
    #[error("invalid tower: {0}")]
    Invalid(String),
    #[error("periodicity not verified: {0}")]
    Periodicity(String),
    #[error("not levelwise exact at stage {stage}: {detail}")]
    NotExact { stage: usize, detail: String },
    #[error("end data: {0}")]
    Ends(String),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    Space(#[from] SpaceError),
}

#[cfg(test)]
mod tests;
