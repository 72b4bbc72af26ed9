//! Group rings `Z[G]` for trivial, finite cyclic and infinite cyclic `G`,
//! integer linear algebra, and finitely generated abelian groups.

mod abelian;
mod element;
mod group;
mod matrix;
mod ring_matrix;
pub mod snf;
mod units;

pub use abelian::{hom_decompose, invert_iso, is_homomorphism, is_zero_map, FgAbelian, HomDecomposition, PresentationJson};
pub use element::{ElementJson, GroupRingElt};
pub use group::{GroupKind, GroupSpec, RingSpecJson};
pub use matrix::{IntMatrix, IntMatrixJson};
pub use ring_matrix::{solve, RingMatrix};
pub use snf::Snf;
pub use units::{det_unit_class, invert, is_trivial_unit, normalize_mod_trivial, UnitClass};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("mismatched groups: {0} vs {1}")]
    GroupMismatch(String, String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("not a unit: {0}")]
    NotAUnit(String),
    #[error("inverse not found within bound: {0}")]
    InverseNotFound(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("map is not a well-defined homomorphism")]
    NotAHomomorphism,
    #[error("map is not an isomorphism")]
    NotAnIsomorphism,
    #[error("operation needs a finite group")]
    InfiniteGroup,
    #[error("operation needs integer coefficients")]
    NotIntegral,
}

/// Multiply two ring elements, checking that the groups agree.
pub fn ring_mul(a: &GroupRingElt, b: &GroupRingElt) -> Result<GroupRingElt, RingError> {
    a.try_mul(b)
}
