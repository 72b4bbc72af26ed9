//! Ordered simplicial complexes with orientation characters; twisted chains
//! and cochains; cup, cap, slant and cross products; finite covers.

mod cochain;
mod cover;
mod identities;
mod products;
mod space;

pub use cochain::{Chain, ChainJson, Cochain, Twist};
pub use cover::{equivariant_cap_matrix, equivariant_complex, SimplicialCover, Voltage, VoltageJson};
pub use identities::{cap_boundary_identity, cup_identities, graded_commutativity};
pub use products::{
    boundary, cap, cap_reversed, coboundary, cup, evaluate, lattice_paths, path_sign, ProductSpace,
};
pub use space::{Rel, SimplicialSpace, SpaceChains, SpaceJson};

use crate::chains::ChainError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpaceError {
    #[error("invalid simplicial data: {0}")]
    Invalid(String),
    #[error("not a manifold: {0}")]
    NotAManifold(String),
    #[error("mismatched spaces or degrees: {0}")]
    Mismatch(String),
    #[error("not a covering: {0}")]
    NotACover(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Chain(#[from] ChainError),
}

/// Coefficient system of the fundamental class: `Z^w` when the space is twisted.
pub fn orientation_twist(k: &SimplicialSpace) -> Twist {
    if k.is_twisted() {
        Twist::W
    } else {
        Twist::Trivial
    }
}

/// A generator of `H_n(K, A; Z^w)` when that group is `Z`.
pub fn fundamental_class(k: &SimplicialSpace) -> Result<Chain, SpaceError> {
    let n = k.dim() as i64;
    if let Some(f) = k.facets().iter().find(|f| f.len() as i64 != n + 1) {
        return Err(SpaceError::NotAManifold(format!("maximal simplex {f:?} has dimension below {n}")));
    }
    let twist = orientation_twist(k);
    let sc = k.chains(twist, Rel::Relative);
    let h = sc.homology(n);
    if h.rank() != 1 || !h.torsion().is_empty() {
        return Err(SpaceError::NotAManifold(format!("H_{n}(K, A; Z^w) = {}", h.describe())));
    }
    Ok(Chain { degree: n, twist, coeffs: sc.from_basis(n, &h.generators[0]) })
}

/// Whether a chain is a cycle relative to the subcomplex.
pub fn is_relative_cycle(k: &SimplicialSpace, c: &Chain) -> Result<bool, SpaceError> {
    let d = boundary(k, c)?;
    if d.degree < 0 {
        return Ok(true);
    }
    Ok(d.coeffs.iter().enumerate().all(|(i, &x)| x == 0 || k.in_sub(d.degree as usize, i)))
}

#[cfg(test)]
mod tests;
