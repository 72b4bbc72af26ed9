//! Poincare and Lefschetz duality for finite simplicial pairs: cap maps on
//! homology, Browder ladders, duality torsion, gluing and surgery kernels.

mod browder;
mod gluing;
mod infinity;
mod kernels;
mod poincare;
mod torsion;

pub use browder::{browder_check, BrowderReport, SquareCheck};
pub use gluing::{gluing_check, triad_check, GluingReport, TriadReport};
pub use infinity::{truncated_duality_at_infinity, InfinityReport, TruncationCheck};
pub use kernels::{degree_one_class, simplicial_push, surgery_kernel_check, KernelDegree, KernelReport};
pub use poincare::{
    flip_check, poincare_check, subdivide_chain, subdivision_check, verify_duality, DegreeCheck, Direction,
    DualityReport, Witness,
};
pub use torsion::{duality_torsion, subdivide_voltage, DualityTorsion};

use std::collections::BTreeMap;

use thiserror::Error;

use crate::chains::{ChainError, HomologyGroup};
use crate::coefficients::{IntMatrix, RingError};
use crate::endtowers::TowerError;
use crate::simplicial::{self, Chain, Rel, SimplicialSpace, SpaceChains, SpaceError, Twist};
use crate::torsion::TorsionError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DualityError {
    #[error("class is not a relative cycle: {0}")]
    NotACycle(String),
    #[error("duality fails: {0}")]
    DualityFails(String),
    #[error("incompatible gluing data: {0}")]
    Gluing(String),
    #[error("not a degree one map: {0}")]
    NotDegreeOne(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Torsion(#[from] TorsionError),
    #[error(transparent)]
    Tower(#[from] TowerError),
}

/// A generator of `H_n(K, A; Z^w)`, or none when that group is not `Z`.
pub fn fundamental_class(k: &SimplicialSpace) -> Option<Chain> {
    simplicial::fundamental_class(k).ok()
}

pub(crate) fn twist_name(t: Twist) -> &'static str {
    match t {
        Twist::Trivial => "trivial",
        Twist::W => "w",
    }
}

/// Cochain twists worth checking: `Z` always, `Z^w` when the character is nontrivial.
pub(crate) fn cochain_twists(k: &SimplicialSpace) -> Vec<Twist> {
    if k.is_twisted() {
        vec![Twist::Trivial, Twist::W]
    } else {
        vec![Twist::Trivial]
    }
}

pub(crate) fn check_cycle(k: &SimplicialSpace, z: &Chain) -> Result<(), DualityError> {
    z.check(k)?;
    if !simplicial::is_relative_cycle(k, z)? {
        return Err(DualityError::NotACycle(format!("boundary of the {}-chain leaves the subcomplex", z.degree)));
    }
    Ok(())
}

/// Homology or cohomology of one degree, with the chain bookkeeping needed
/// to move classes in and out of full coordinates.
pub(crate) struct Groups {
    pub chains: SpaceChains,
    pub degree: i64,
    pub group: HomologyGroup,
}

impl Groups {
    pub fn homology(k: &SimplicialSpace, twist: Twist, rel: Rel, degree: i64) -> Groups {
        let chains = k.chains(twist, rel);
        let group = chains.homology(degree);
        Groups { chains, degree, group }
    }

    pub fn cohomology(k: &SimplicialSpace, twist: Twist, rel: Rel, degree: i64) -> Groups {
        let chains = k.chains(twist, rel);
        let group = chains.cohomology(degree);
        Groups { chains, degree, group }
    }

    /// Full-coordinate representative of each generator.
    pub fn representatives(&self) -> Vec<Vec<i64>> {
        self.group.generators.iter().map(|g| self.chains.from_basis(self.degree, g)).collect()
    }

    pub fn classify_full(&self, full: &[i64]) -> Result<Vec<i64>, ChainError> {
        self.group.classify(&self.chains.to_basis(self.degree, full))
    }

    pub fn describe(&self) -> String {
        self.group.describe()
    }
}

/// Matrix on generators of the map induced by `f` on full coordinates.
pub(crate) fn class_map(
    src: &Groups,
    tgt: &Groups,
    f: impl Fn(&[i64]) -> Result<Vec<i64>, DualityError>,
) -> Result<IntMatrix, DualityError> {
    let mut cols = Vec::new();
    for g in src.representatives() {
        cols.push(tgt.classify_full(&f(&g)?)?);
    }
    Ok(IntMatrix::from_columns(tgt.group.generators.len(), &cols))
}

/// Whether two maps into the same group agree on every generator.
pub(crate) fn same_map(tgt: &Groups, a: &IntMatrix, b: &IntMatrix) -> bool {
    (0..a.cols()).all(|j| tgt.group.group.equal_elements(&a.column(j), &b.column(j)))
}

pub(crate) fn terms(k: &SimplicialSpace, degree: i64, full: &[i64]) -> Vec<(Vec<usize>, i64)> {
    if degree < 0 {
        return vec![];
    }
    full.iter()
        .enumerate()
        .filter(|(_, &x)| x != 0)
        .map(|(i, &x)| (k.simplex(degree as usize, i).to_vec(), x))
        .collect()
}

/// Restrict a pair and an `n`-chain to the closure of `facets`, adding
/// `extra_sub` (old labels) to the inherited subcomplex.
pub(crate) fn restrict_pair(
    k: &SimplicialSpace,
    facets: &[Vec<usize>],
    extra_sub: &[Vec<usize>],
    z: &Chain,
) -> Result<(SimplicialSpace, Chain), DualityError> {
    let (sp, map) = k.restrict(facets)?;
    let mut sub = sp.sub_facets();
    for s in extra_sub {
        let t: Option<Vec<usize>> = s.iter().map(|v| map.get(v).copied()).collect();
        sub.push(t.ok_or_else(|| DualityError::Gluing(format!("{s:?} is not in the restriction")))?);
    }
    let sp = sp.with_sub_replaced(&sub)?;
    let inv: BTreeMap<usize, usize> = map.iter().map(|(&o, &n)| (n, o)).collect();
    let n = z.degree;
    if n < 0 || n as usize > sp.dim() {
        return Err(DualityError::Gluing(format!("restriction has no {n}-simplices")));
    }
    let mut zc = Chain::zero(&sp, n, z.twist);
    for (i, s) in sp.simplices(n as usize).iter().enumerate() {
        let old: Vec<usize> = s.iter().map(|v| inv[v]).collect();
        zc.coeffs[i] = z.coeffs[k.index_of(&old).unwrap()];
    }
    Ok((sp, zc))
}

#[cfg(test)]
mod tests;
