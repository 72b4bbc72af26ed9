use serde::Serialize;

use super::partition::{validate_partition, Partition};
use super::TreeError;
use crate::coefficients::{GroupRingElt, GroupSpec, RingMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// The free tree module `F_pi`: at node `p` the free `R_p`-module on
/// `pi(A_p)`, with `structure[p]: F_p -> F_parent(p)` over `R_parent(p)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FreeTreeModule {
    pub partition: Partition,
    pub rings: Vec<GroupSpec>,
    pub side: Side,
    structure: Vec<Option<RingMatrix>>,
}

/// Regard a matrix over `Z` (or the same ring) as one over `g`.
fn lift(m: &RingMatrix, g: GroupSpec) -> RingMatrix {
    if m.group() == g {
        return m.clone();
    }
    let rows = m.to_rows().iter().map(|r| r.iter().map(|x| GroupRingElt::from_terms(g, &x.terms())).collect()).collect();
    RingMatrix::from_rows(g, m.rows(), m.cols(), rows).expect("shape preserved")
}

fn inclusion(sub: &[usize], sup: &[usize], g: GroupSpec) -> RingMatrix {
    let mut m = RingMatrix::zeros(g, sup.len(), sub.len());
    for (j, s) in sub.iter().enumerate() {
        let i = sup.iter().position(|x| x == s).expect("basis inclusion");
        m.set(i, j, GroupRingElt::one(g));
    }
    m
}

impl FreeTreeModule {
    pub fn new(partition: Partition, rings: Vec<GroupSpec>) -> Result<FreeTreeModule, TreeError> {
        if let Some(v) = validate_partition(&partition).violation {
            return Err(TreeError::Partition { axiom: v.axiom, witness: v.witness });
        }
        let t = &partition.tree;
        if rings.len() != t.len() {
            return Err(TreeError::Module(format!("{} rings for {} nodes", rings.len(), t.len())));
        }
        let mut structure = vec![None; t.len()];
        for p in 0..t.len() {
            if let Some(q) = t.parent(p) {
                if rings[p] != rings[q] && !rings[p].is_trivial() {
                    return Err(TreeError::Module(format!("no ring map from node {p} to node {q}")));
                }
                let (bp, bq) = (basis(&partition, p), basis(&partition, q));
                structure[p] = Some(inclusion(&bp, &bq, rings[q]));
            }
        }
        Ok(FreeTreeModule { partition, rings, side: Side::Left, structure })
    }

    pub fn uniform(partition: Partition, ring: GroupSpec) -> Result<FreeTreeModule, TreeError> {
        let n = partition.tree.len();
        FreeTreeModule::new(partition, vec![ring; n])
    }

    pub fn rank(&self, p: usize) -> usize {
        self.partition.pi[p].len()
    }

    pub fn ranks(&self) -> Vec<usize> {
        (0..self.partition.tree.len()).map(|p| self.rank(p)).collect()
    }

    pub fn basis(&self, p: usize) -> Vec<usize> {
        basis(&self.partition, p)
    }

    /// `F_p -> F_parent(p)`; `None` at the root.
    pub fn structure_map(&self, p: usize) -> Option<&RingMatrix> {
        self.structure[p].as_ref()
    }
}

fn basis(p: &Partition, node: usize) -> Vec<usize> {
    p.pi[node].iter().copied().collect()
}

/// A map of free tree modules over the same tree, node by node.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleMap {
    /// `maps[p]: source_p -> target_p` over `R_p`.
    pub maps: Vec<RingMatrix>,
}

impl ModuleMap {
    /// The map permuting labels by `sigma`, where `sigma` preserves every `pi(A_p)`.
    pub fn permutation(m: &FreeTreeModule, sigma: &[usize]) -> Result<ModuleMap, TreeError> {
        let mut maps = Vec::new();
        for p in 0..m.partition.tree.len() {
            let b = m.basis(p);
            let mut f = RingMatrix::zeros(m.rings[p], b.len(), b.len());
            for (j, s) in b.iter().enumerate() {
                let i = b
                    .iter()
                    .position(|&x| x == sigma[*s])
                    .ok_or_else(|| TreeError::Module(format!("permutation moves label {s} out of pi(A_{p})")))?;
                f.set(i, j, GroupRingElt::one(m.rings[p]));
            }
            maps.push(f);
        }
        Ok(ModuleMap { maps })
    }

    pub fn identity(m: &FreeTreeModule) -> ModuleMap {
        ModuleMap { maps: (0..m.partition.tree.len()).map(|p| RingMatrix::identity(m.rings[p], m.rank(p))).collect() }
    }

    /// Naturality: `target.structure o f_p = f_parent o source.structure`.
    pub fn check(&self, source: &FreeTreeModule, target: &FreeTreeModule) -> Result<(), TreeError> {
        let t = &source.partition.tree;
        for p in 0..t.len() {
            let f = &self.maps[p];
            if (f.rows(), f.cols()) != (target.rank(p), source.rank(p)) {
                return Err(TreeError::Module(format!("map at node {p} has the wrong shape")));
            }
            if let Some(q) = t.parent(p) {
                let g = source.rings[q];
                let lhs = target.structure_map(p).unwrap().mul(&lift(f, g));
                let rhs = self.maps[q].mul(source.structure_map(p).unwrap());
                if lhs != rhs {
                    return Err(TreeError::Module(format!("square at node {p} does not commute")));
                }
            }
        }
        Ok(())
    }

    /// `self o other`.
    pub fn compose(&self, other: &ModuleMap) -> ModuleMap {
        ModuleMap { maps: self.maps.iter().zip(&other.maps).map(|(a, b)| a.mul(b)).collect() }
    }

    /// The dual map `f*: target* -> source*`, conjugate transpose at each node.
    pub fn dual(&self) -> ModuleMap {
        ModuleMap { maps: self.maps.iter().map(|m| m.conjugate_transpose()).collect() }
    }
}

/// Compactly supported dual: same bases, opposite side. At a node the dual is
/// `Hom(F_p, R_p)` on the dual basis; the structure map is the dual of the
/// restriction `F_parent -> F_p`, i.e. extension by zero.
pub fn free_dual(m: &FreeTreeModule) -> FreeTreeModule {
    let t = &m.partition.tree;
    let structure = (0..t.len())
        .map(|p| {
            m.structure[p].as_ref().map(|inc| {
                // restriction is the transpose of the basis inclusion
                let restriction = inc.transpose();
                restriction.conjugate_transpose()
            })
        })
        .collect();
    FreeTreeModule {
        partition: m.partition.clone(),
        rings: m.rings.clone(),
        side: match m.side {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        },
        structure,
    }
}
