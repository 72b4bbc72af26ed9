//! Finite rooted trees, partitions of label sets over their branches, free
//! tree modules and their compact-support duals, and the stabilization of a
//! free module against copies of the standard one.

mod generate;
mod module;
mod partition;
mod stabilize;

pub use generate::{random_partition, random_tree};
pub use module::{free_dual, FreeTreeModule, ModuleMap, Side};
pub use partition::{intersect_partitions, validate_partition, Partition, PartitionJson, PartitionReport, Violation};
pub use stabilize::{brute_force_copies, stabilize, Generator, Stabilization};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("invalid tree: {0}")]
    Tree(String),
    #[error("invalid partition: axiom {axiom} fails: {witness}")]
    Partition { axiom: String, witness: String },
    #[error("capacity exhausted: {0}")]
    Capacity(String),
    #[error("module data: {0}")]
    Module(String),
}

/// A finite rooted tree given by its parent array.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteTree {
    parents: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    depth: Vec<usize>,
    root: usize,
}

impl FiniteTree {
    pub fn new(parents: Vec<Option<usize>>) -> Result<FiniteTree, TreeError> {
        let n = parents.len();
        let roots: Vec<usize> = (0..n).filter(|&v| parents[v].is_none()).collect();
        if roots.len() != 1 {
            return Err(TreeError::Tree(format!("expected one root, found {}", roots.len())));
        }
        let mut children = vec![Vec::new(); n];
        for (v, p) in parents.iter().enumerate() {
            if let Some(p) = *p {
                if p >= n || p == v {
                    return Err(TreeError::Tree(format!("node {v} has invalid parent {p}")));
                }
                children[p].push(v);
            }
        }
        let root = roots[0];
        let mut depth = vec![usize::MAX; n];
        depth[root] = 0;
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            for &c in &children[v] {
                depth[c] = depth[v] + 1;
                stack.push(c);
            }
        }
        if let Some(v) = depth.iter().position(|&d| d == usize::MAX) {
            return Err(TreeError::Tree(format!("node {v} is not connected to the root")));
        }
        Ok(FiniteTree { parents, children, depth, root })
    }

    /// Path tree `0 - 1 - ... - d`.
    pub fn path(d: usize) -> FiniteTree {
        FiniteTree::new((0..=d).map(|v| v.checked_sub(1)).collect()).unwrap()
    }

    /// Complete binary tree of the given depth, nodes in breadth-first order.
    pub fn binary(d: usize) -> FiniteTree {
        let n = (1usize << (d + 1)) - 1;
        FiniteTree::new((0..n).map(|v| if v == 0 { None } else { Some((v - 1) / 2) }).collect()).unwrap()
    }

    pub fn len(&self) -> usize {
        self.parents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parents.is_empty()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parents[v]
    }

    pub fn parents(&self) -> &[Option<usize>] {
        &self.parents
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn depth(&self, v: usize) -> usize {
        self.depth[v]
    }

    pub fn max_depth(&self) -> usize {
        self.depth.iter().copied().max().unwrap_or(0)
    }

    pub fn leaves(&self) -> Vec<usize> {
        (0..self.len()).filter(|&v| self.children[v].is_empty()).collect()
    }

    /// Whether `v` lies in the branch `A_p`.
    pub fn in_branch(&self, v: usize, p: usize) -> bool {
        let mut x = v;
        loop {
            if x == p {
                return true;
            }
            match self.parents[x] {
                Some(q) => x = q,
                None => return false,
            }
        }
    }

    /// The branch `A_p`: `p` and all its descendants (the whole tree for the root).
    pub fn branch(&self, p: usize) -> Vec<usize> {
        let mut out = vec![p];
        let mut i = 0;
        while i < out.len() {
            out.extend(self.children[out[i]].iter().copied());
            i += 1;
        }
        out.sort_unstable();
        out
    }

    /// Nodes ordered so that parents come before children.
    pub fn top_down(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&v| (self.depth[v], v));
        order
    }

    /// Root-to-`v` path.
    pub fn ancestors(&self, v: usize) -> Vec<usize> {
        let mut out = vec![v];
        while let Some(p) = self.parents[*out.last().unwrap()] {
            out.push(p);
        }
        out.reverse();
        out
    }
}

#[cfg(test)]
mod tests;
