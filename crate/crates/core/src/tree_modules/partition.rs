use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{FiniteTree, TreeError};

/// `pi(A_p)` for every node `p`; the root's entry is `pi(T)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    pub tree: FiniteTree,
    pub labels: Vec<String>,
    pub pi: Vec<BTreeSet<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionJson {
    /// Parent of each node, `null` for the root.
    pub tree: Vec<Option<usize>>,
    #[serde(rename = "S")]
    pub labels: Vec<String>,
    /// Node (as a string) to labels; absent nodes get the empty set, an
    /// absent root gets all of `S`.
    pub pi: BTreeMap<String, Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: String,
    pub witness: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionReport {
    pub valid: bool,
    /// Axioms checked and satisfied, in order.
    pub checked: Vec<String>,
    pub violation: Option<Violation>,
}

impl Partition {
    /// The standard partition of the vertex set: `rho(A)` = vertices of `A`.
    pub fn standard(tree: &FiniteTree) -> Partition {
        let labels = (0..tree.len()).map(|v| v.to_string()).collect();
        let pi = (0..tree.len()).map(|p| tree.branch(p).into_iter().collect()).collect();
        Partition { tree: tree.clone(), labels, pi }
    }

    /// The partition putting each label in exactly the branches containing its home node.
    pub fn from_homes(tree: &FiniteTree, labels: Vec<String>, homes: &[usize]) -> Partition {
        assert_eq!(labels.len(), homes.len());
        let mut pi = vec![BTreeSet::new(); tree.len()];
        for (s, &h) in homes.iter().enumerate() {
            for a in tree.ancestors(h) {
                pi[a].insert(s);
            }
        }
        Partition { tree: tree.clone(), labels, pi }
    }

    pub fn label_index(&self, name: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == name)
    }

    /// Deepest node whose branch carries `s`; defined when the carrying nodes form a chain.
    pub fn home(&self, s: usize) -> Option<usize> {
        let carrying: Vec<usize> = (0..self.tree.len()).filter(|&p| self.pi[p].contains(&s)).collect();
        let deepest = *carrying.iter().max_by_key(|&&p| self.tree.depth(p))?;
        carrying.iter().all(|&p| self.tree.in_branch(deepest, p)).then_some(deepest)
    }

    /// Discard the top `k` levels: labels homed above depth `k` only stay in `pi(T)`.
    pub fn shift(&self, k: usize) -> Partition {
        let mut pi = self.pi.clone();
        for s in 0..self.labels.len() {
            if let Some(h) = self.home(s) {
                if self.tree.depth(h) < k {
                    for (p, set) in pi.iter_mut().enumerate() {
                        if p != self.tree.root() {
                            set.remove(&s);
                        }
                    }
                }
            }
        }
        Partition { tree: self.tree.clone(), labels: self.labels.clone(), pi }
    }

    /// `pi(A) subset of other(A)` for all `A` (same tree and labels).
    pub fn is_subpartition_of(&self, other: &Partition) -> bool {
        self.tree == other.tree && self.labels == other.labels && self.pi.iter().zip(&other.pi).all(|(a, b)| a.is_subset(b))
    }

    pub fn to_json(&self) -> PartitionJson {
        let pi = self
            .pi
            .iter()
            .enumerate()
            .filter(|(p, set)| !set.is_empty() || *p == self.tree.root())
            .map(|(p, set)| (p.to_string(), set.iter().map(|&s| self.labels[s].clone()).collect()))
            .collect();
        PartitionJson { tree: self.tree.parents().to_vec(), labels: self.labels.clone(), pi }
    }

    pub fn from_json(j: &PartitionJson) -> Result<Partition, TreeError> {
        let tree = FiniteTree::new(j.tree.clone())?;
        let distinct: BTreeSet<&String> = j.labels.iter().collect();
        if distinct.len() != j.labels.len() {
            return Err(TreeError::Tree("labels must be distinct".into()));
        }
        let mut pi = vec![BTreeSet::new(); tree.len()];
        pi[tree.root()] = (0..j.labels.len()).collect();
        for (node, ls) in &j.pi {
            let p: usize = node.parse().map_err(|_| TreeError::Tree(format!("node key {node:?} is not an index")))?;
            if p >= tree.len() {
                return Err(TreeError::Tree(format!("node {p} out of range")));
            }
            let mut set = BTreeSet::new();
            for l in ls {
                let s = j.labels.iter().position(|x| x == l).ok_or_else(|| TreeError::Tree(format!("label {l:?} is not in S")))?;
                set.insert(s);
            }
            pi[p] = set;
        }
        Ok(Partition { tree, labels: j.labels.clone(), pi })
    }
}

fn names(p: &Partition, set: &BTreeSet<usize>) -> Vec<String> {
    set.iter().map(|&s| p.labels[s].clone()).collect()
}

/// Depth-cut covers: branches at depth `d + 1` together with the shallower
/// leaves, for every `d`. Each covers all ends, with compact complement.
fn cut_covers(t: &FiniteTree) -> Vec<Vec<usize>> {
    let leaves = t.leaves();
    let mut out = Vec::new();
    for d in 0..t.max_depth() {
        let mut f: Vec<usize> = (0..t.len()).filter(|&p| t.depth(p) == d + 1).collect();
        f.extend(leaves.iter().copied().filter(|&l| t.depth(l) >= 1 && t.depth(l) <= d));
        f.sort_unstable();
        out.push(f);
    }
    if t.len() == 1 {
        out.push(vec![]);
    }
    out
}

fn check(p: &Partition) -> Result<Vec<String>, Violation> {
    let t = &p.tree;
    let fail = |axiom: &str, witness: String| Violation { axiom: axiom.into(), witness };
    let mut checked = Vec::new();
    for v in 0..t.len() {
        if let Some(q) = t.parent(v) {
            if let Some(s) = p.pi[v].difference(&p.pi[q]).next() {
                return Err(fail("functor", format!("label {} is in pi(A_{v}) but not in pi(A_{q})", p.labels[*s])));
            }
        }
    }
    checked.push("functor".into());
    let all: BTreeSet<usize> = (0..p.labels.len()).collect();
    if p.pi[t.root()] != all {
        let missing: BTreeSet<usize> = all.difference(&p.pi[t.root()]).copied().collect();
        return Err(fail("1", format!("pi(T) misses {:?}", names(p, &missing))));
    }
    checked.push("1".into());
    for s in 0..p.labels.len() {
        let carrying: Vec<usize> = (0..t.len()).filter(|&q| q != t.root() && p.pi[q].contains(&s)).collect();
        for (i, &a) in carrying.iter().enumerate() {
            for &b in &carrying[i + 1..] {
                if !t.in_branch(a, b) && !t.in_branch(b, a) {
                    return Err(fail("2", format!("disjoint branches A_{a} and A_{b} share label {}", p.labels[s])));
                }
            }
        }
    }
    checked.push("2".into());
    for cover in cut_covers(t) {
        let covered: BTreeSet<usize> = cover.iter().flat_map(|&c| t.branch(c)).collect();
        let images: BTreeSet<usize> = cover.iter().flat_map(|&c| p.pi[c].iter().copied()).collect();
        for s in all.difference(&images) {
            if let Some(q) = (0..t.len()).find(|&q| covered.contains(&q) && p.pi[q].contains(s)) {
                return Err(fail(
                    "3",
                    format!("label {} escapes the cover {cover:?} yet lies in pi(A_{q}) outside its compact complement", p.labels[*s]),
                ));
            }
        }
    }
    checked.push("3".into());
    for s in 0..p.labels.len() {
        let h = p.home(s).ok_or_else(|| fail("4", format!("label {} has no home node", p.labels[s])))?;
        let path = t.ancestors(h);
        let mut cover: Vec<usize> = t.children(h).to_vec();
        for &a in &path {
            cover.extend(t.children(a).iter().copied().filter(|c| !path.contains(c)));
        }
        if let Some(&c) = cover.iter().find(|&&c| p.pi[c].contains(&s)) {
            return Err(fail("4", format!("label {} is in pi(A_{c}) off its home path", p.labels[s])));
        }
    }
    checked.push("4".into());
    Ok(checked)
}

pub fn validate_partition(p: &Partition) -> PartitionReport {
    match check(p) {
        Ok(checked) => PartitionReport { valid: true, checked, violation: None },
        Err(v) => {
            let order = ["functor", "1", "2", "3", "4"];
            let n = order.iter().position(|&a| a == v.axiom).unwrap_or(0);
            PartitionReport { valid: false, checked: order[..n].iter().map(|s| s.to_string()).collect(), violation: Some(v) }
        }
    }
}

/// `lambda(A) = a(A) intersect b(A)`, validated.
pub fn intersect_partitions(a: &Partition, b: &Partition) -> Result<Partition, TreeError> {
    if a.tree != b.tree || a.labels != b.labels {
        return Err(TreeError::Tree("partitions must share the tree and the label set".into()));
    }
    let pi = a.pi.iter().zip(&b.pi).map(|(x, y)| x.intersection(y).copied().collect()).collect();
    let lambda = Partition { tree: a.tree.clone(), labels: a.labels.clone(), pi };
    match validate_partition(&lambda).violation {
        None => Ok(lambda),
        Some(v) => Err(TreeError::Partition { axiom: v.axiom, witness: v.witness }),
    }
}
