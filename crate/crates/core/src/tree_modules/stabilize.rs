use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use super::partition::{intersect_partitions, validate_partition, Partition, PartitionReport};
use super::TreeError;

/// A generator of `F_pi + F^(1)`: a tree vertex or a label of `S`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", content = "index", rename_all = "lowercase")]
pub enum Generator {
    Vertex(usize),
    Label(usize),
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Vertex(v) => write!(f, "v{v}"),
            Generator::Label(s) => write!(f, "s{s}"),
        }
    }
}

/// `alpha: V + S -> V x {0..n-1}`, injective, sending the block of generators
/// homed at `p` into `A_p x {0..n-1}` and hitting every `(p, 0)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Stabilization {
    pub copies: usize,
    pub alpha: Vec<(Generator, (usize, usize))>,
    /// Slots outside the image of `alpha`; each is an extra standard generator.
    pub padding: Vec<(usize, usize)>,
    /// Per node: `(p, |K_p|, |L_p|)`.
    pub blocks: Vec<(usize, usize, usize)>,
    /// `alpha o (pi + rho)` with the padding, as a partition of the slots.
    #[serde(skip)]
    pub tau: Partition,
    #[serde(skip)]
    pub lambda: Partition,
    pub lambda_report: PartitionReport,
    /// `lambda = tau`, `lambda` is inside the standard partition of `n` copies.
    pub equivalent_to_standard: bool,
}

fn homes(p: &Partition) -> Result<Vec<(Generator, usize)>, TreeError> {
    let mut out: Vec<(Generator, usize)> = (0..p.tree.len()).map(|v| (Generator::Vertex(v), v)).collect();
    for s in 0..p.labels.len() {
        let h = p.home(s).ok_or_else(|| TreeError::Partition { axiom: "2".into(), witness: format!("label {} has no home", p.labels[s]) })?;
        out.push((Generator::Label(s), h));
    }
    Ok(out)
}

/// Least `n` with `|generators homed in A_q| <= n |A_q|` for every branch.
fn hall_copies(p: &Partition, gens: &[(Generator, usize)]) -> usize {
    let t = &p.tree;
    (0..t.len())
        .map(|q| {
            let size = t.branch(q).len();
            let demand = gens.iter().filter(|(_, h)| t.in_branch(*h, q)).count();
            demand.div_ceil(size)
        })
        .max()
        .unwrap_or(1)
        .max(1)
}

/// The standard partition of `n` copies of the vertex set; slot `(v, c)` is label `v.c`.
fn standard_copies(p: &Partition, n: usize) -> Partition {
    let t = &p.tree;
    let homes: Vec<usize> = (0..t.len()).flat_map(|v| std::iter::repeat(v).take(n)).collect();
    let labels = (0..t.len()).flat_map(|v| (0..n).map(move |c| format!("{v}.{c}"))).collect();
    Partition::from_homes(t, labels, &homes)
}

pub fn stabilize(p: &Partition) -> Result<Stabilization, TreeError> {
    if let Some(v) = validate_partition(p).violation {
        return Err(TreeError::Partition { axiom: v.axiom, witness: v.witness });
    }
    let t = &p.tree;
    let gens = homes(p)?;
    let n = hall_copies(p, &gens);
    let mut used: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut alpha = Vec::new();
    let mut blocks = Vec::new();
    for &node in t.top_down().iter().rev() {
        let block: Vec<Generator> = gens.iter().filter(|(_, h)| *h == node).map(|(g, _)| *g).collect();
        blocks.push((node, block.len(), 1));
        // the vertex itself fills the L-block
        used.insert((node, 0));
        alpha.push((Generator::Vertex(node), (node, 0)));
        let mut free = t.top_down().into_iter().filter(|&v| t.in_branch(v, node)).flat_map(|v| (0..n).map(move |c| (v, c)));
        for g in block.into_iter().filter(|g| !matches!(g, Generator::Vertex(_))) {
            let slot = free
                .by_ref()
                .find(|s| !used.contains(s))
                .ok_or_else(|| TreeError::Capacity(format!("no free slot below node {node} with {n} copies")))?;
            used.insert(slot);
            alpha.push((g, slot));
        }
    }
    alpha.sort();
    blocks.sort();
    let padding: Vec<(usize, usize)> = (0..t.len()).flat_map(|v| (0..n).map(move |c| (v, c))).filter(|s| !used.contains(s)).collect();
    // tau on slots: a slot is homed where its preimage is homed; padding slots at their vertex
    let standard = standard_copies(p, n);
    let slot_index = |(v, c): (usize, usize)| v * n + c;
    let mut slot_home = vec![0usize; t.len() * n];
    for &(g, slot) in &alpha {
        slot_home[slot_index(slot)] = gens.iter().find(|(x, _)| *x == g).unwrap().1;
    }
    for &slot in &padding {
        slot_home[slot_index(slot)] = slot.0;
    }
    let tau = Partition::from_homes(t, standard.labels.clone(), &slot_home);
    let lambda = intersect_partitions(&tau, &standard)?;
    let lambda_report = validate_partition(&lambda);
    let equivalent_to_standard = lambda == tau && lambda.is_subpartition_of(&standard) && lambda_report.valid;
    Ok(Stabilization { copies: n, alpha, padding, blocks, tau, lambda, lambda_report, equivalent_to_standard })
}

impl Stabilization {
    /// Injectivity, block containment and the L-block hits, checked from scratch.
    pub fn verify(&self, p: &Partition) -> Result<(), TreeError> {
        let t = &p.tree;
        let gens = homes(p)?;
        let image: BTreeSet<(usize, usize)> = self.alpha.iter().map(|(_, s)| *s).collect();
        if image.len() != self.alpha.len() || self.alpha.len() != gens.len() {
            return Err(TreeError::Capacity("alpha is not injective on all generators".into()));
        }
        for (g, (v, c)) in &self.alpha {
            let h = gens.iter().find(|(x, _)| x == g).unwrap().1;
            if !t.in_branch(*v, h) || *c >= self.copies {
                return Err(TreeError::Capacity(format!("{g} leaves its branch A_{h}")));
            }
        }
        if let Some(v) = (0..t.len()).find(|&v| !image.contains(&(v, 0))) {
            return Err(TreeError::Capacity(format!("L-block of node {v} is missed")));
        }
        if !self.equivalent_to_standard {
            return Err(TreeError::Capacity("certificate partition is not inside the standard one".into()));
        }
        Ok(())
    }
}

/// Least `n <= max` admitting such an `alpha`, by exhaustive search.
pub fn brute_force_copies(p: &Partition, max: usize) -> Option<usize> {
    let t = &p.tree;
    let gens = homes(p).ok()?;
    (1..=max).find(|&n| {
        let slots: Vec<(usize, usize)> = (0..t.len()).flat_map(|v| (0..n).map(move |c| (v, c))).collect();
        let options: Vec<Vec<usize>> =
            gens.iter()
                .map(|(_, h)| {
                    let mut o: Vec<usize> = (0..slots.len()).filter(|&i| t.in_branch(slots[i].0, *h)).collect();
                    o.sort_by_key(|&i| (slots[i] != (*h, 0), i));
                    o
                })
                .collect();
        let mut used = vec![false; slots.len()];
        search(0, &options, &mut used, &slots, t.len())
    })
}

fn search(i: usize, options: &[Vec<usize>], used: &mut [bool], slots: &[(usize, usize)], nodes: usize) -> bool {
    if i == options.len() {
        return (0..nodes).all(|v| slots.iter().position(|&s| s == (v, 0)).map_or(false, |k| used[k]));
    }
    for &k in &options[i] {
        if !used[k] {
            used[k] = true;
            if search(i + 1, options, used, slots, nodes) {
                return true;
            }
            used[k] = false;
        }
    }
    false
}
