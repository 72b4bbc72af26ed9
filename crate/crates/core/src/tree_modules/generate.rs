use rand::Rng;

use super::partition::Partition;
use super::FiniteTree;

/// Random tree of depth at most `max_depth`, at most three children per node
/// and at most `max_nodes` nodes.
pub fn random_tree<R: Rng>(rng: &mut R, max_depth: usize, max_nodes: usize) -> FiniteTree {
    let mut parents: Vec<Option<usize>> = vec![None];
    let mut depth = vec![0usize];
    let mut i = 0;
    while i < parents.len() {
        if depth[i] < max_depth {
            for _ in 0..rng.gen_range(0..=3) {
                if parents.len() >= max_nodes {
                    break;
                }
                parents.push(Some(i));
                depth.push(depth[i] + 1);
            }
        }
        i += 1;
    }
    FiniteTree::new(parents).expect("generated tree")
}

/// Random valid partition of `n` labels `s0, s1, ...` with uniformly chosen home nodes.
pub fn random_partition<R: Rng>(rng: &mut R, tree: &FiniteTree, n: usize) -> Partition {
    let homes: Vec<usize> = (0..n).map(|_| rng.gen_range(0..tree.len())).collect();
    Partition::from_homes(tree, (0..n).map(|s| format!("s{s}")).collect(), &homes)
}
