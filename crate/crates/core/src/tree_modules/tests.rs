use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::coefficients::GroupSpec;

fn set(xs: &[usize]) -> BTreeSet<usize> {
    xs.iter().copied().collect()
}

#[test]
fn standard_partitions_are_valid() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..100 {
        let depth = rng.gen_range(0..=5);
        let t = random_tree(&mut rng, depth, 40);
        let r = validate_partition(&Partition::standard(&t));
        assert!(r.valid, "{:?}", r.violation);
        assert_eq!(r.checked, ["functor", "1", "2", "3", "4"]);
    }
}

#[test]
fn violations_carry_witnesses() {
    let t = FiniteTree::binary(1);
    let mut p = Partition::from_homes(&t, vec!["a".into(), "b".into()], &[1, 2]);
    assert!(validate_partition(&p).valid);
    // the disjoint branches A_1 and A_2 both get label a
    p.pi[2].insert(0);
    let r = validate_partition(&p);
    let v = r.violation.unwrap();
    assert_eq!(v.axiom, "2");
    assert!(v.witness.contains("A_1") && v.witness.contains("A_2") && v.witness.contains('a'));
    assert_eq!(r.checked, ["functor", "1"]);

    let mut p = Partition::from_homes(&t, vec!["a".into()], &[1]);
    p.pi[0].clear();
    assert_eq!(validate_partition(&p).violation.unwrap().axiom, "functor");
    let mut p = Partition::from_homes(&t, vec!["a".into(), "b".into()], &[0, 0]);
    p.pi[0].remove(&1);
    assert_eq!(validate_partition(&p).violation.unwrap().axiom, "1");

    // a label on two incomparable deep branches
    let t = FiniteTree::binary(2);
    let mut p = Partition::from_homes(&t, vec!["x".into()], &[3]);
    p.pi[2].insert(0);
    p.pi[5].insert(0);
    let v = validate_partition(&p).violation.unwrap();
    assert_eq!(v.axiom, "2");
}

#[test]
fn intersections() {
    let t = FiniteTree::binary(3);
    let rho = Partition::standard(&t);
    assert_eq!(intersect_partitions(&rho, &rho).unwrap(), rho);
    let shifted = rho.shift(2);
    assert!(validate_partition(&shifted).valid);
    assert_eq!(intersect_partitions(&rho, &shifted).unwrap(), shifted);
    assert_eq!(shifted.pi[1], t.branch(1).into_iter().filter(|&v| t.depth(v) >= 2).collect());
    assert_eq!(shifted.pi[0].len(), t.len());

    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..100 {
        let t = random_tree(&mut rng, 4, 30);
        let a = random_partition(&mut rng, &t, 6);
        let b = random_partition(&mut rng, &t, 6);
        let l = intersect_partitions(&a, &b).unwrap();
        assert!(l.is_subpartition_of(&a) && l.is_subpartition_of(&b));
        assert!(validate_partition(&l).valid);
    }
    let other = Partition::standard(&FiniteTree::path(2));
    assert!(intersect_partitions(&rho, &other).is_err());
}

#[test]
fn stabilize_without_labels() {
    for t in [FiniteTree::path(0), FiniteTree::path(3), FiniteTree::binary(2)] {
        let p = Partition::from_homes(&t, vec![], &[]);
        let s = stabilize(&p).unwrap();
        assert_eq!(s.copies, 1);
        assert!(s.padding.is_empty());
        assert!(s.alpha.iter().all(|(g, slot)| matches!(g, Generator::Vertex(v) if *slot == (*v, 0))));
        s.verify(&p).unwrap();
    }
}

#[test]
fn stabilize_path_with_leaf_label() {
    let t = FiniteTree::path(3);
    let p = Partition::from_homes(&t, vec!["s".into()], &[3]);
    let s = stabilize(&p).unwrap();
    assert_eq!(s.copies, 2);
    assert!(s.alpha.contains(&(Generator::Label(0), (3, 1))));
    assert_eq!(s.padding, vec![(0, 1), (1, 1), (2, 1)]);
    assert_eq!(s.blocks[3], (3, 2, 1));
    s.verify(&p).unwrap();
    assert_eq!(brute_force_copies(&p, 3), Some(2));
    assert_eq!(brute_force_copies(&p, 1), None);
}

#[test]
fn stabilize_binary_with_leaf_labels() {
    let t = FiniteTree::binary(2);
    let leaves = t.leaves();
    let p = Partition::from_homes(&t, leaves.iter().map(|l| format!("s{l}")).collect(), &leaves);
    let s = stabilize(&p).unwrap();
    assert_eq!(s.copies, 2);
    assert_eq!(s.padding.len(), t.len() * 2 - t.len() - leaves.len());
    s.verify(&p).unwrap();
    assert_eq!(brute_force_copies(&p, 3), Some(2));
    // labels at the root fit into the slack of a single extra copy
    let p = Partition::from_homes(&t, (0..7).map(|i| format!("r{i}")).collect(), &[0; 7]);
    let s = stabilize(&p).unwrap();
    assert_eq!(s.copies, 2);
    assert!(!s.lambda.pi[1].is_empty());
    s.verify(&p).unwrap();
}

#[test]
fn stabilize_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..50 {
        let t = random_tree(&mut rng, 3, 7);
        let n = rng.gen_range(0..=4);
        let p = random_partition(&mut rng, &t, n);
        let s = stabilize(&p).unwrap();
        s.verify(&p).unwrap();
        assert_eq!(brute_force_copies(&p, 6), Some(s.copies), "{:?}", p.to_json());
    }
}

#[test]
fn invalid_partitions_are_not_stabilized() {
    let t = FiniteTree::binary(1);
    let mut p = Partition::from_homes(&t, vec!["a".into()], &[1]);
    p.pi[2].insert(0);
    assert!(matches!(stabilize(&p), Err(TreeError::Partition { .. })));
}

fn swap(n: usize, a: usize, b: usize) -> Vec<usize> {
    let mut s: Vec<usize> = (0..n).collect();
    s.swap(a, b);
    s
}

#[test]
fn duals() {
    let t = FiniteTree::binary(2);
    let rho = Partition::standard(&t);
    let m = FreeTreeModule::uniform(rho, GroupSpec::trivial()).unwrap();
    let d = free_dual(&m);
    assert_eq!(d.ranks(), m.ranks());
    assert_eq!(d.side, Side::Right);
    assert_eq!(free_dual(&d), m);

    let g = GroupSpec::cyclic(3).unwrap();
    let labels: Vec<String> = (0..5).map(|i| format!("s{i}")).collect();
    let p = Partition::from_homes(&t, labels, &[3, 3, 1, 0, 0]);
    let mut rings = vec![g; t.len()];
    rings[3] = GroupSpec::trivial();
    let m = FreeTreeModule::new(p, rings).unwrap();
    assert_eq!(free_dual(&free_dual(&m)), m);
    assert_eq!(free_dual(&m).ranks(), m.ranks());
    let f = ModuleMap::permutation(&m, &swap(5, 3, 4)).unwrap();
    let h = ModuleMap::permutation(&m, &swap(5, 0, 1)).unwrap();
    f.check(&m, &m).unwrap();
    h.check(&m, &m).unwrap();
    let fh = f.compose(&h);
    fh.check(&m, &m).unwrap();
    let dm = free_dual(&m);
    assert_eq!(fh.dual(), h.dual().compose(&f.dual()));
    fh.dual().check(&dm, &dm).unwrap();
    assert_eq!(ModuleMap::identity(&m).dual(), ModuleMap::identity(&dm));
    // moving a label across branches is not a module map
    assert!(ModuleMap::permutation(&m, &swap(5, 1, 2)).is_err());
}

#[test]
fn ring_maps_must_exist() {
    let t = FiniteTree::path(1);
    let p = Partition::standard(&t);
    let rings = vec![GroupSpec::trivial(), GroupSpec::cyclic(2).unwrap()];
    assert!(FreeTreeModule::new(p, rings).is_err());
}

#[test]
fn trees() {
    assert!(FiniteTree::new(vec![None, None]).is_err());
    assert!(FiniteTree::new(vec![Some(1), Some(0)]).is_err());
    assert!(FiniteTree::new(vec![None, Some(2), Some(1)]).is_err());
    let t = FiniteTree::binary(2);
    assert_eq!(t.len(), 7);
    assert_eq!(t.leaves(), vec![3, 4, 5, 6]);
    assert_eq!(t.branch(1), vec![1, 3, 4]);
    assert_eq!(t.ancestors(5), vec![0, 2, 5]);
    assert_eq!(set(&t.branch(0)).len(), 7);
}

#[test]
fn json_format() {
    let j = r#"{"tree": [null, 0, 0, 1], "S": ["a", "b"], "pi": {"1": ["a"], "3": ["a"], "2": ["b"]}}"#;
    let p = Partition::from_json(&serde_json::from_str(j).unwrap()).unwrap();
    assert!(validate_partition(&p).valid);
    assert_eq!(p.home(0), Some(3));
    assert_eq!(p.home(1), Some(2));
    let back = Partition::from_json(&serde_json::from_str(&serde_json::to_string(&p.to_json()).unwrap()).unwrap()).unwrap();
    assert_eq!(back, p);
    let bad = r#"{"tree": [null], "S": ["a"], "pi": {"0": ["c"]}}"#;
    assert!(Partition::from_json(&serde_json::from_str(bad).unwrap()).is_err());
}
