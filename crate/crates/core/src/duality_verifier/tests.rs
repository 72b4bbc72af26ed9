use std::collections::BTreeMap;

use super::*;
use crate::coefficients::GroupSpec;
use crate::corpus;
use crate::simplicial::Voltage;
use crate::torsion::Verdict;

fn class(k: &SimplicialSpace) -> Chain {
    fundamental_class(k).expect("fundamental class")
}

fn circle_voltage(g: GroupSpec) -> (SimplicialSpace, Voltage) {
    let k = corpus::circle(3);
    let v = Voltage::new(&k, g, BTreeMap::from([((0, 1), 1)])).unwrap();
    (k, v)
}

/// The 2-cycle of the sphere summand of the wedge.
fn wedge_class(k: &SimplicialSpace) -> Chain {
    let sc = k.chains(Twist::Trivial, Rel::Absolute);
    let h = sc.homology(2);
    assert_eq!(h.describe(), "Z");
    Chain { degree: 2, twist: Twist::Trivial, coeffs: sc.from_basis(2, &h.generators[0]) }
}

#[test]
fn fundamental_classes() {
    assert!(fundamental_class(&corpus::sphere(2)).is_some());
    assert!(fundamental_class(&corpus::rp2_untwisted()).is_none());
    let z = fundamental_class(&corpus::rp2()).unwrap();
    assert_eq!(z.twist, Twist::W);
}

#[test]
fn corpus_manifolds_satisfy_duality() {
    for (name, k) in corpus::manifolds() {
        if name == "point" {
            continue;
        }
        let r = poincare_check(&k, &class(&k)).unwrap();
        assert!(r.passes(), "{name}: {:?}", r.witnesses);
        assert!(r.directions_agree, "{name}");
        assert!(r.degrees.iter().all(|d| d.diagonals_agree), "{name}");
    }
}

#[test]
fn torus_degree_one() {
    let k = corpus::torus7();
    let r = poincare_check(&k, &class(&k)).unwrap();
    let d = r.degrees.iter().find(|d| d.degree == 1 && d.direction == Direction::RelativeToAbsolute).unwrap();
    assert_eq!((d.cohomology.as_str(), d.homology.as_str(), d.iso), ("Z^2", "Z^2", true));
}

#[test]
fn wedge_fails_in_degree_one() {
    let k = corpus::s1_wedge_s2();
    let z = wedge_class(&k);
    let r = poincare_check(&k, &z).unwrap();
    assert_eq!(r.verdict, Verdict::Fail);
    let bad: Vec<i64> = r.degrees.iter().filter(|d| !d.iso).map(|d| d.degree).collect();
    assert!(bad.contains(&1), "{bad:?}");
    let w = r.witnesses.iter().find(|w| w.degree == 1).unwrap();
    assert!(!w.representative.is_empty());
    assert!(subdivision_check(&k, &z).unwrap());
}

#[test]
fn subdivision_and_flip_are_stable() {
    for (name, k) in corpus::manifolds() {
        if name == "point" || name == "s1xs2" {
            continue;
        }
        let z = class(&k);
        let sd = k.subdivide();
        let zs = subdivide_chain(&k, &sd, &z).unwrap();
        assert!(crate::simplicial::is_relative_cycle(&sd, &zs).unwrap(), "{name}");
        assert!(subdivision_check(&k, &z).unwrap(), "{name}");
        assert!(flip_check(&k, &z).unwrap(), "{name}");
    }
}

#[test]
fn not_a_cycle_is_rejected() {
    let k = corpus::torus7();
    let mut z = class(&k);
    z.coeffs[0] = 0;
    assert!(matches!(poincare_check(&k, &z), Err(DualityError::NotACycle(_))));
}

#[test]
fn browder_ladders() {
    let k = corpus::disk();
    let r = browder_check(&k, &class(&k), Twist::Trivial).unwrap();
    assert_eq!(r.verdict, Verdict::Pass);
    assert!(!r.vacuous);
    let k = corpus::mobius();
    let r = browder_check(&k, &class(&k), Twist::Trivial).unwrap();
    assert_eq!(r.verdict, Verdict::Pass, "{:?}", r.squares);
    let k = corpus::torus7();
    assert!(browder_check(&k, &class(&k), Twist::Trivial).unwrap().vacuous);
}

#[test]
fn browder_all_pairs_and_coefficients() {
    for (name, k) in corpus::manifolds() {
        if !k.has_subcomplex() {
            continue;
        }
        for g in [Twist::Trivial, Twist::W] {
            let r = browder_check(&k, &class(&k), g).unwrap();
            assert_eq!(r.verdict, Verdict::Pass, "{name} {g:?}: {:?}", r.squares);
        }
    }
}

#[test]
fn browder_sign_is_not_vacuous() {
    let k = corpus::disk();
    let r = browder_check(&k, &class(&k), Twist::Trivial).unwrap();
    let s = r.squares.iter().find(|s| s.square == "coboundary" && s.degree == 2).unwrap();
    assert!(s.commutes && !s.unsigned_connecting_commutes);
}

#[test]
fn duality_torsion_examples() {
    let k = corpus::torus7();
    let t = duality_torsion(&k, &class(&k), None).unwrap();
    assert!(t.trivial);
    assert_eq!(t.relation, Verdict::Pass);
    let (k, v) = circle_voltage(GroupSpec::infinite_cyclic());
    let t = duality_torsion(&k, &class(&k), Some(&v)).unwrap();
    assert!(t.trivial, "{t:?}");
    assert_eq!(t.relation, Verdict::Pass);
    for n in 2..=6 {
        let (k, v) = circle_voltage(GroupSpec::cyclic(n).unwrap());
        let t = duality_torsion(&k, &class(&k), Some(&v)).unwrap();
        assert!(t.trivial, "C{n}");
        assert_eq!(t.relation, Verdict::Pass);
    }
}

#[test]
fn duality_torsion_over_z_on_corpus() {
    for (name, k) in corpus::manifolds() {
        if name == "point" || name == "s1xs2" {
            continue;
        }
        let t = duality_torsion(&k, &class(&k), None).unwrap();
        assert_eq!(t.relation, Verdict::Pass, "{name}");
    }
    let k = corpus::s1_wedge_s2();
    assert!(matches!(duality_torsion(&k, &wedge_class(&k), None), Err(DualityError::DualityFails(_))));
}

#[test]
fn duality_torsion_of_a_covered_annulus() {
    let k = corpus::annulus();
    let wrap: BTreeMap<(usize, usize), i64> = k.simplices(1).iter().filter(|e| e[0] / 2 == 0 && e[1] / 2 == 2).map(|e| ((e[0], e[1]), 1)).collect();
    for g in [GroupSpec::cyclic(3).unwrap(), GroupSpec::infinite_cyclic()] {
        let v = Voltage::new(&k, g, wrap.clone()).unwrap();
        let t = duality_torsion(&k, &class(&k), Some(&v)).unwrap();
        assert_eq!(t.relation, Verdict::Pass);
    }
}

#[test]
fn torsion_is_subdivision_invariant() {
    for n in [2u32, 5] {
        let (k, v) = circle_voltage(GroupSpec::cyclic(n).unwrap());
        let z = class(&k);
        let sd = k.subdivide();
        let vs = subdivide_voltage(&k, &sd, &v).unwrap();
        let zs = subdivide_chain(&k, &sd, &z).unwrap();
        let a = duality_torsion(&k, &z, Some(&v)).unwrap();
        let b = duality_torsion(&sd, &zs, Some(&vs)).unwrap();
        assert_eq!(a.trivial, b.trivial);
        assert_eq!(a.classes[0].compare(&b.classes[0]), crate::torsion::Comparison::Equal);
    }
}

#[test]
fn gluing_examples() {
    let s2 = corpus::sphere(2);
    let (a, b): (Vec<Vec<usize>>, Vec<Vec<usize>>) = s2.simplices(2).iter().cloned().partition(|t| t.contains(&0));
    let r = gluing_check(&s2, &a, &b, &class(&s2)).unwrap();
    assert_eq!((r.whole, r.first, r.second, r.consistent), (Verdict::Pass, Verdict::Pass, Verdict::Pass, true));
    assert_eq!(r.interface.len(), 3);
    let (k, a, b) = corpus::long_annulus_halves();
    let r = gluing_check(&k, &a, &b, &class(&k)).unwrap();
    assert_eq!((r.whole, r.first, r.second), (Verdict::Pass, Verdict::Pass, Verdict::Pass));
    let (k, a, b) = corpus::klein_bottle_halves();
    let r = gluing_check(&k, &a, &b, &class(&k)).unwrap();
    assert_eq!((r.whole, r.first, r.second), (Verdict::Pass, Verdict::Pass, Verdict::Pass), "{r:?}");
    assert!(gluing_check(&k, &a, &a, &class(&k)).is_err());
}

#[test]
fn triads() {
    let k = corpus::disk();
    let r = triad_check(&k, &[vec![0, 1]], &class(&k)).unwrap();
    assert_eq!(r.statements, [Verdict::Pass; 3]);
    let k = corpus::long_annulus();
    let d0: Vec<Vec<usize>> = vec![vec![0, 3], vec![3, 6], vec![0, 6]];
    let r = triad_check(&k, &d0, &class(&k)).unwrap();
    assert_eq!(r.statements, [Verdict::Pass; 3], "{r:?}");
    assert!(r.equivalent);
}

#[test]
fn surgery_kernels() {
    let k = corpus::torus7();
    let id: Vec<usize> = (0..k.n_vertices()).collect();
    let z = class(&k);
    let r = surgery_kernel_check(&k, &k, &id, &z, &z).unwrap();
    assert_eq!(r.verdict, Verdict::Pass);
    assert!(r.degrees.iter().all(|d| d.homology_kernel == "0" && d.cohomology_cokernel == "0"));

    let (x, f) = corpus::collapse_map(&k);
    let (zm, zx) = degree_one_class(&k, &x, &f).unwrap();
    let r = surgery_kernel_check(&k, &x, &f, &zm, &zx).unwrap();
    assert_eq!(r.verdict, Verdict::Pass, "{r:?}");
    let kern: Vec<&str> = r.degrees.iter().map(|d| d.homology_kernel.as_str()).collect();
    assert_eq!(kern, ["0", "Z^2", "0"]);
    assert_eq!(r.degrees[1].cohomology_cokernel, "Z^2");

    let m = corpus::s1_x_s2();
    let (x, f) = corpus::collapse_map(&m);
    let (zm, zx) = degree_one_class(&m, &x, &f).unwrap();
    let r = surgery_kernel_check(&m, &x, &f, &zm, &zx).unwrap();
    assert_eq!(r.verdict, Verdict::Pass, "{r:?}");
    let kern: Vec<&str> = r.degrees.iter().map(|d| d.homology_kernel.as_str()).collect();
    assert_eq!(kern, ["0", "Z", "Z", "0"]);

    assert!(matches!(surgery_kernel_check(&m, &x, &f, &zm, &zx.scale(-1)), Err(DualityError::NotDegreeOne(_))));
}

#[test]
fn duality_at_infinity() {
    for (name, x) in corpus::end_periodic_spaces() {
        if name == "ray" {
            continue;
        }
        let r = truncated_duality_at_infinity(&x, 4).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{name}: {r:?}");
        assert_eq!(r.checks.len(), 5);
    }
}

#[test]
fn report_serializes() {
    let k = corpus::disk();
    let r = verify_duality(&k, &class(&k), None).unwrap();
    assert_eq!(r.verdict, Verdict::Pass);
    let a = serde_json::to_string(&r).unwrap();
    let b = serde_json::to_string(&verify_duality(&k, &class(&k), None).unwrap()).unwrap();
    assert_eq!(a, b);
    assert!(a.contains("\"torsion\""));
}
