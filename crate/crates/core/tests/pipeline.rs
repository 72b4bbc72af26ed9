use surgery_core::corpus;
use surgery_core::duality_verifier::{duality_torsion, fundamental_class, subdivide_chain, verify_duality};
use surgery_core::selftest::{criterion, run};
use surgery_core::simplicial::{SimplicialSpace, Twist};
use surgery_core::torsion::Verdict;

#[test]
fn other_seeds_pass() {
    for seed in [1, 2, 17] {
        for id in [1, 3, 4, 7, 9, 11] {
            let c = criterion(id, seed);
            assert_eq!(c.verdict, Verdict::Pass, "seed {seed}: {c:?}");
        }
    }
}

#[test]
fn report_lists_twelve_criteria() {
    let r = run(0);
    assert_eq!(r.criteria.len(), 12);
    assert_eq!(r.verdict, Verdict::Pass, "{}", r.table());
    assert_eq!(r.table().lines().count(), 12);
}

#[test]
fn json_roundtrip_preserves_duality() {
    for (name, k) in corpus::manifolds() {
        if name == "point" {
            continue;
        }
        let j = serde_json::to_string(&k.to_json()).unwrap();
        let back = SimplicialSpace::from_json(&serde_json::from_str(&j).unwrap()).unwrap();
        let z = fundamental_class(&back).unwrap();
        assert_eq!(verify_duality(&back, &z, None).unwrap().verdict, Verdict::Pass, "{name}");
    }
}

#[test]
fn subdivided_torus_keeps_trivial_duality_torsion() {
    let k = corpus::torus7();
    let sd = k.subdivide();
    let zs = subdivide_chain(&k, &sd, &fundamental_class(&k).unwrap()).unwrap();
    assert_eq!(zs.twist, Twist::Trivial);
    let t = duality_torsion(&sd, &zs, None).unwrap();
    assert!(t.trivial);
    assert_eq!(t.relation, Verdict::Pass);
}
