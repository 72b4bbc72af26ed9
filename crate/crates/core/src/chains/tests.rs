use super::*;
use crate::coefficients::{GroupRingElt, GroupSpec, IntMatrix, RingMatrix};
use proptest::prelude::*;

fn c5() -> GroupSpec {
    GroupSpec::cyclic(5).unwrap()
}

fn unit_complex(g: GroupSpec, u: GroupRingElt) -> BasedComplex {
    BasedComplex::new(g, 0, vec![1, 1], vec![RingMatrix::from_rows(g, 1, 1, vec![vec![u]]).unwrap()]).unwrap()
}

fn circle_cellular() -> BasedComplex {
    BasedComplex::from_int(0, vec![1, 1], &[IntMatrix::zeros(1, 1)]).unwrap()
}

#[test]
fn contraction_of_unit_complex() {
    let g = c5();
    let u = GroupRingElt::from_terms(g, &[(1, 1), (4, 1), (0, -1)]);
    let c = unit_complex(g, u);
    let d = find_contraction(&c).unwrap();
    d.verify(&c).unwrap();
    let d2 = find_contraction_top_down(&c).unwrap();
    d2.verify(&c).unwrap();
    let z = c.change_of_rings(RingMorphism::RegularEmbedding).unwrap().to_int_complex().unwrap();
    assert_eq!(z.is_acyclic(), None);
}

#[test]
fn non_acyclic_reports_homology() {
    let g = c5();
    let c = unit_complex(g, GroupRingElt::from_terms(g, &[(0, 2)]));
    match find_contraction(&c) {
        Err(ChainError::NotAcyclic { detail, .. }) => assert!(detail.contains("H_0"), "{detail}"),
        other => panic!("unexpected {other:?}"),
    }
    let l = GroupSpec::infinite_cyclic();
    let c = unit_complex(l, GroupRingElt::from_terms(l, &[(0, 1), (1, -1)]));
    assert!(matches!(find_contraction(&c), Err(ChainError::NoContractionWithinBound { .. })));
}

#[test]
fn laurent_contraction() {
    let l = GroupSpec::infinite_cyclic();
    // two-step acyclic complex: R --(t,-1)^T--> R^2 --(1, t)--> R, exact at both ends
    let t = GroupRingElt::monomial(l, 1, 1);
    let one = GroupRingElt::one(l);
    let d2 = RingMatrix::from_rows(l, 2, 1, vec![vec![t.clone()], vec![-&one]]).unwrap();
    let d1 = RingMatrix::from_rows(l, 1, 2, vec![vec![one.clone(), t.clone()]]).unwrap();
    let c = BasedComplex::new(l, 0, vec![1, 2, 1], vec![d1, d2]).unwrap();
    c.validate().unwrap();
    let d = find_contraction(&c).unwrap();
    d.verify(&c).unwrap();
}

#[test]
fn double_dual_is_signed_identity() {
    let g = GroupSpec::cyclic(4).unwrap().with_character(-1).unwrap();
    let x = GroupRingElt::from_terms(g, &[(1, 1), (2, 3)]);
    let y = GroupRingElt::from_terms(g, &[(0, 1), (3, -1)]);
    let d2 = RingMatrix::from_rows(g, 2, 1, vec![vec![&x * &y], vec![-&(&x * &x)]]).unwrap();
    let d1 = RingMatrix::from_rows(g, 1, 2, vec![vec![x.clone(), y.clone()]]).unwrap();
    let c = BasedComplex::new(g, 0, vec![1, 2, 1], vec![d1, d2]).unwrap();
    c.validate().unwrap();
    for m in 1..4 {
        let d = c.dual(m);
        d.validate().unwrap();
        let dd = d.dual(m);
        assert_eq!(dd.lo(), c.lo());
        let sign = if (m + 1) % 2 == 0 { 1 } else { -1 };
        for k in c.degrees() {
            assert_eq!(dd.boundary(k), c.boundary(k).scale(sign));
        }
        // signed identity s_i = (-1)^{(m+1) i} is a chain isomorphism C -> DD
        let maps = c
            .degrees()
            .map(|i| {
                let s = if ((m + 1) * i) % 2 == 0 { 1 } else { -1 };
                (i, RingMatrix::identity(g, c.rank(i)).scale(s))
            })
            .collect();
        ChainMap::new(maps).check(&c, &dd).unwrap();
    }
}

#[test]
fn torus_by_tensor() {
    let s1 = circle_cellular();
    let t = s1.tensor(&s1).unwrap();
    assert_eq!(t.ranks(), &[1, 2, 1]);
    let h: Vec<String> = t.to_int_complex().unwrap().all_homology().iter().map(|h| h.describe()).collect();
    assert_eq!(h, vec!["Z", "Z^2", "Z"]);
}

#[test]
fn cone_of_identity_is_acyclic() {
    let g = c5();
    let u = GroupRingElt::from_terms(g, &[(0, 2), (1, 1)]);
    let c = unit_complex(g, u);
    let id = ChainMap::identity(&c);
    let cone = BasedComplex::cone(&id, &c, &c).unwrap();
    cone.validate().unwrap();
    find_contraction(&cone).unwrap();
}

#[test]
fn json_roundtrip() {
    let g = c5();
    let c = unit_complex(g, GroupRingElt::from_terms(g, &[(1, 1), (4, 1), (0, -1)]));
    let j = serde_json::to_string(&c.to_json()).unwrap();
    let back = BasedComplex::from_json(&serde_json::from_str(&j).unwrap()).unwrap();
    assert_eq!(back, c);
    let s1 = circle_cellular();
    let back = BasedComplex::from_json(&s1.to_json()).unwrap();
    assert_eq!(back, s1);
}

fn arb_int_complex() -> impl Strategy<Value = BasedComplex> {
    // d_2 = A, d_1 = B with B A = 0 built as B = row kernel of A
    (1usize..4, 1usize..4, prop::collection::vec(-3i64..4, 9)).prop_map(|(n1, n2, e)| {
        let a = IntMatrix::from_flat(n1, n2, e[..n1 * n2].to_vec());
        let k = crate::coefficients::Snf::compute(&a.transpose()).kernel_basis().transpose();
        BasedComplex::from_int(0, vec![k.rows(), n1, n2], &[k, a]).unwrap()
    })
}

proptest! {
    #[test]
    fn tensor_is_complex_with_multiplicative_euler(c in arb_int_complex(), d in arb_int_complex()) {
        let t = c.tensor(&d).unwrap();
        t.validate().unwrap();
        prop_assert_eq!(t.euler_characteristic(), c.euler_characteristic() * d.euler_characteristic());
        let dual = c.dual(3);
        dual.validate().unwrap();
        prop_assert_eq!(dual.euler_characteristic(), -c.euler_characteristic());
    }

    #[test]
    fn homology_euler_and_classifier(c in arb_int_complex()) {
        let z = c.to_int_complex().unwrap();
        let hs = z.all_homology();
        let chi: i64 = hs.iter().map(|h| if h.degree % 2 == 0 { 1 } else { -1 } * h.rank() as i64).sum();
        prop_assert_eq!(chi, c.euler_characteristic());
        for h in &hs {
            for (i, g) in h.generators.iter().enumerate() {
                let coords = h.classify(g).unwrap();
                for (j, &v) in coords.iter().enumerate() {
                    prop_assert_eq!(v, if i == j { 1 } else { 0 });
                }
            }
            // boundaries classify to zero
            let dn = z.boundary(h.degree + 1);
            for j in 0..dn.cols() {
                prop_assert!(h.is_boundary(&dn.column(j)).unwrap());
            }
        }
    }
}
