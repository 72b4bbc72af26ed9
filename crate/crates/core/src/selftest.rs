//! The acceptance table: twelve seeded property checks over the bundled corpus.

use std::collections::BTreeMap;
use std::fmt::Display;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::chains::{BasedComplex, ChainMap};
use crate::coefficients::{GroupRingElt, GroupSpec, IntMatrix, RingMatrix};
use crate::corpus;
use crate::duality_verifier::{browder_check, duality_torsion, poincare_check, subdivision_check, truncated_duality_at_infinity};
use crate::endtowers::{
    brute_force_epsilon, delta_vanishes, epsilon_vanishes, exactness_check, random_exact_sequence, random_multitower, Decision,
    EntryStatus, MultiTower, Tower, TruncationOracle, DEFAULT_HORIZON,
};
use crate::simplicial::{
    cap, cap_boundary_identity, cup_identities, fundamental_class, graded_commutativity, Chain, Cochain, Rel, SimplicialCover,
    SimplicialSpace, Twist, Voltage,
};
use crate::torsion::{
    check_product_formula, check_subdivision, check_sum_formula, composition_torsion, rebase, torsion_basis_change,
    torsion_of_acyclic, Comparison, K1Class, ShortExactSequence, Verdict,
};
use crate::tree_modules::{brute_force_copies, random_partition, random_tree, stabilize, validate_partition, Partition};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Criterion {
    pub id: u32,
    pub name: String,
    pub verdict: Verdict,
    /// Number of individual instances checked.
    pub checks: usize,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelftestReport {
    pub seed: u64,
    pub verdict: Verdict,
    pub criteria: Vec<Criterion>,
}

impl SelftestReport {
    /// One line per criterion.
    pub fn table(&self) -> String {
        let mut out = String::new();
        for c in &self.criteria {
            out.push_str(&format!("{:>2} {} {} ({} checks): {}\n", c.id, c.verdict, c.name, c.checks, c.detail));
        }
        out
    }
}

pub const NAMES: [&str; 12] = [
    "chain validity",
    "homology tables",
    "products",
    "transfer",
    "poincare duality",
    "browder ladder",
    "torsion formulas",
    "duality torsion",
    "end towers",
    "locally finite homology",
    "partitions",
    "determinism",
];

type Outcome = Result<(usize, String), String>;

fn err<E: Display>(e: E) -> String {
    e.to_string()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Independent stream `stream` of the generator seeded by `seed`.
pub fn seeded_rng(seed: u64, stream: u32) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream as u64);
    r
}

/// Runs one criterion; ids 1 to 11 are independent, 12 reruns 1 to 11 twice.
pub fn criterion(id: u32, seed: u64) -> Criterion {
    let mut rng = seeded_rng(seed, id);
    let out = match id {
        1 => chain_validity(&mut rng),
        2 => homology_tables(),
        3 => products(&mut rng),
        4 => transfer(&mut rng),
        5 => duality(),
        6 => browder(),
        7 => torsion_formulas(&mut rng),
        8 => torsion_of_duality(),
        9 => end_towers(&mut rng),
        10 => locally_finite(),
        11 => partitions(&mut rng),
        12 => determinism(seed),
        _ => Err(format!("no criterion {id}")),
    };
    let name = NAMES.get(id as usize - 1).unwrap_or(&"unknown").to_string();
    match out {
        Ok((checks, detail)) => Criterion { id, name, verdict: Verdict::Pass, checks, detail },
        Err(detail) => Criterion { id, name, verdict: Verdict::Fail, checks: 0, detail },
    }
}

pub fn run(seed: u64) -> SelftestReport {
    let criteria: Vec<Criterion> = (1..=12).map(|id| criterion(id, seed)).collect();
    let verdict = if criteria.iter().all(|c| c.verdict == Verdict::Pass) { Verdict::Pass } else { Verdict::Fail };
    SelftestReport { seed, verdict, criteria }
}

fn determinism(seed: u64) -> Outcome {
    let once = || serde_json::to_string(&(1..=11).map(|id| criterion(id, seed)).collect::<Vec<_>>()).map_err(err);
    let (a, b) = (once()?, once()?);
    ensure(a == b, || "two runs differ".into())?;
    Ok((2, format!("two runs of criteria 1-11 agree byte for byte ({} bytes)", a.len())))
}

fn random_elt(rng: &mut ChaCha8Rng, g: GroupSpec) -> GroupRingElt {
    let terms: Vec<(i64, i64)> = (0..rng.gen_range(0..=2)).map(|_| (rng.gen_range(-2..=2), rng.gen_range(-2..=2))).collect();
    GroupRingElt::from_terms(g, &terms)
}

fn random_matrix(rng: &mut ChaCha8Rng, g: GroupSpec, r: usize, c: usize) -> RingMatrix {
    let mut m = RingMatrix::zeros(g, r, c);
    for i in 0..r {
        for j in 0..c {
            m.set(i, j, random_elt(rng, g));
        }
    }
    m
}

fn two_term(rng: &mut ChaCha8Rng, g: GroupSpec) -> BasedComplex {
    let (a, b) = (rng.gen_range(0..=2), rng.gen_range(0..=2));
    let lo = rng.gen_range(-1..=1);
    BasedComplex::new(g, lo, vec![b, a], vec![random_matrix(rng, g, b, a)]).expect("two-term complex")
}

/// `d_{k-1} d_k = 0` by direct multiplication.
fn squares_to_zero(c: &BasedComplex) -> bool {
    (c.lo() + 2..=c.hi()).all(|k| c.boundary(k - 1).mul(&c.boundary(k)).is_zero())
}

fn chain_validity(rng: &mut ChaCha8Rng) -> Outcome {
    let spaces = corpus::spaces();
    let mut n = 0;
    for (name, k) in &spaces {
        for twist in [Twist::Trivial, Twist::W] {
            for rel in [Rel::Absolute, Rel::Relative] {
                let sc = k.chains(twist, rel);
                let c = &sc.complex;
                let ok = (c.lo() + 2..=c.hi()).all(|d| c.boundary(d - 1).mul(&c.boundary(d)).is_zero());
                ensure(ok && c.validate().is_ok(), || format!("{name}: boundary does not square to zero"))?;
                n += 1;
            }
        }
    }
    let rings = [GroupSpec::trivial(), GroupSpec::infinite_cyclic(), GroupSpec::cyclic(5).unwrap()];
    for i in 0..500 {
        let g = rings[i % 3];
        let c = two_term(rng, g);
        let d = if rng.gen_bool(0.5) { two_term(rng, g) } else { two_term(rng, g).tensor(&two_term(rng, g)).map_err(err)? };
        let t = c.tensor(&d).map_err(err)?;
        ensure(squares_to_zero(&t), || format!("tensor {i} over {}: boundary does not square to zero", g.describe()))?;
        ensure(t.euler_characteristic() == c.euler_characteristic() * d.euler_characteristic(), || {
            format!("tensor {i}: Euler characteristic is not multiplicative")
        })?;
        for k in t.degrees() {
            let expect: usize = c.degrees().map(|p| c.rank(p) * d.rank(k - p)).sum();
            ensure(t.rank(k) == expect, || format!("tensor {i}: rank {} in degree {k}, expected {expect}", t.rank(k)))?;
        }
        n += 1;
    }
    Ok((n, format!("{} corpus complexes in 4 coefficient/relativity settings, 500 random tensor products", spaces.len())))
}

fn homology_row(k: &SimplicialSpace, twist: Twist) -> Vec<String> {
    let sc = k.chains(twist, Rel::Absolute);
    (0..=k.dim() as i64).map(|d| sc.homology(d).describe()).collect()
}

fn homology_tables() -> Outcome {
    let t = Twist::Trivial;
    let cases: Vec<(&str, SimplicialSpace, Twist, Vec<&str>)> = vec![
        ("circle", corpus::circle(3), t, vec!["Z", "Z"]),
        ("S2", corpus::sphere(2), t, vec!["Z", "0", "Z"]),
        ("T2", corpus::torus7(), t, vec!["Z", "Z^2", "Z"]),
        ("RP2", corpus::rp2(), t, vec!["Z", "Z/2", "0"]),
        ("RP2 twisted", corpus::rp2(), Twist::W, vec!["Z/2", "0", "Z"]),
        ("Klein", corpus::klein_bottle(), t, vec!["Z", "Z + Z/2", "0"]),
    ];
    for (name, k, tw, expect) in &cases {
        let got = homology_row(k, *tw);
        ensure(&got == expect, || format!("{name}: {got:?}, expected {expect:?}"))?;
        let sc = k.chains(*tw, Rel::Absolute);
        let chi: i64 = (0..=k.dim() as i64).map(|d| if d % 2 == 0 { 1 } else { -1 } * sc.homology(d).rank() as i64).sum();
        ensure(chi == k.euler_characteristic(), || format!("{name}: Betti numbers disagree with the Euler characteristic"))?;
    }
    Ok((cases.len(), "circle, S2, T2, RP2 (both), Klein bottle match".into()))
}

fn rand_cochain(k: &SimplicialSpace, d: i64, rng: &mut ChaCha8Rng) -> Cochain {
    Cochain { degree: d, twist: Twist::Trivial, values: (0..k.count(d)).map(|_| rng.gen_range(-2..=2)).collect() }
}

fn products(rng: &mut ChaCha8Rng) -> Outcome {
    let spaces: Vec<(&str, SimplicialSpace)> = corpus::spaces().into_iter().filter(|(_, k)| k.dim() >= 1).collect();
    for i in 0..1000 {
        let (name, k) = &spaces[i % spaces.len()];
        cup_identities(k, rng, 1).map_err(|e| format!("{name}: {e}"))?;
    }
    let mut classes = 0;
    for (name, k) in [("T2", corpus::torus7()), ("RP2", corpus::rp2()), ("Klein", corpus::klein_bottle())] {
        classes += graded_commutativity(&k).map_err(|e| format!("{name}: {e}"))?;
    }
    for i in 0..1000 {
        let (name, k) = &spaces[i % spaces.len()];
        cap_boundary_identity(k, rng, 1).map_err(|e| format!("{name}: {e}"))?;
    }
    Ok((2000 + classes, format!("1000 cochain triples, {classes} pairs of cohomology classes, 1000 cap pairs")))
}

fn transfer(rng: &mut ChaCha8Rng) -> Outcome {
    let base = corpus::circle(3);
    let v = Voltage::new(&base, GroupSpec::cyclic(2).unwrap(), BTreeMap::from([((0, 2), 1)])).map_err(err)?;
    let cov = SimplicialCover::from_voltage(&base, v).map_err(err)?;
    let sc = base.chains(Twist::Trivial, Rel::Absolute);
    for d in 0..=1 {
        let h = sc.homology(d);
        for g in &h.generators {
            let c = Chain { degree: d, twist: Twist::Trivial, coeffs: sc.from_basis(d, g) };
            let back = cov.push_forward(&cov.transfer_chain(&c).map_err(err)?).map_err(err)?;
            let cls = h.classify(&sc.to_basis(d, &back.coeffs)).map_err(err)?;
            let twice = h.classify(&sc.to_basis(d, &c.scale(2).coeffs)).map_err(err)?;
            ensure(cls == twice, || format!("push-forward of the transfer is not 2 on H_{d}"))?;
        }
    }
    let z = fundamental_class(&base).map_err(err)?;
    let tz = cov.transfer_chain(&z).map_err(err)?;
    for i in 0..200 {
        let d = (i % 2) as i64;
        let u = rand_cochain(&cov.total, d, rng);
        let lhs = cov.push_forward(&cap(&cov.total, &u, &tz).map_err(err)?).map_err(err)?;
        let rhs = cap(&base, &cov.transfer_cochain(&u).map_err(err)?, &z).map_err(err)?;
        ensure(lhs == rhs, || format!("projection formula fails on cochain {i}"))?;
    }
    Ok((202, "push-forward of transfer is 2 on H_0 and H_1; projection formula on 200 cochains".into()))
}

fn duality() -> Outcome {
    let good = [
        ("(D2, S1)", corpus::disk()),
        ("S2", corpus::sphere(2)),
        ("T2", corpus::torus7()),
        ("RP2", corpus::rp2()),
        ("Klein", corpus::klein_bottle()),
        ("(Mobius, boundary)", corpus::mobius()),
    ];
    for (name, k) in &good {
        let z = fundamental_class(k).map_err(err)?;
        let r = poincare_check(k, &z).map_err(err)?;
        ensure(r.passes() && r.directions_agree, || format!("{name}: duality fails"))?;
        let twists = if k.is_twisted() { vec![Twist::Trivial, Twist::W] } else { vec![Twist::Trivial] };
        for c in twists {
            for (crel, hrel) in [(Rel::Relative, Rel::Absolute), (Rel::Absolute, Rel::Relative)] {
                for m in 0..=r.dim {
                    let src = k.chains(c, crel).cohomology(m).group;
                    let tgt = k.chains(c.combine(z.twist), hrel).homology(r.dim - m).group;
                    ensure(src.isomorphic(&tgt), || format!("{name}: H^{m} and H_{} are not isomorphic", r.dim - m))?;
                }
            }
        }
        ensure(subdivision_check(k, &z).map_err(err)?, || format!("{name}: verdict changes under subdivision"))?;
    }
    let k = corpus::s1_wedge_s2();
    let sc = k.chains(Twist::Trivial, Rel::Absolute);
    let h = sc.homology(2);
    let z = Chain { degree: 2, twist: Twist::Trivial, coeffs: sc.from_basis(2, &h.generators[0]) };
    let r = poincare_check(&k, &z).map_err(err)?;
    ensure(r.verdict == Verdict::Fail && !r.witnesses.is_empty(), || "S1 v S2: no failure witness".into())?;
    ensure(subdivision_check(&k, &z).map_err(err)?, || "S1 v S2: verdict changes under subdivision".into())?;
    let w = &r.witnesses[0];
    Ok((good.len() + 1, format!("6 pairs pass; S1 v S2 fails with a {} witness in degree {}", w.kind, w.degree)))
}

fn browder() -> Outcome {
    let mut squares = 0;
    for (name, k) in [("(D2, S1)", corpus::disk()), ("(Mobius, boundary)", corpus::mobius())] {
        let z = fundamental_class(&k).map_err(err)?;
        for g in [Twist::Trivial, Twist::W] {
            let r = browder_check(&k, &z, g).map_err(err)?;
            ensure(!r.vacuous && r.verdict == Verdict::Pass, || format!("{name}: ladder does not commute"))?;
            squares += r.squares.len();
        }
    }
    Ok((squares, format!("{squares} squares commute with sign (-1)^(n-1) on dZ")))
}

fn golden() -> GroupRingElt {
    GroupRingElt::from_terms(GroupSpec::cyclic(5).unwrap(), &[(1, 1), (4, 1), (0, -1)])
}

/// A random unit `+-g^k u^j` with `u` the golden unit over `Z[C5]`.
fn random_unit(rng: &mut ChaCha8Rng, g: GroupSpec) -> GroupRingElt {
    let s = if rng.gen_bool(0.5) { 1 } else { -1 };
    let mono = GroupRingElt::monomial(g, if g.is_trivial() { 0 } else { rng.gen_range(-3..=3) }, s);
    if g.order() == Some(5) {
        let u = golden();
        let inv = GroupRingElt::from_terms(g, &[(2, 1), (3, 1), (0, -1)]);
        match rng.gen_range(-2..=2) {
            -2 => &(&mono * &inv) * &inv,
            -1 => &mono * &inv,
            0 => mono,
            1 => &mono * &u,
            _ => &(&mono * &u) * &u,
        }
    } else {
        mono
    }
}

fn m1(x: GroupRingElt) -> RingMatrix {
    RingMatrix::from_rows(x.group(), 1, 1, vec![vec![x]]).unwrap()
}

fn unit_complex(x: GroupRingElt) -> BasedComplex {
    BasedComplex::new(x.group(), 0, vec![1, 1], vec![m1(x)]).unwrap()
}

fn class_of(u: &GroupRingElt) -> Result<K1Class, String> {
    K1Class::from_unit(u.clone()).map_err(err)
}

fn same(a: &K1Class, b: &K1Class) -> bool {
    a.compare(b) == Comparison::Equal
}

/// `(g + g^4 - 1)(g^2 + g^3 - 1)` expanded term by term with exponents mod 5.
fn golden_identity() -> bool {
    let a: [(i64, i64); 3] = [(1, 1), (4, 1), (0, -1)];
    let b: [(i64, i64); 3] = [(2, 1), (3, 1), (0, -1)];
    let mut c = [0i64; 5];
    for (ea, ca) in a {
        for (eb, cb) in b {
            c[((ea + eb) % 5) as usize] += ca * cb;
        }
    }
    let g = GroupSpec::cyclic(5).unwrap();
    c == [1, 0, 0, 0, 0] && (&golden() * &GroupRingElt::from_terms(g, &b)).is_one()
}

fn torsion_formulas(rng: &mut ChaCha8Rng) -> Outcome {
    ensure(golden_identity(), || "(g+g^4-1)(g^2+g^3-1) != 1".into())?;
    let rings = [GroupSpec::trivial(), GroupSpec::infinite_cyclic(), GroupSpec::cyclic(5).unwrap()];
    let per_ring = 10;
    let mut n = 0;
    let pass = |r: &crate::torsion::FormulaReport, what: &str| ensure(r.verdict == Verdict::Pass, || format!("{what}: {}", r.detail));
    for g in rings {
        let name = g.describe();
        let zero = GroupRingElt::zero(g);
        let one = GroupRingElt::one(g);
        for i in 0..per_ring {
            // sum formula on an extension of unit complexes
            let (u, v) = (random_unit(rng, g), random_unit(rng, g));
            let x = BTreeMap::from([(1, m1(random_elt(rng, g)))]);
            let ses = ShortExactSequence::extension(&unit_complex(u.clone()), &unit_complex(v.clone()), &x).map_err(err)?;
            let r = check_sum_formula(&ses).map_err(err)?;
            pass(&r, &format!("sum formula {i} over {name}"))?;
            ensure(same(r.lhs.as_ref().unwrap(), &class_of(&(&u * &v))?), || format!("sum formula {i} over {name}: wrong class"))?;

            // subdivision of a two-stage filtration
            let u = random_unit(rng, g);
            let d = RingMatrix::from_rows(g, 2, 2, vec![vec![u.clone(), random_elt(rng, g)], vec![zero.clone(), one.clone()]]).unwrap();
            let c = BasedComplex::new(g, 0, vec![2, 2], vec![d]).map_err(err)?;
            let h1 = RingMatrix::from_rows(g, 2, 1, vec![vec![one.clone()], vec![zero.clone()]]).unwrap();
            let r = check_subdivision(&c, &[vec![0, 1], vec![1, 1]], &BTreeMap::from([(1, h1)])).map_err(err)?;
            pass(&r, &format!("subdivision {i} over {name}"))?;
            ensure(same(r.lhs.as_ref().unwrap(), &class_of(&u)?), || format!("subdivision {i} over {name}: wrong class"))?;

            // basis change against recomputation from scratch
            let u = random_unit(rng, g);
            let s = unit_complex(one.clone());
            let f = ChainMap::new(BTreeMap::from([(0, m1(u.clone())), (1, m1(u))]));
            let c = BasedComplex::cone(&f, &s, &s).map_err(err)?;
            let mut e = RingMatrix::identity(g, 2);
            e.set(0, 1, random_elt(rng, g));
            e.set(1, 1, random_unit(rng, g));
            let changes = BTreeMap::from([(0, m1(random_unit(rng, g))), (1, e)]);
            let before = torsion_of_acyclic(&c).map_err(err)?;
            let after = torsion_of_acyclic(&rebase(&c, &changes).map_err(err)?).map_err(err)?;
            let delta = torsion_basis_change(&c, &changes).map_err(err)?;
            ensure(same(&after.sub(&before), &delta), || format!("basis change {i} over {name}"))?;

            // composition of two automorphisms of a rank-two module
            let r2 = BasedComplex::new(g, 0, vec![2], vec![]).map_err(err)?;
            let mut a = RingMatrix::identity(g, 2);
            a.set(0, 0, random_unit(rng, g));
            a.set(0, 1, random_elt(rng, g));
            let mut b = RingMatrix::identity(g, 2);
            b.set(1, 0, random_elt(rng, g));
            b.set(1, 1, random_unit(rng, g));
            let (fa, fb) = (ChainMap::new(BTreeMap::from([(0, a.clone())])), ChainMap::new(BTreeMap::from([(0, b.clone())])));
            let r = composition_torsion(&fa, &fb, &r2, &r2, &r2).map_err(err)?;
            pass(&r, &format!("composition {i} over {name}"))?;
            let expect = K1Class::new(b.mul(&a)).map_err(err)?;
            ensure(same(r.lhs.as_ref().unwrap(), &expect), || format!("composition {i} over {name}: wrong class"))?;

            // product with a complex over Z of Euler characteristic 1, 0 or 2
            let u = random_unit(rng, g);
            let (chi, dz) = match i % 3 {
                0 => (1, BasedComplex::from_int(0, vec![1], &[]).map_err(err)?),
                1 => (0, corpus::circle(3).based_complex(Twist::Trivial, Rel::Absolute)),
                _ => (2, corpus::sphere(2).based_complex(Twist::Trivial, Rel::Absolute)),
            };
            let r = check_product_formula(&unit_complex(u.clone()), &dz).map_err(err)?;
            pass(&r, &format!("product {i} over {name}"))?;
            ensure(same(r.lhs.as_ref().unwrap(), &class_of(&u)?.times(chi)), || format!("product {i} over {name}: wrong class"))?;
            n += 5;
        }
    }
    Ok((n + 1, format!("{per_ring} instances of each of 5 formulas over Z, Z[t], Z[C5]; golden unit identity expanded")))
}

fn torsion_of_duality() -> Outcome {
    let circle = corpus::circle(3);
    let zc = fundamental_class(&circle).map_err(err)?;
    let mut cases = vec![("S1 over Z[t]".to_string(), Some(GroupSpec::infinite_cyclic()))];
    for n in 2..=6 {
        cases.push((format!("S1 over Z[C{n}]"), Some(GroupSpec::cyclic(n).unwrap())));
    }
    for (name, g) in &cases {
        let v = Voltage::new(&circle, g.unwrap(), BTreeMap::from([((0, 1), 1)])).map_err(err)?;
        let t = duality_torsion(&circle, &zc, Some(&v)).map_err(err)?;
        ensure(t.trivial && t.relation == Verdict::Pass, || format!("{name}: {t:?}"))?;
    }
    let torus = corpus::torus7();
    let t = duality_torsion(&torus, &fundamental_class(&torus).map_err(err)?, None).map_err(err)?;
    ensure(t.trivial && t.relation == Verdict::Pass, || format!("T2 over Z: {t:?}"))?;
    Ok((cases.len() + 1, "trivial class and duality relation on S1 covers (Z[t], Z[C2..C6]) and T2 over Z".into()))
}

fn scalar_tower(k: i64) -> Result<MultiTower, String> {
    Ok(MultiTower::single(Tower::constant(crate::coefficients::FgAbelian::free(1), IntMatrix::from_rows(1, 1, &[vec![k]])).map_err(err)?))
}

fn end_towers(rng: &mut ChaCha8Rng) -> Outcome {
    let h = DEFAULT_HORIZON;
    ensure(epsilon_vanishes(&scalar_tower(0)?, h).verdict == Decision::True, || "zero tower: epsilon does not vanish".into())?;
    for k in [1, 2] {
        let d = epsilon_vanishes(&scalar_tower(k)?, h);
        let certified = matches!(&d.entries[0].status, EntryStatus::Persists { image, .. } if image.iter().any(|&x| x != 0));
        ensure(d.verdict == Decision::False && certified, || format!("x{k} tower: no persistence certificate"))?;
    }
    for i in 0..50 {
        let mt = random_multitower(rng);
        let eps = epsilon_vanishes(&mt, h);
        let delta = delta_vanishes(&mt, h);
        ensure(eps.verdict != Decision::Undetermined && delta.verdict != Decision::Undetermined, || format!("multitower {i} undetermined"))?;
        let brute = brute_force_epsilon(&mt, 6, 16).ok_or_else(|| format!("multitower {i} is not periodic"))?;
        let stage0_zero = mt.entries.iter().all(|(t, _)| t.stage(0).map_or(true, |g| g.is_zero()));
        ensure(brute == (eps.verdict == Decision::True), || format!("multitower {i}: epsilon disagrees with brute force"))?;
        ensure((delta.verdict == Decision::True) == (brute && stage0_zero), || format!("multitower {i}: Delta disagrees with the pullback criterion"))?;
    }
    for i in 0..50 {
        let r = exactness_check(&random_exact_sequence(rng), h).map_err(err)?;
        ensure(r.verdict == Verdict::Pass, || format!("exact sequence {i}: {}", r.detail))?;
    }
    Ok((103, "zero, identity and x2 towers; 50 multitowers; 50 exact sequences".into()))
}

fn locally_finite() -> Outcome {
    let depth = 4;
    let cases: Vec<(&str, crate::endtowers::EndPeriodicComplex, i64, &str)> = vec![
        ("line", corpus::line(), 0, "0"),
        ("line", corpus::line(), 1, "Z"),
        ("ray", corpus::ray(), 0, "0"),
        ("ray", corpus::ray(), 1, "0"),
        ("plane", corpus::plane(), 2, "Z"),
    ];
    for (name, x, k, expect) in &cases {
        let got = x.lf_homology(*k).map_err(err)?.to_string();
        ensure(got == *expect, || format!("H^lf_{k}({name}) = {got}, expected {expect}"))?;
        let t = x.truncation(depth).map_err(err)?;
        let pair = t.space.with_sub_replaced(&t.far_facets().map_err(err)?).map_err(err)?;
        let direct = pair.chains(Twist::Trivial, Rel::Relative).homology(*k).describe();
        ensure(direct == *expect, || format!("{name}: truncation gives {direct} in degree {k}"))?;
        TruncationOracle::run(x, depth).map_err(err)?;
    }
    let line = corpus::line();
    ensure(line.cs_cohomology(1).map_err(err)?.to_string() == "Z", || "H^1_c(line) is not Z".into())?;
    let t = line.truncation(depth).map_err(err)?;
    let pair = t.space.with_sub_replaced(&t.far_facets().map_err(err)?).map_err(err)?;
    ensure(pair.chains(Twist::Trivial, Rel::Relative).cohomology(1).describe() == "Z", || "truncated H^1_c(line) is not Z".into())?;
    let mut pieces = 0;
    for (name, x) in [("line", corpus::line()), ("plane", corpus::plane()), ("cylinder", corpus::cylinder())] {
        let r = truncated_duality_at_infinity(&x, depth).map_err(err)?;
        ensure(r.verdict == Verdict::Pass, || format!("{name}: truncated duality fails"))?;
        pieces += r.checks.len();
    }
    Ok((cases.len() + 1 + pieces, format!("lf groups re-derived at depth {depth}; duality at infinity on {pieces} truncation pieces")))
}

fn partitions(rng: &mut ChaCha8Rng) -> Outcome {
    for i in 0..100 {
        let depth = rng.gen_range(0..=5);
        let t = random_tree(rng, depth, 40);
        let r = validate_partition(&Partition::standard(&t));
        ensure(r.valid, || format!("tree {i}: {:?}", r.violation))?;
    }
    let mut brute = 0;
    for i in 0..50 {
        let t = random_tree(rng, 3, 7);
        let n = rng.gen_range(0..=4);
        let p = random_partition(rng, &t, n);
        let s = stabilize(&p).map_err(err)?;
        s.verify(&p).map_err(|e| format!("instance {i}: {e}"))?;
        ensure(validate_partition(&s.tau).valid, || format!("instance {i}: stabilized partition is invalid"))?;
        if n <= 4 {
            ensure(brute_force_copies(&p, 6) == Some(s.copies), || format!("instance {i}: brute force disagrees"))?;
            brute += 1;
        }
    }
    Ok((150, format!("100 standard partitions; 50 stabilizations, {brute} cross-checked by brute force")))
}
