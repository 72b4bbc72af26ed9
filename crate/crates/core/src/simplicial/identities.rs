use rand::Rng;

use super::{boundary, cap, coboundary, cup, Chain, Cochain, Rel, SimplicialSpace, Twist};

fn rand_twist<R: Rng>(rng: &mut R) -> Twist {
    if rng.gen_bool(0.5) {
        Twist::W
    } else {
        Twist::Trivial
    }
}

fn rand_cochain<R: Rng>(k: &SimplicialSpace, d: i64, rng: &mut R) -> Cochain {
    let twist = rand_twist(rng);
    Cochain { degree: d, twist, values: (0..k.count(d)).map(|_| rng.gen_range(-2..=2)).collect() }
}

fn rand_chain<R: Rng>(k: &SimplicialSpace, d: i64, rng: &mut R) -> Chain {
    let twist = rand_twist(rng);
    Chain { degree: d, twist, coeffs: (0..k.count(d)).map(|_| rng.gen_range(-2..=2)).collect() }
}

fn sign(p: i64) -> i64 {
    if p.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn err(e: super::SpaceError) -> String {
    e.to_string()
}

/// Leibniz rule and strict associativity of cup on `samples` random triples.
pub fn cup_identities<R: Rng>(k: &SimplicialSpace, rng: &mut R, samples: usize) -> Result<(), String> {
    let n = k.dim() as i64;
    for _ in 0..samples {
        let p = rng.gen_range(0..=n);
        let q = rng.gen_range(0..=n - p);
        let r = rng.gen_range(0..=n - p - q);
        let (u, v, w) = (rand_cochain(k, p, rng), rand_cochain(k, q, rng), rand_cochain(k, r, rng));
        let cup2 = |a: &Cochain, b: &Cochain| cup(k, a, b).map_err(err);
        let lhs = coboundary(k, &cup2(&u, &v)?).map_err(err)?;
        let rhs = cup2(&coboundary(k, &u).map_err(err)?, &v)?.add(&cup2(&u, &coboundary(k, &v).map_err(err)?)?.scale(sign(p)));
        if lhs != rhs {
            return Err(format!("Leibniz rule fails in degrees {p}, {q}"));
        }
        if cup2(&cup2(&u, &v)?, &w)? != cup2(&u, &cup2(&v, &w)?)? {
            return Err(format!("cup is not associative in degrees {p}, {q}, {r}"));
        }
    }
    Ok(())
}

/// `d(u cap z) = (-1)^{|z|-|u|} (du) cap z + u cap dz` on `samples` random pairs.
pub fn cap_boundary_identity<R: Rng>(k: &SimplicialSpace, rng: &mut R, samples: usize) -> Result<(), String> {
    let n = k.dim() as i64;
    if n == 0 {
        return Ok(());
    }
    for _ in 0..samples {
        let nz = rng.gen_range(1..=n);
        let p = rng.gen_range(0..nz);
        let z = rand_chain(k, nz, rng);
        let u = rand_cochain(k, p, rng);
        let lhs = boundary(k, &cap(k, &u, &z).map_err(err)?).map_err(err)?;
        let du = coboundary(k, &u).map_err(err)?;
        let rhs = cap(k, &du, &z).map_err(err)?.scale(sign(nz - p)).add(&cap(k, &u, &boundary(k, &z).map_err(err)?).map_err(err)?);
        if lhs != rhs {
            return Err(format!("cap boundary identity fails with |u| = {p}, |z| = {nz}"));
        }
    }
    Ok(())
}

/// `[u][v] = (-1)^{pq} [v][u]` on all pairs of generators of integral
/// cohomology; returns the number of pairs checked.
pub fn graded_commutativity(k: &SimplicialSpace) -> Result<usize, String> {
    let sc = k.chains(Twist::Trivial, Rel::Absolute);
    let n = k.dim() as i64;
    let reps = |d: i64| -> Vec<Cochain> {
        let h = sc.cohomology(d);
        h.generators.iter().map(|g| Cochain { degree: d, twist: Twist::Trivial, values: sc.from_basis(d, g) }).collect()
    };
    let mut pairs = 0;
    for p in 0..=n {
        for q in 0..=n - p {
            let h = sc.cohomology(p + q);
            let orders = h.generator_orders();
            let classify = |c: Cochain| h.classify(&sc.to_basis(p + q, &c.values)).map_err(|e| e.to_string());
            for u in &reps(p) {
                for v in &reps(q) {
                    let a = classify(cup(k, u, v).map_err(err)?)?;
                    let b: Vec<i64> = classify(cup(k, v, u).map_err(err)?)?
                        .iter()
                        .zip(&orders)
                        .map(|(&x, &d)| if d == 0 { sign(p * q) * x } else { (sign(p * q) * x).rem_euclid(d) })
                        .collect();
                    if a != b {
                        return Err(format!("cup is not graded commutative in degrees {p}, {q}"));
                    }
                    pairs += 1;
                }
            }
        }
    }
    Ok(pairs)
}
