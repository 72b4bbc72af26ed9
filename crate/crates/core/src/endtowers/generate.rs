use rand::Rng;

use super::decide::LevelwiseSequence;
use super::tower::{MultiTower, Multiplicity, Periodicity, Tower};
use crate::coefficients::{FgAbelian, IntMatrix};

const ORDERS: [i64; 4] = [0, 2, 3, 4];

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn random_orders<R: Rng>(rng: &mut R) -> Vec<i64> {
    let n = rng.gen_range(0..=2);
    (0..n).map(|_| ORDERS[rng.gen_range(0..ORDERS.len())]).collect()
}

/// A random homomorphism `Z/s_1 + ... -> Z/t_1 + ...` (0 = free summand).
fn random_hom<R: Rng>(rng: &mut R, src: &[i64], tgt: &[i64], sparsity: f64) -> IntMatrix {
    let mut m = IntMatrix::zeros(tgt.len(), src.len());
    for (i, &t) in tgt.iter().enumerate() {
        for (j, &s) in src.iter().enumerate() {
            if rng.gen_bool(sparsity) {
                continue;
            }
            let step = match (s, t) {
                (_, 0) if s != 0 => 0,
                (0, _) | (_, 0) => 1,
                _ => t / gcd(s, t),
            };
            m[(i, j)] = step * rng.gen_range(-2..=2);
        }
    }
    m
}

struct RawTower {
    orders: Vec<Vec<i64>>,
    maps: Vec<IntMatrix>,
}

fn raw_tower<R: Rng>(rng: &mut R, pre: usize, period: usize) -> RawTower {
    let mut orders: Vec<Vec<i64>> = (0..pre + period).map(|_| random_orders(rng)).collect();
    orders.push(orders[pre].clone());
    let sparsity = [0.2, 0.5, 0.8][rng.gen_range(0..3)];
    let maps = (0..pre + period).map(|k| random_hom(rng, &orders[k + 1], &orders[k], sparsity)).collect();
    RawTower { orders, maps }
}

fn build(raw: &RawTower, pre: usize, period: usize) -> Tower {
    let stages = raw.orders.iter().map(|o| FgAbelian::from_cyclic_orders(o)).collect();
    let iso = IntMatrix::identity(raw.orders[pre].len());
    Tower::new(stages, raw.maps.clone(), Some(Periodicity { preperiod: pre, period, iso })).expect("generated tower is valid")
}

fn random_multiplicity<R: Rng>(rng: &mut R) -> Multiplicity {
    if rng.gen_bool(0.75) {
        Multiplicity::Omega
    } else {
        Multiplicity::Finite(rng.gen_range(1..=3))
    }
}

/// A random eventually periodic multitower with small cyclic stages.
pub fn random_multitower<R: Rng>(rng: &mut R) -> MultiTower {
    let n = rng.gen_range(1..=3);
    let entries = (0..n)
        .map(|_| {
            let (pre, period) = (rng.gen_range(0..=2), rng.gen_range(1..=2));
            (build(&raw_tower(rng, pre, period), pre, period), random_multiplicity(rng))
        })
        .collect();
    MultiTower::new(entries).expect("nonempty")
}

/// `0 -> A -> B -> C -> 0` with `B_k = A_k + C_k` and tower maps
/// `[[a, x], [0, c]]` for random homomorphisms `x: C_{k+1} -> A_k`.
pub fn random_exact_sequence<R: Rng>(rng: &mut R) -> LevelwiseSequence {
    let n = rng.gen_range(1..=2);
    let (mut ea, mut eb, mut ec) = (Vec::new(), Vec::new(), Vec::new());
    let (mut inclusions, mut projections) = (Vec::new(), Vec::new());
    for _ in 0..n {
        let (pre, period) = (rng.gen_range(0..=2), rng.gen_range(1..=2));
        let a = raw_tower(rng, pre, period);
        let c = raw_tower(rng, pre, period);
        let m = random_multiplicity(rng);
        let mut b_orders = Vec::new();
        let mut b_maps = Vec::new();
        for k in 0..a.orders.len() {
            b_orders.push([a.orders[k].clone(), c.orders[k].clone()].concat());
        }
        for k in 0..a.maps.len() {
            let x = random_hom(rng, &c.orders[k + 1], &a.orders[k], 0.5);
            let (ra, rc) = (a.orders[k].len(), c.orders[k].len());
            let (sa, sc) = (a.orders[k + 1].len(), c.orders[k + 1].len());
            let mut f = IntMatrix::zeros(ra + rc, sa + sc);
            for i in 0..ra {
                for j in 0..sa {
                    f[(i, j)] = a.maps[k][(i, j)];
                }
                for j in 0..sc {
                    f[(i, sa + j)] = x[(i, j)];
                }
            }
            for i in 0..rc {
                for j in 0..sc {
                    f[(ra + i, sa + j)] = c.maps[k][(i, j)];
                }
            }
            b_maps.push(f);
        }
        let b = RawTower { orders: b_orders, maps: b_maps };
        let (mut inc, mut proj) = (Vec::new(), Vec::new());
        for k in 0..pre + period {
            let (ra, rc) = (a.orders[k].len(), c.orders[k].len());
            let mut i = IntMatrix::zeros(ra + rc, ra);
            let mut p = IntMatrix::zeros(rc, ra + rc);
            for t in 0..ra {
                i[(t, t)] = 1;
            }
            for t in 0..rc {
                p[(t, ra + t)] = 1;
            }
            inc.push(i);
            proj.push(p);
        }
        ea.push((build(&a, pre, period), m));
        eb.push((build(&b, pre, period), m));
        ec.push((build(&c, pre, period), m));
        inclusions.push(inc);
        projections.push(proj);
    }
    LevelwiseSequence {
        a: MultiTower::new(ea).unwrap(),
        b: MultiTower::new(eb).unwrap(),
        c: MultiTower::new(ec).unwrap(),
        inclusions,
        projections,
    }
}
