use serde::Serialize;

use super::tower::{MultiTower, Multiplicity, Tower};
use super::TowerError;
use crate::coefficients::{hom_decompose, is_homomorphism, is_zero_map, FgAbelian, IntMatrix};
use crate::torsion::Verdict;

/// Iteration cap for the torsion part of the zero-composite search.
pub const DEFAULT_HORIZON: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Decision {
    True,
    False,
    Undetermined,
}

impl Decision {
    fn and(self, other: Decision) -> Decision {
        match (self, other) {
            (Decision::False, _) | (_, Decision::False) => Decision::False,
            (Decision::True, Decision::True) => Decision::True,
            _ => Decision::Undetermined,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum EntryStatus {
    /// Finite multiplicity: ignored by the reduced product.
    Exempt,
    /// For each stage `j = start + r` of one period, `G_{j + m_r * period} -> G_j` is zero.
    Vanishes { start: usize, period: usize, exponents: Vec<usize> },
    /// `image` is the nonzero image of generator `generator` of `G_stage`
    /// under every composite `G_{stage + m * period} -> G_stage`.
    Persists { stage: usize, generator: usize, image: Vec<i64>, reason: String },
    Undetermined { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EntryCertificate {
    pub entry: usize,
    pub omega: bool,
    #[serde(flatten)]
    pub status: EntryStatus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EpsilonDecision {
    pub verdict: Decision,
    pub entries: Vec<EntryCertificate>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeltaDecision {
    pub verdict: Decision,
    pub epsilon: EpsilonDecision,
    /// Entries whose stage-0 group is nonzero.
    pub nonzero_stage0: Vec<usize>,
}

enum Nilpotency {
    Nilpotent(usize),
    NotNilpotent { generator: usize, image: Vec<i64>, reason: String },
    Undetermined(String),
}

fn prime_length(mut n: u128) -> usize {
    let mut count = 0;
    let mut p = 2u128;
    while p * p <= n {
        while n % p == 0 {
            n /= p;
            count += 1;
        }
        p += 1;
    }
    if n > 1 {
        count += 1;
    }
    count
}

/// Whether the endomorphism `p` (generator coordinates) of `g` is nilpotent.
///
/// The rational part is nilpotent iff its `f`-th power vanishes (`f` the free
/// rank); after that the image lies in the torsion subgroup `T`, where each
/// strict decrease of the image divides its order, so `f + Omega(|T|)` steps
/// settle the question.
fn nilpotency(g: &FgAbelian, p: &IntMatrix, horizon: usize) -> Nilpotency {
    let orders = g.coord_orders();
    let c = orders.len();
    if c == 0 {
        return Nilpotency::Nilpotent(0);
    }
    let pc: Vec<Vec<i128>> = (0..c)
        .map(|i| {
            let mut e = vec![0i64; c];
            e[i] = 1;
            g.coords(&p.mul_vec(&g.from_coords(&e))).into_iter().map(i128::from).collect()
        })
        .collect();
    // pc[i] is the image of canonical generator i
    let free: Vec<usize> = (0..c).filter(|&i| orders[i] == 0).collect();
    let torsion_order: u128 = orders.iter().filter(|&&d| d > 1).map(|&d| d as u128).product();
    let bound = free.len() + prime_length(torsion_order);
    if bound > horizon {
        return Nilpotency::Undetermined(format!("search bound {bound} exceeds the horizon {horizon}"));
    }
    let apply = |v: &[i128]| -> Option<Vec<i128>> {
        let mut out = vec![0i128; c];
        for (i, &x) in v.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (o, &y) in out.iter_mut().zip(&pc[i]) {
                *o = o.checked_add(x.checked_mul(y)?)?;
            }
        }
        for (o, &d) in out.iter_mut().zip(&orders) {
            if d > 0 {
                *o = o.rem_euclid(d as i128);
            }
        }
        Some(out)
    };
    let mut vs: Vec<Vec<i128>> = (0..c)
        .map(|i| {
            let mut e = vec![0i128; c];
            e[i] = 1;
            e
        })
        .collect();
    for m in 1..=bound {
        for v in vs.iter_mut() {
            match apply(v) {
                Some(w) => *v = w,
                None => return Nilpotency::Undetermined("integer overflow while iterating".into()),
            }
        }
        if vs.iter().all(|v| v.iter().all(|&x| x == 0)) {
            return Nilpotency::Nilpotent(m);
        }
        if m == free.len() && free.iter().any(|&i| vs.iter().any(|v| v[i] != 0)) {
            // the rational part is not nilpotent
            let (gen, v) = vs.iter().enumerate().find(|(_, v)| free.iter().any(|&i| v[i] != 0)).unwrap();
            return Nilpotency::NotNilpotent {
                generator: gen,
                image: v.iter().map(|&x| x as i64).collect(),
                reason: format!("rational image persists after {m} steps"),
            };
        }
    }
    let (gen, v) = vs.iter().enumerate().find(|(_, v)| v.iter().any(|&x| x != 0)).unwrap();
    Nilpotency::NotNilpotent {
        generator: gen,
        image: v.iter().map(|&x| x as i64).collect(),
        reason: if free.is_empty() {
            format!("torsion image stable after {bound} steps")
        } else {
            format!("rational image persists after {} steps", free.len())
        },
    }
}

fn decide_tower(t: &Tower, horizon: usize) -> EntryStatus {
    let Some(p) = t.periodicity() else {
        return EntryStatus::Undetermined {
            reason: format!("no periodicity data; {} stored stages do not decide the tail", t.stored()),
        };
    };
    let mut exponents = Vec::new();
    for r in 0..p.period {
        let j = p.preperiod + r;
        let g = t.stage(j).unwrap();
        let comp = t.composite(j + p.period, j).unwrap();
        match nilpotency(g, &comp, horizon) {
            Nilpotency::Nilpotent(m) => exponents.push(m),
            Nilpotency::NotNilpotent { generator, image, reason } => {
                // report the image in generator coordinates of G_j
                let image = g.from_coords(&image);
                return EntryStatus::Persists { stage: j, generator, image, reason };
            }
            Nilpotency::Undetermined(reason) => return EntryStatus::Undetermined { reason },
        }
    }
    EntryStatus::Vanishes { start: p.preperiod, period: p.period, exponents }
}

/// Whether every stage `j` has some `k >= j` with `G_k -> G_j` zero, on every
/// entry of multiplicity omega.
pub fn epsilon_vanishes(mt: &MultiTower, horizon: usize) -> EpsilonDecision {
    let mut verdict = Decision::True;
    let mut entries = Vec::new();
    for (i, (t, m)) in mt.entries.iter().enumerate() {
        let omega = *m == Multiplicity::Omega;
        let status = if omega { decide_tower(t, horizon) } else { EntryStatus::Exempt };
        let v = match &status {
            EntryStatus::Exempt | EntryStatus::Vanishes { .. } => Decision::True,
            EntryStatus::Persists { .. } => Decision::False,
            EntryStatus::Undetermined { .. } => Decision::Undetermined,
        };
        verdict = verdict.and(v);
        entries.push(EntryCertificate { entry: i, omega, status });
    }
    EpsilonDecision { verdict, entries }
}

/// Delta vanishes iff epsilon vanishes and every stage-0 group is zero.
pub fn delta_vanishes(mt: &MultiTower, horizon: usize) -> DeltaDecision {
    let epsilon = epsilon_vanishes(mt, horizon);
    let nonzero_stage0: Vec<usize> =
        mt.entries.iter().enumerate().filter(|(_, (t, _))| !t.stage(0).unwrap().is_zero()).map(|(i, _)| i).collect();
    let base = if nonzero_stage0.is_empty() { Decision::True } else { Decision::False };
    DeltaDecision { verdict: epsilon.verdict.and(base), epsilon, nonzero_stage0 }
}

/// Direct search: for stages `j < stages`, look for a zero composite
/// `G_k -> G_j` with `k <= j + depth`. `None` when some omega entry is not periodic.
pub fn brute_force_epsilon(mt: &MultiTower, stages: usize, depth: usize) -> Option<bool> {
    let mut all = true;
    for (t, m) in &mt.entries {
        if *m != Multiplicity::Omega {
            continue;
        }
        if !t.is_periodic() {
            return None;
        }
        for j in 0..stages {
            let gj = t.stage(j)?;
            let found = (j..=j + depth).any(|k| is_zero_map(gj, &t.composite(k, j).unwrap()));
            if !found {
                all = false;
            }
        }
    }
    Some(all)
}

/// `0 -> A -> B -> C -> 0` levelwise, entry by entry.
#[derive(Clone, Debug, PartialEq)]
pub struct LevelwiseSequence {
    pub a: MultiTower,
    pub b: MultiTower,
    pub c: MultiTower,
    /// `inclusions[e][k]: A_k -> B_k` for the stages checked in entry `e`.
    pub inclusions: Vec<Vec<IntMatrix>>,
    pub projections: Vec<Vec<IntMatrix>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactnessReport {
    pub verdict: Verdict,
    pub a: Decision,
    pub b: Decision,
    pub c: Decision,
    pub detail: String,
}

impl LevelwiseSequence {
    /// Stages to check in entry `e`, and whether the sequence wraps periodically.
    fn extent(&self, e: usize) -> (usize, bool) {
        let (ta, tb, tc) = (&self.a.entries[e].0, &self.b.entries[e].0, &self.c.entries[e].0);
        match (ta.periodicity(), tb.periodicity(), tc.periodicity()) {
            (Some(p), Some(q), Some(r))
                if (p.preperiod, p.period) == (q.preperiod, q.period) && (q.preperiod, q.period) == (r.preperiod, r.period) =>
            {
                (p.preperiod + p.period, true)
            }
            _ => (ta.stored().min(tb.stored()).min(tc.stored()), false),
        }
    }

    pub fn validate(&self) -> Result<(), TowerError> {
        let n = self.a.entries.len();
        if self.b.entries.len() != n || self.c.entries.len() != n || self.inclusions.len() != n || self.projections.len() != n {
            return Err(TowerError::Invalid("the three multitowers must have matching entries".into()));
        }
        for e in 0..n {
            let (ta, tb, tc) = (&self.a.entries[e].0, &self.b.entries[e].0, &self.c.entries[e].0);
            let ms = [self.a.entries[e].1, self.b.entries[e].1, self.c.entries[e].1];
            if ms[0] != ms[1] || ms[1] != ms[2] {
                return Err(TowerError::Invalid(format!("entry {e}: multiplicities differ")));
            }
            let (len, wraps) = self.extent(e);
            if self.inclusions[e].len() != len || self.projections[e].len() != len {
                return Err(TowerError::Invalid(format!("entry {e}: expected levelwise maps for {len} stages")));
            }
            for k in 0..len {
                let (ga, gb, gc) = (ta.stage(k).unwrap(), tb.stage(k).unwrap(), tc.stage(k).unwrap());
                let (i, p) = (&self.inclusions[e][k], &self.projections[e][k]);
                let fail = |d: &str| TowerError::NotExact { stage: k, detail: format!("entry {e}: {d}") };
                if !is_homomorphism(ga, gb, i) || !is_homomorphism(gb, gc, p) {
                    return Err(fail("levelwise maps are not homomorphisms"));
                }
                if !hom_decompose(ga, gb, i)?.is_injective() {
                    return Err(fail("A -> B is not injective"));
                }
                if !hom_decompose(gb, gc, p)?.is_surjective() {
                    return Err(fail("B -> C is not surjective"));
                }
                if !is_zero_map(gc, &p.mul(i)) {
                    return Err(fail("composite A -> C is not zero"));
                }
                // cokernel generators are those of B, so p itself is the induced map
                let coker = hom_decompose(ga, gb, i)?.cokernel;
                if !hom_decompose(&coker, gc, p)?.is_injective() {
                    return Err(fail("kernel of B -> C is larger than the image of A"));
                }
                // squares with the tower maps
                let next = if k + 1 < len { Some(k + 1) } else if wraps { Some(ta.periodicity().unwrap().preperiod) } else { None };
                if let Some(n1) = next {
                    let sq1 = i.mul(&ta.map(k).unwrap()).sub(&tb.map(k).unwrap().mul(&self.inclusions[e][n1]));
                    let sq2 = p.mul(&tb.map(k).unwrap()).sub(&tc.map(k).unwrap().mul(&self.projections[e][n1]));
                    if !is_zero_map(gb, &sq1) || !is_zero_map(gc, &sq2) {
                        return Err(fail("levelwise maps do not commute with the tower maps"));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Exactness of epsilon: `eps(B) = 0` iff `eps(A) = 0` and `eps(C) = 0`.
pub fn exactness_check(seq: &LevelwiseSequence, horizon: usize) -> Result<ExactnessReport, TowerError> {
    seq.validate()?;
    let a = epsilon_vanishes(&seq.a, horizon).verdict;
    let b = epsilon_vanishes(&seq.b, horizon).verdict;
    let c = epsilon_vanishes(&seq.c, horizon).verdict;
    let outer = a.and(c);
    let verdict = match (b, outer) {
        (Decision::Undetermined, _) | (_, Decision::Undetermined) => Verdict::Unknown,
        (x, y) if x == y => Verdict::Pass,
        _ => Verdict::Fail,
    };
    let detail = format!("eps(A) {a:?}, eps(B) {b:?}, eps(C) {c:?}");
    Ok(ExactnessReport { verdict, a, b, c, detail })
}
