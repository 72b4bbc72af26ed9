use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::tower::{MultiTower, Multiplicity, Periodicity, Tower};
use super::TowerError;
use crate::chains::{induced_map, BasedComplex, Contraction};
use crate::coefficients::{hom_decompose, FgAbelian, GroupSpec, IntMatrix, RingMatrix};
use crate::simplicial::{ProductSpace, Rel, SimplicialSpace, SpaceJson, Twist};

/// A finite core with product collars `B_e x [0, oo)` glued along frontier
/// subcomplexes `B_e` of the core.
#[derive(Clone, Debug, PartialEq)]
pub struct EndPeriodicComplex {
    pub core: SimplicialSpace,
    /// Facets of each frontier.
    pub ends: Vec<Vec<Vec<usize>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndJson {
    pub frontier: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndPeriodicJson {
    #[serde(flatten)]
    pub space: SpaceJson,
    pub ends: Vec<EndJson>,
}

/// `core + B_e x [0, depth]` for every end, as one finite complex.
#[derive(Clone, Debug)]
pub struct Truncation {
    pub depth: usize,
    pub space: SimplicialSpace,
    frontiers: Vec<SimplicialSpace>,
    /// Old-to-new vertex map of each frontier inside the core.
    frontier_maps: Vec<BTreeMap<usize, usize>>,
    offsets: Vec<usize>,
}

fn path(len: usize) -> Result<SimplicialSpace, TowerError> {
    let edges: Vec<Vec<usize>> = (0..len).map(|t| vec![t, t + 1]).collect();
    Ok(SimplicialSpace::from_facets(len + 1, &edges)?)
}

impl Truncation {
    /// Vertex `(b, t)` of collar `e`; `t = 0` is the frontier vertex in the core.
    pub fn collar_vertex(&self, e: usize, b: usize, t: usize) -> usize {
        if t == 0 {
            *self.frontier_maps[e].iter().find(|(_, &nb)| nb == b).unwrap().0
        } else {
            self.offsets[e] + (t - 1) * self.frontiers[e].n_vertices() + b
        }
    }

    /// Facets of `B_e x [from, to]`.
    pub fn collar_facets(&self, e: usize, from: usize, to: usize) -> Result<Vec<Vec<usize>>, TowerError> {
        assert!(from <= to && to <= self.depth);
        let b = &self.frontiers[e];
        let facets = if from == to {
            b.facets().into_iter().map(|f| f.into_iter().map(|v| (v, from)).collect::<Vec<_>>()).collect::<Vec<_>>()
        } else {
            let prod = ProductSpace::new(b, &path(to - from)?)?;
            prod.space
                .facets()
                .into_iter()
                .map(|f| f.into_iter().map(|v| (v / (to - from + 1), v % (to - from + 1) + from)).collect())
                .collect()
        };
        Ok(facets.into_iter().map(|f: Vec<(usize, usize)>| f.into_iter().map(|(v, t)| self.collar_vertex(e, v, t)).collect()).collect())
    }

    /// Facets of all far ends `B_e x {depth}`.
    pub fn far_facets(&self) -> Result<Vec<Vec<usize>>, TowerError> {
        let mut out = Vec::new();
        for e in 0..self.frontiers.len() {
            out.extend(self.collar_facets(e, self.depth, self.depth)?);
        }
        Ok(out)
    }
}

impl EndPeriodicComplex {
    pub fn new(core: SimplicialSpace, ends: Vec<Vec<Vec<usize>>>) -> Result<Self, TowerError> {
        let mut seen = BTreeSet::new();
        for (e, f) in ends.iter().enumerate() {
            if f.is_empty() {
                return Err(TowerError::Ends(format!("end {e} has an empty frontier")));
            }
            let mut verts = BTreeSet::new();
            for s in f {
                let mut s = s.clone();
                s.sort_unstable();
                if core.index_of(&s).is_none() {
                    return Err(TowerError::Ends(format!("frontier simplex {s:?} of end {e} is not in the core")));
                }
                verts.extend(s);
            }
            if verts.iter().any(|v| seen.contains(v)) {
                return Err(TowerError::Ends(format!("frontier of end {e} meets another frontier")));
            }
            seen.extend(verts);
        }
        let core = core.with_sub_replaced(&[])?;
        Ok(EndPeriodicComplex { core, ends })
    }

    pub fn from_json(j: &EndPeriodicJson) -> Result<Self, TowerError> {
        let core = SimplicialSpace::from_json(&j.space)?;
        EndPeriodicComplex::new(core, j.ends.iter().map(|e| e.frontier.clone()).collect())
    }

    pub fn to_json(&self) -> EndPeriodicJson {
        let mut space = self.core.to_json();
        space.subcomplex = None;
        EndPeriodicJson { space, ends: self.ends.iter().map(|f| EndJson { frontier: f.clone() }).collect() }
    }

    fn frontier_union(&self) -> Vec<Vec<usize>> {
        self.ends.iter().flatten().cloned().collect()
    }

    /// `(core, union of frontiers)`.
    pub fn core_pair(&self) -> Result<SimplicialSpace, TowerError> {
        Ok(self.core.with_sub_replaced(&self.frontier_union())?)
    }

    fn oracle_in_tests(&self) -> Result<(), TowerError> {
        if cfg!(debug_assertions) {
            TruncationOracle::run(self, 4)?;
        }
        Ok(())
    }

    /// Locally finite homology `H_k(core, union of frontiers)`.
    pub fn lf_homology(&self, k: i64) -> Result<FgAbelian, TowerError> {
        self.oracle_in_tests()?;
        Ok(self.core_pair()?.chains(Twist::Trivial, Rel::Relative).homology(k).group)
    }

    /// Compactly supported cohomology `H^k(core, union of frontiers)`.
    pub fn cs_cohomology(&self, k: i64) -> Result<FgAbelian, TowerError> {
        self.oracle_in_tests()?;
        Ok(self.core_pair()?.chains(Twist::Trivial, Rel::Relative).cohomology(k).group)
    }

    /// The finite complex `core + B_e x [0, depth]`, character carried along.
    pub fn truncation(&self, depth: usize) -> Result<Truncation, TowerError> {
        let n = self.core.n_vertices();
        let mut frontiers = Vec::new();
        let mut frontier_maps = Vec::new();
        let mut offsets = Vec::new();
        let mut total = n;
        for f in &self.ends {
            let (b, map) = self.core.restrict(f)?;
            offsets.push(total);
            total += depth * b.n_vertices();
            frontiers.push(b);
            frontier_maps.push(map);
        }
        let mut t = Truncation {
            depth,
            space: SimplicialSpace::from_facets(0, &[])?,
            frontiers,
            frontier_maps,
            offsets,
        };
        let mut facets = self.core.facets();
        let mut negative: Vec<(usize, usize)> = self.core.negative_edges().iter().copied().collect();
        if depth > 0 {
            for e in 0..self.ends.len() {
                facets.extend(t.collar_facets(e, 0, depth)?);
                let b = &t.frontiers[e];
                let prod = ProductSpace::new(b, &path(depth)?)?;
                let ny = depth + 1;
                for &(x, y) in prod.space.negative_edges() {
                    negative.push((t.collar_vertex(e, x / ny, x % ny), t.collar_vertex(e, y / ny, y % ny)));
                }
            }
        }
        t.space = SimplicialSpace::from_facets(total, &facets)?.with_character(&negative)?;
        Ok(t)
    }

    /// Tower of `H_k` of the end pieces `B_e x [j, oo)`, `j = 0..=depth`, one
    /// omega entry per end, with the inclusion-induced maps.
    pub fn end_tower(&self, k: i64, depth: usize) -> Result<MultiTower, TowerError> {
        if depth == 0 {
            return Err(TowerError::Ends("end towers need depth at least 1".into()));
        }
        let t = self.truncation(depth + 1)?;
        let mut entries = Vec::new();
        for e in 0..self.ends.len() {
            let mut pieces = Vec::new();
            for j in 0..=depth {
                let (w, map) = t.space.restrict(&t.collar_facets(e, j, depth + 1)?)?;
                let w = w.untwisted();
                let h = w.chains(Twist::Trivial, Rel::Absolute).complex.homology(k);
                pieces.push((w, map, h));
            }
            let mut maps = Vec::new();
            for j in 0..depth {
                let (small, small_map, hs) = &pieces[j + 1];
                let (big, big_map, hb) = &pieces[j];
                let inc = inclusion_matrix(small, small_map, big, big_map, k)?;
                let f = induced_map(hs, hb, &inc)?;
                if !hom_decompose(&hs.group, &hb.group, &f)?.is_iso() {
                    return Err(TowerError::Ends(format!("end {e}: inclusion at depth {j} is not a homology isomorphism")));
                }
                maps.push(f);
            }
            let iso = maps[depth - 1].clone();
            let stages: Vec<FgAbelian> = pieces.into_iter().map(|(_, _, h)| h.group).collect();
            let per = Periodicity { preperiod: depth - 1, period: 1, iso };
            entries.push((Tower::new(stages, maps, Some(per))?, Multiplicity::Omega));
        }
        if entries.is_empty() {
            let zero = Tower::new(vec![FgAbelian::zero(), FgAbelian::zero()], vec![IntMatrix::zeros(0, 0)], None)?;
            entries.push((zero, Multiplicity::Finite(1)));
        }
        MultiTower::new(entries)
    }
}

/// Chain-level inclusion of two restrictions of the same space in degree `k`.
fn inclusion_matrix(
    small: &SimplicialSpace,
    small_map: &BTreeMap<usize, usize>,
    big: &SimplicialSpace,
    big_map: &BTreeMap<usize, usize>,
    k: i64,
) -> Result<IntMatrix, TowerError> {
    let back: BTreeMap<usize, usize> = small_map.iter().map(|(&o, &n)| (n, o)).collect();
    let mut m = IntMatrix::zeros(big.count(k), small.count(k));
    if k >= 0 && (k as usize) <= small.dim() {
        for (i, s) in small.simplices(k as usize).iter().enumerate() {
            let image: Vec<usize> = s.iter().map(|v| big_map[&back[v]]).collect();
            let j = big.index_of(&image).ok_or_else(|| TowerError::Ends(format!("{s:?} does not include")))?;
            m[(j, i)] = 1;
        }
    }
    Ok(m)
}

/// The cellular collar `C(B) (x) C([0, L], {L})` and its contraction
/// `D(x (x) v_t) = (-1)^|x| x (x) -(e_t + ... + e_{L-1})`.
pub fn collar_contraction(b: &SimplicialSpace, len: usize) -> Result<(BasedComplex, Contraction), TowerError> {
    let cb = b.based_complex(Twist::Trivial, Rel::Absolute);
    let mut ray = IntMatrix::zeros(len, len);
    for s in 0..len {
        ray[(s, s)] = -1;
        if s + 1 < len {
            ray[(s + 1, s)] = 1;
        }
    }
    let r = BasedComplex::from_int(0, vec![len, len], &[ray])?;
    let c = cb.tensor(&r)?;
    let mut maps = BTreeMap::new();
    for n in c.degrees() {
        let rn = cb.rank(n);
        if rn == 0 || len == 0 {
            continue;
        }
        let src_off = if n >= 1 { cb.rank(n - 1) * len } else { 0 };
        let mut d = IntMatrix::zeros(c.rank(n + 1), c.rank(n));
        let sign = if n % 2 == 0 { -1 } else { 1 };
        for i in 0..rn {
            for t in 0..len {
                for s in t..len {
                    d[(i * len + s, src_off + i * len + t)] = sign;
                }
            }
        }
        maps.insert(n, RingMatrix::from_int(GroupSpec::trivial(), &d));
    }
    let h = Contraction { maps };
    Ok((c, h))
}

/// Re-derivation of the locally finite groups from finite truncations:
/// `H(core + B x [0, L], B x {L}) = H(core, B)` for `L = 1..=depth`, with the
/// collar contraction verified at each `L`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TruncationOracle {
    pub depth: usize,
    pub degrees: Vec<i64>,
}

impl TruncationOracle {
    pub fn run(x: &EndPeriodicComplex, depth: usize) -> Result<TruncationOracle, TowerError> {
        let pair = x.core_pair()?.chains(Twist::Trivial, Rel::Relative);
        let top = x.core.dim() as i64 + 1;
        let degrees: Vec<i64> = (0..=top).collect();
        for len in 1..=depth {
            for f in &x.ends {
                let (b, _) = x.core.restrict(f)?;
                let (c, h) = collar_contraction(&b, len)?;
                h.verify(&c)?;
            }
            let t = x.truncation(len)?;
            let tp = t.space.with_sub_replaced(&t.far_facets()?)?.chains(Twist::Trivial, Rel::Relative);
            for &k in &degrees {
                let (a, b) = (tp.homology(k).group, pair.homology(k).group);
                let (ca, cb) = (tp.cohomology(k).group, pair.cohomology(k).group);
                if !a.isomorphic(&b) || !ca.isomorphic(&cb) {
                    return Err(TowerError::Ends(format!("truncation at depth {len} disagrees in degree {k}: {a} vs {b}")));
                }
            }
        }
        Ok(TruncationOracle { depth, degrees })
    }
}
