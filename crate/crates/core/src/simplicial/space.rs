use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use super::{SpaceError, Twist};
use crate::chains::{BasedComplex, HomologyGroup, IntComplex};
use crate::coefficients::IntMatrix;

/// A finite ordered simplicial complex with an optional subcomplex `A` and an
/// orientation character given as a `+-1` cocycle on edges.
#[derive(Clone, Debug)]
pub struct SimplicialSpace {
    n_vertices: usize,
    simplices: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
    sub: Vec<Vec<bool>>,
    negative_edges: BTreeSet<(usize, usize)>,
}

impl PartialEq for SimplicialSpace {
    fn eq(&self, other: &Self) -> bool {
        self.n_vertices == other.n_vertices
            && self.simplices == other.simplices
            && self.sub == other.sub
            && self.negative_edges == other.negative_edges
    }
}

/// Which chain complex of a pair `(K, A)` to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rel {
    Absolute,
    /// Chains of `K` modulo chains of `A`.
    Relative,
    /// Chains of `A`.
    Sub,
}

fn closure(facets: &[Vec<usize>]) -> Vec<BTreeSet<Vec<usize>>> {
    let mut by_dim: Vec<BTreeSet<Vec<usize>>> = Vec::new();
    for f in facets {
        let k = f.len();
        for mask in 1u64..(1u64 << k) {
            let s: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| f[i]).collect();
            let d = s.len() - 1;
            if by_dim.len() <= d {
                by_dim.resize(d + 1, BTreeSet::new());
            }
            by_dim[d].insert(s);
        }
    }
    by_dim
}

impl SimplicialSpace {
    /// Closure of the given facets; every vertex `0..n_vertices` is a 0-simplex.
    pub fn from_facets(n_vertices: usize, facets: &[Vec<usize>]) -> Result<Self, SpaceError> {
        let mut sorted = Vec::new();
        for f in facets {
            let mut s = f.clone();
            s.sort_unstable();
            if s.is_empty() {
                return Err(SpaceError::Invalid("empty simplex".into()));
            }
            if s.windows(2).any(|w| w[0] == w[1]) {
                return Err(SpaceError::Invalid(format!("simplex {f:?} repeats a vertex")));
            }
            if let Some(&v) = s.iter().find(|&&v| v >= n_vertices) {
                return Err(SpaceError::Invalid(format!("vertex {v} out of range (n = {n_vertices})")));
            }
            if s.len() > 12 {
                return Err(SpaceError::Invalid("simplices of dimension above 11 are not supported".into()));
            }
            sorted.push(s);
        }
        let mut by_dim = closure(&sorted);
        if by_dim.is_empty() {
            by_dim.push(BTreeSet::new());
        }
        for v in 0..n_vertices {
            by_dim[0].insert(vec![v]);
        }
        let simplices: Vec<Vec<Vec<usize>>> = by_dim.into_iter().map(|s| s.into_iter().collect()).collect();
        let index = simplices
            .iter()
            .map(|l| l.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
            .collect();
        let sub = simplices.iter().map(|l| vec![false; l.len()]).collect();
        Ok(SimplicialSpace { n_vertices, simplices, index, sub, negative_edges: BTreeSet::new() })
    }

    /// Mark the closure of `facets` as the subcomplex `A`.
    pub fn with_subcomplex(mut self, facets: &[Vec<usize>]) -> Result<Self, SpaceError> {
        let mut sorted = Vec::new();
        for f in facets {
            let mut s = f.clone();
            s.sort_unstable();
            sorted.push(s);
        }
        for (d, set) in closure(&sorted).into_iter().enumerate() {
            for s in set {
                let i = self
                    .index_of(&s)
                    .ok_or_else(|| SpaceError::Invalid(format!("subcomplex simplex {s:?} is not in the space")))?;
                self.sub[d][i] = true;
            }
        }
        Ok(self)
    }

    /// Set the orientation character: the listed edges get `w = -1`.
    pub fn with_character(mut self, negative: &[(usize, usize)]) -> Result<Self, SpaceError> {
        let mut set = BTreeSet::new();
        for &(a, b) in negative {
            let e = (a.min(b), a.max(b));
            if self.index_of(&[e.0, e.1]).is_none() {
                return Err(SpaceError::Invalid(format!("character edge {e:?} is not an edge")));
            }
            set.insert(e);
        }
        self.negative_edges = set;
        if self.dim() >= 2 {
            for t in &self.simplices[2] {
                if self.edge_sign(t[0], t[1]) * self.edge_sign(t[1], t[2]) != self.edge_sign(t[0], t[2]) {
                    return Err(SpaceError::Invalid(format!("character is not a cocycle on triangle {t:?}")));
                }
            }
        }
        Ok(self)
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn dim(&self) -> usize {
        self.simplices.len() - 1
    }

    pub fn count(&self, d: i64) -> usize {
        if d < 0 || d as usize >= self.simplices.len() {
            0
        } else {
            self.simplices[d as usize].len()
        }
    }

    pub fn simplices(&self, d: usize) -> &[Vec<usize>] {
        self.simplices.get(d).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn simplex(&self, d: usize, i: usize) -> &[usize] {
        &self.simplices[d][i]
    }

    pub fn index_of(&self, s: &[usize]) -> Option<usize> {
        self.index.get(s.len().checked_sub(1)?)?.get(s).copied()
    }

    pub fn in_sub(&self, d: usize, i: usize) -> bool {
        self.sub[d][i]
    }

    pub fn has_subcomplex(&self) -> bool {
        self.sub.iter().any(|v| v.iter().any(|&b| b))
    }

    /// Maximal simplices of `A`.
    pub fn sub_facets(&self) -> Vec<Vec<usize>> {
        self.facets_where(|d, i| self.sub[d][i])
    }

    pub fn facets(&self) -> Vec<Vec<usize>> {
        self.facets_where(|_, _| true)
    }

    fn facets_where(&self, keep: impl Fn(usize, usize) -> bool) -> Vec<Vec<usize>> {
        let mut covered: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut out = Vec::new();
        for d in (0..self.simplices.len()).rev() {
            for (i, s) in self.simplices[d].iter().enumerate() {
                if keep(d, i) && !covered.contains(s) {
                    out.push(s.clone());
                    for f in closure(&[s.clone()]).into_iter().flatten() {
                        covered.insert(f);
                    }
                }
            }
        }
        out.sort();
        out
    }

    pub fn negative_edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.negative_edges
    }

    pub fn is_twisted(&self) -> bool {
        !self.negative_edges.is_empty()
    }

    /// `w` on the edge `{a, b}` (1 when `a == b`).
    pub fn edge_sign(&self, a: usize, b: usize) -> i64 {
        if a == b || !self.negative_edges.contains(&(a.min(b), a.max(b))) {
            1
        } else {
            -1
        }
    }

    /// Transport between two vertices of a common simplex under the given twist.
    pub fn transport(&self, twist: Twist, a: usize, b: usize) -> i64 {
        match twist {
            Twist::Trivial => 1,
            Twist::W => self.edge_sign(a, b),
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        (0..=self.dim()).map(|d| if d % 2 == 0 { 1 } else { -1 } * self.count(d as i64) as i64).sum()
    }

    /// Indices of the `d`-simplices forming the basis of the chosen complex.
    pub fn basis(&self, d: i64, rel: Rel) -> Vec<usize> {
        if d < 0 || d as usize > self.dim() {
            return vec![];
        }
        let d = d as usize;
        (0..self.simplices[d].len())
            .filter(|&i| match rel {
                Rel::Absolute => true,
                Rel::Relative => !self.sub[d][i],
                Rel::Sub => self.sub[d][i],
            })
            .collect()
    }

    /// Signed twisted boundary of a simplex: `(face index, coefficient)`.
    pub fn boundary_terms(&self, d: usize, i: usize, twist: Twist) -> Vec<(usize, i64)> {
        let s = &self.simplices[d][i];
        if d == 0 {
            return vec![];
        }
        (0..=d)
            .map(|k| {
                let mut f = s.clone();
                f.remove(k);
                let mut c = if k % 2 == 0 { 1 } else { -1 };
                if k == 0 {
                    c *= self.transport(twist, s[0], s[1]);
                }
                (self.index[d - 1][&f], c)
            })
            .collect()
    }

    /// Integer boundary matrix `d_d` on full simplex bases.
    pub fn boundary_matrix(&self, d: i64, twist: Twist) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.count(d - 1), self.count(d));
        if d >= 1 && d as usize <= self.dim() {
            for i in 0..self.count(d) {
                for (f, c) in self.boundary_terms(d as usize, i, twist) {
                    m[(f, i)] += c;
                }
            }
        }
        m
    }

    pub fn chains(&self, twist: Twist, rel: Rel) -> SpaceChains {
        let bases: Vec<Vec<usize>> = (0..=self.dim() as i64).map(|d| self.basis(d, rel)).collect();
        let mut boundaries = Vec::new();
        for d in 1..=self.dim() as i64 {
            let full = self.boundary_matrix(d, twist);
            boundaries.push(full.select_rows(&bases[d as usize - 1]).select_columns(&bases[d as usize]));
        }
        let complex = IntComplex::new(0, bases.iter().map(|b| b.len()).collect(), boundaries);
        SpaceChains { twist, rel, bases, counts: (0..=self.dim()).map(|d| self.count(d as i64)).collect(), complex }
    }

    /// Absolute simplicial chain complex with the space's twisted boundary.
    pub fn boundary_complex(&self) -> BasedComplex {
        self.based_complex(Twist::W, Rel::Absolute)
    }

    pub fn based_complex(&self, twist: Twist, rel: Rel) -> BasedComplex {
        let sc = self.chains(twist, rel);
        let labels = sc.bases.iter().enumerate().map(|(d, b)| b.iter().map(|&i| format!("{:?}", self.simplices[d][i])).collect()).collect();
        let c = sc.complex;
        let boundaries: Vec<IntMatrix> = (1..=c.hi()).map(|k| c.boundary(k)).collect();
        BasedComplex::from_int(0, (0..=c.hi()).map(|k| c.rank(k)).collect(), &boundaries).unwrap().with_labels(labels)
    }

    /// The subcomplex on the given simplices (closure taken), vertices relabelled
    /// in increasing order. Returns the space and the old-to-new vertex map.
    pub fn restrict(&self, facets: &[Vec<usize>]) -> Result<(SimplicialSpace, BTreeMap<usize, usize>), SpaceError> {
        let mut verts = BTreeSet::new();
        for f in facets {
            if self.index_of(&sorted(f)).is_none() {
                return Err(SpaceError::Invalid(format!("{f:?} is not a simplex")));
            }
            verts.extend(f.iter().copied());
        }
        let map: BTreeMap<usize, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let relabel = |s: &Vec<usize>| -> Vec<usize> { s.iter().map(|v| map[v]).collect() };
        let new_facets: Vec<Vec<usize>> = facets.iter().map(relabel).collect();
        let mut sp = SimplicialSpace::from_facets(map.len(), &new_facets)?;
        // subcomplex: simplices of A inside the restriction
        let mut sub_f = Vec::new();
        for d in 0..sp.simplices.len() {
            for s in &sp.simplices[d] {
                let old: Vec<usize> = s.iter().map(|&v| *verts.iter().nth(v).unwrap()).collect();
                let oi = self.index[d][&old];
                if self.sub[d][oi] {
                    sub_f.push(s.clone());
                }
            }
        }
        sp = sp.with_subcomplex(&sub_f)?;
        let neg: Vec<(usize, usize)> = self
            .negative_edges
            .iter()
            .filter(|(a, b)| map.contains_key(a) && map.contains_key(b) && sp.index_of(&[map[a], map[b]]).is_some())
            .map(|(a, b)| (map[a], map[b]))
            .collect();
        sp = sp.with_character(&neg)?;
        Ok((sp, map))
    }

    /// Same simplices with the subcomplex replaced.
    pub fn with_sub_replaced(&self, facets: &[Vec<usize>]) -> Result<SimplicialSpace, SpaceError> {
        let mut sp = self.clone();
        sp.sub = sp.simplices.iter().map(|l| vec![false; l.len()]).collect();
        sp.with_subcomplex(facets)
    }

    pub fn untwisted(&self) -> SimplicialSpace {
        let mut sp = self.clone();
        sp.negative_edges.clear();
        sp
    }

    /// Barycentric subdivision; vertices are ordered by (dimension, index)
    /// of the simplex they subdivide.
    pub fn subdivide(&self) -> SimplicialSpace {
        let mut vid: Vec<Vec<usize>> = Vec::new();
        let mut n = 0;
        for d in 0..self.simplices.len() {
            vid.push((n..n + self.simplices[d].len()).collect());
            n += self.simplices[d].len();
        }
        let mut facets = Vec::new();
        let mut sub_f = Vec::new();
        let mut neg = Vec::new();
        // flags: chains of faces ending in each simplex
        let mut flags: Vec<Vec<Vec<Vec<(usize, usize)>>>> = Vec::new();
        for d in 0..self.simplices.len() {
            let mut per = Vec::new();
            for i in 0..self.simplices[d].len() {
                let mut fl = Vec::new();
                if d == 0 {
                    fl.push(vec![(0, i)]);
                } else {
                    let s = &self.simplices[d][i];
                    for k in 0..=d {
                        let mut f = s.clone();
                        f.remove(k);
                        let fi = self.index[d - 1][&f];
                        for chain in &flags[d - 1][fi] {
                            let mut c: Vec<(usize, usize)> = chain.clone();
                            c.push((d, i));
                            fl.push(c);
                        }
                    }
                }
                per.push(fl);
            }
            flags.push(per);
        }
        for d in 0..self.simplices.len() {
            for i in 0..self.simplices[d].len() {
                for chain in &flags[d][i] {
                    let verts: Vec<usize> = chain.iter().map(|&(a, b)| vid[a][b]).collect();
                    if self.sub[d][i] {
                        sub_f.push(verts.clone());
                    }
                    facets.push(verts);
                }
                // edges to faces for the character
                if d > 0 {
                    let s = &self.simplices[d][i];
                    for fd in 0..d {
                        for (fi, f) in self.simplices[fd].iter().enumerate() {
                            if f.iter().all(|v| s.contains(v)) && self.edge_sign(f[0], s[0]) == -1 {
                                neg.push((vid[fd][fi], vid[d][i]));
                            }
                        }
                    }
                }
            }
        }
        SimplicialSpace::from_facets(n, &facets)
            .and_then(|s| s.with_subcomplex(&sub_f))
            .and_then(|s| s.with_character(&neg))
            .expect("subdivision is a simplicial complex")
    }

    /// Solve for an orientation character and a fundamental cycle of a
    /// pseudomanifold relative to `A`: returns negative edges and the sign
    /// of each top simplex.
    pub fn orientation_data(&self) -> Result<(Vec<(usize, usize)>, Vec<i64>), SpaceError> {
        let n = self.dim();
        let ne = self.count(1);
        let nf = self.count(n as i64);
        let nvars = ne + nf;
        let mut rows: Vec<(Vec<u64>, bool)> = Vec::new();
        let words = (nvars + 64) / 64;
        let new_row = || vec![0u64; words];
        let flip = |r: &mut Vec<u64>, v: usize| r[v / 64] ^= 1 << (v % 64);
        if n >= 2 {
            for t in &self.simplices[2] {
                let mut r = new_row();
                for (a, b) in [(t[0], t[1]), (t[1], t[2]), (t[0], t[2])] {
                    flip(&mut r, self.index[1][&vec![a, b]]);
                }
                rows.push((r, false));
            }
        }
        if n == 0 {
            return Ok((vec![], vec![1; nf]));
        }
        let mut cofaces: Vec<Vec<(usize, usize)>> = vec![Vec::new(); self.count(n as i64 - 1)];
        for (i, s) in self.simplices[n].iter().enumerate() {
            for k in 0..=n {
                let mut f = s.clone();
                f.remove(k);
                cofaces[self.index[n - 1][&f]].push((i, k));
            }
        }
        for (fi, cf) in cofaces.iter().enumerate() {
            if self.sub[n - 1][fi] {
                continue;
            }
            match cf.len() {
                2 => {
                    let mut r = new_row();
                    let mut rhs = true;
                    for &(si, k) in cf {
                        flip(&mut r, ne + si);
                        if k % 2 == 1 {
                            rhs ^= true;
                        }
                        if k == 0 {
                            let s = &self.simplices[n][si];
                            flip(&mut r, self.index[1][&vec![s[0], s[1]]]);
                        }
                    }
                    rows.push((r, rhs));
                }
                c => {
                    return Err(SpaceError::NotAManifold(format!(
                        "face {:?} has {c} cofaces outside the subcomplex",
                        self.simplices[n - 1][fi]
                    )))
                }
            }
        }
        let sol = solve_gf2(rows, nvars).ok_or_else(|| {
            SpaceError::NotAManifold("no orientation character admits a fundamental cycle".into())
        })?;
        let neg = (0..ne).filter(|&e| sol[e]).map(|e| (self.simplices[1][e][0], self.simplices[1][e][1])).collect();
        let signs = (0..nf).map(|i| if sol[ne + i] { -1 } else { 1 }).collect();
        Ok((neg, signs))
    }

    /// Install the orientation character found by [`orientation_data`].
    pub fn with_orientation_character(self) -> Result<SimplicialSpace, SpaceError> {
        let (neg, _) = self.orientation_data()?;
        self.with_character(&neg)
    }

    pub fn to_json(&self) -> SpaceJson {
        SpaceJson {
            vertices: self.n_vertices,
            simplices: self.facets(),
            subcomplex: if self.has_subcomplex() { Some(self.sub_facets()) } else { None },
            character: if self.negative_edges.is_empty() {
                None
            } else {
                Some(self.negative_edges.iter().map(|&(a, b)| [a, b]).collect())
            },
        }
    }

    pub fn from_json(j: &SpaceJson) -> Result<Self, SpaceError> {
        let mut s = SimplicialSpace::from_facets(j.vertices, &j.simplices)?;
        if let Some(sub) = &j.subcomplex {
            s = s.with_subcomplex(sub)?;
        }
        if let Some(c) = &j.character {
            let neg: Vec<(usize, usize)> = c.iter().map(|e| (e[0], e[1])).collect();
            s = s.with_character(&neg)?;
        }
        Ok(s)
    }
}

fn sorted(s: &[usize]) -> Vec<usize> {
    let mut v = s.to_vec();
    v.sort_unstable();
    v
}

fn solve_gf2(mut rows: Vec<(Vec<u64>, bool)>, nvars: usize) -> Option<Vec<bool>> {
    let get = |r: &Vec<u64>, v: usize| r[v / 64] >> (v % 64) & 1 == 1;
    let mut pivots = Vec::new();
    let mut rank = 0;
    for v in 0..nvars {
        let Some(p) = (rank..rows.len()).find(|&i| get(&rows[i].0, v)) else { continue };
        rows.swap(rank, p);
        let (pr, pb) = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && get(&row.0, v) {
                for (a, b) in row.0.iter_mut().zip(&pr) {
                    *a ^= b;
                }
                row.1 ^= pb;
            }
        }
        pivots.push(v);
        rank += 1;
    }
    if rows[rank..].iter().any(|r| r.1) {
        return None;
    }
    let mut sol = vec![false; nvars];
    for (i, &v) in pivots.iter().enumerate() {
        sol[v] = rows[i].1;
    }
    Some(sol)
}

/// Chain complex of a space in a chosen twist and relativity, with the
/// basis bookkeeping needed to move between full and basis coordinates.
#[derive(Clone, Debug)]
pub struct SpaceChains {
    pub twist: Twist,
    pub rel: Rel,
    pub bases: Vec<Vec<usize>>,
    counts: Vec<usize>,
    pub complex: IntComplex,
}

impl SpaceChains {
    /// Coordinates of a full simplex vector in the basis of degree `d`.
    pub fn to_basis(&self, d: i64, full: &[i64]) -> Vec<i64> {
        match self.bases.get(d as usize) {
            Some(b) if d >= 0 => b.iter().map(|&i| full[i]).collect(),
            _ => vec![],
        }
    }

    pub fn from_basis(&self, d: i64, v: &[i64]) -> Vec<i64> {
        if d < 0 || d as usize >= self.bases.len() {
            return vec![];
        }
        let mut full = vec![0; self.counts[d as usize]];
        for (&i, &x) in self.bases[d as usize].iter().zip(v) {
            full[i] = x;
        }
        full
    }

    pub fn homology(&self, k: i64) -> HomologyGroup {
        self.complex.homology(k)
    }

    /// `H^k` computed on the cochain complex; classes are cocycles in basis coordinates.
    pub fn cohomology(&self, k: i64) -> HomologyGroup {
        let mut h = self.complex.cochain_complex().homology(-k);
        h.degree = k;
        h
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceJson {
    pub vertices: usize,
    pub simplices: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subcomplex: Option<Vec<Vec<usize>>>,
    /// Edges on which the orientation character is `-1`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub character: Option<Vec<[usize; 2]>>,
}
