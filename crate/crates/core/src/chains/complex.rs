use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::ChainError;
use crate::coefficients::{GroupRingElt, GroupSpec, IntMatrix, RingMatrix, RingSpecJson};

/// A finite based chain complex of free modules over `Z[G]`.
///
/// `ranks[i]` is the rank in degree `lo + i`; `boundaries[i]` is the boundary
/// from degree `lo + i + 1` to degree `lo + i`.
#[derive(Clone, Debug, PartialEq)]
pub struct BasedComplex {
    ring: GroupSpec,
    lo: i64,
    ranks: Vec<usize>,
    boundaries: Vec<RingMatrix>,
    labels: Option<Vec<Vec<String>>>,
}

/// Ring homomorphisms out of `Z[G]` to `Z` or to free abelian groups.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingMorphism {
    /// `g -> 1`
    Augmentation,
    /// `g -> w(g)`
    Character,
    /// `Z[G]` regarded as `Z^|G|` (finite groups)
    RegularEmbedding,
}

impl BasedComplex {
    pub fn new(ring: GroupSpec, lo: i64, ranks: Vec<usize>, boundaries: Vec<RingMatrix>) -> Result<Self, ChainError> {
        let expected = ranks.len().saturating_sub(1);
        if boundaries.len() != expected {
            return Err(ChainError::Shape(format!(
                "{} degrees need {} boundary matrices, got {}",
                ranks.len(),
                expected,
                boundaries.len()
            )));
        }
        for (i, b) in boundaries.iter().enumerate() {
            if b.group() != ring {
                return Err(ChainError::Shape(format!("boundary in degree {} is over a different ring", lo + i as i64 + 1)));
            }
            if b.rows() != ranks[i] || b.cols() != ranks[i + 1] {
                return Err(ChainError::Shape(format!(
                    "boundary in degree {} is {}x{}, expected {}x{}",
                    lo + i as i64 + 1,
                    b.rows(),
                    b.cols(),
                    ranks[i],
                    ranks[i + 1]
                )));
            }
        }
        Ok(BasedComplex { ring, lo, ranks, boundaries, labels: None })
    }

    /// Integer complex from integer boundary matrices.
    pub fn from_int(lo: i64, ranks: Vec<usize>, boundaries: &[IntMatrix]) -> Result<Self, ChainError> {
        let g = GroupSpec::trivial();
        Self::new(g, lo, ranks, boundaries.iter().map(|m| RingMatrix::from_int(g, m)).collect())
    }

    pub fn with_labels(mut self, labels: Vec<Vec<String>>) -> Self {
        self.labels = Some(labels);
        self
    }

    pub fn labels(&self) -> Option<&Vec<Vec<String>>> {
        self.labels.as_ref()
    }

    pub fn ring(&self) -> GroupSpec {
        self.ring
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Top degree (`lo - 1` for the empty complex).
    pub fn hi(&self) -> i64 {
        self.lo + self.ranks.len() as i64 - 1
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi()
    }

    pub fn rank(&self, k: i64) -> usize {
        if k < self.lo || k > self.hi() {
            0
        } else {
            self.ranks[(k - self.lo) as usize]
        }
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// Boundary `C_k -> C_{k-1}`.
    pub fn boundary(&self, k: i64) -> RingMatrix {
        if k > self.lo && k <= self.hi() {
            self.boundaries[(k - self.lo - 1) as usize].clone()
        } else {
            RingMatrix::zeros(self.ring, self.rank(k - 1), self.rank(k))
        }
    }

    pub fn boundary_ref(&self, k: i64) -> Option<&RingMatrix> {
        if k > self.lo && k <= self.hi() {
            Some(&self.boundaries[(k - self.lo - 1) as usize])
        } else {
            None
        }
    }

    /// Check `d o d = 0` in every degree.
    pub fn validate(&self) -> Result<(), ChainError> {
        for k in self.lo + 2..=self.hi() {
            let dd = self.boundary(k - 1).mul(&self.boundary(k));
            if !dd.is_zero() {
                return Err(ChainError::NotAComplex { degree: k });
            }
        }
        Ok(())
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degrees().map(|k| if k.rem_euclid(2) == 0 { 1 } else { -1 } * self.rank(k) as i64).sum()
    }

    pub fn max_abs_exponent(&self) -> i64 {
        self.boundaries.iter().map(|b| b.max_abs_exponent()).max().unwrap_or(0)
    }

    /// Integer boundary matrices (trivial ring only).
    pub fn int_boundaries(&self) -> Result<Vec<IntMatrix>, ChainError> {
        self.boundaries.iter().map(|b| b.to_int().map_err(ChainError::from)).collect()
    }

    pub fn to_int_complex(&self) -> Result<super::IntComplex, ChainError> {
        Ok(super::IntComplex::new(self.lo, self.ranks.clone(), self.int_boundaries()?))
    }

    /// Push the complex forward along a ring morphism to a complex of abelian groups.
    pub fn change_of_rings(&self, phi: RingMorphism) -> Result<BasedComplex, ChainError> {
        let mats: Vec<IntMatrix> = match phi {
            RingMorphism::Augmentation => self.boundaries.iter().map(|b| b.evaluate_sign(1)).collect(),
            RingMorphism::Character => self.boundaries.iter().map(|b| b.evaluate_sign(self.ring.character() as i64)).collect(),
            RingMorphism::RegularEmbedding => {
                self.boundaries.iter().map(|b| b.regular_embedding()).collect::<Result<_, _>>()?
            }
        };
        let scale = match phi {
            RingMorphism::RegularEmbedding => self.ring.order().unwrap_or(1),
            _ => 1,
        };
        BasedComplex::from_int(self.lo, self.ranks.iter().map(|r| r * scale).collect(), &mats)
    }

    /// The `m`-dual: `D_j = (C_{m-j})^*` with boundary `(-1)^j` times the
    /// conjugate transpose of the boundary of `C`.
    pub fn dual(&self, m: i64) -> BasedComplex {
        if self.ranks.is_empty() {
            return BasedComplex::new(self.ring, m - self.lo + 1, vec![], vec![]).unwrap();
        }
        let lo = m - self.hi();
        let ranks: Vec<usize> = (lo..=m - self.lo).map(|j| self.rank(m - j)).collect();
        let boundaries = (lo + 1..=m - self.lo)
            .map(|j| {
                let d = self.boundary(m - j + 1).conjugate_transpose();
                if j.rem_euclid(2) == 1 {
                    d.scale(-1)
                } else {
                    d
                }
            })
            .collect();
        BasedComplex::new(self.ring, lo, ranks, boundaries).expect("dual shapes")
    }

    /// Tensor product over the ring; `other` may be over `Z`.
    pub fn tensor(&self, other: &BasedComplex) -> Result<BasedComplex, ChainError> {
        let g = self.ring;
        let other = if other.ring == g {
            other.clone()
        } else if other.ring.is_trivial() {
            other.extend_scalars(g)
        } else {
            return Err(ChainError::Ring(crate::coefficients::RingError::GroupMismatch(
                g.describe(),
                other.ring.describe(),
            )));
        };
        if self.ranks.is_empty() || other.ranks.is_empty() {
            return Ok(BasedComplex::new(g, self.lo + other.lo, vec![], vec![]).unwrap());
        }
        let lo = self.lo + other.lo;
        let hi = self.hi() + other.hi();
        // offsets[n][p] = start of the block C_p (x) D_{n-p} inside degree n
        let block = |n: i64| -> Vec<(i64, usize)> {
            let mut v = Vec::new();
            let mut off = 0;
            for p in self.lo..=self.hi() {
                let q = n - p;
                if q < other.lo || q > other.hi() {
                    continue;
                }
                v.push((p, off));
                off += self.rank(p) * other.rank(q);
            }
            v
        };
        let size = |n: i64| -> usize { block(n).iter().map(|&(p, _)| self.rank(p) * other.rank(n - p)).sum() };
        let ranks: Vec<usize> = (lo..=hi).map(size).collect();
        let mut boundaries = Vec::new();
        for n in lo + 1..=hi {
            let mut m = RingMatrix::zeros(g, size(n - 1), size(n));
            let src = block(n);
            let dst: BTreeMap<i64, usize> = block(n - 1).into_iter().collect();
            for &(p, off) in &src {
                let q = n - p;
                let (rp, rq) = (self.rank(p), other.rank(q));
                let dc = self.boundary(p);
                let dd = other.boundary(q);
                let sign = if p.rem_euclid(2) == 0 { 1 } else { -1 };
                for i in 0..rp {
                    for j in 0..rq {
                        let col = off + i * rq + j;
                        // d x (x) y
                        if let Some(&toff) = dst.get(&(p - 1)) {
                            for a in 0..self.rank(p - 1) {
                                let c = dc.get(a, i);
                                if !c.is_zero() {
                                    let row = toff + a * rq + j;
                                    m.set(row, col, m.get(row, col) + c);
                                }
                            }
                        }
                        // (-1)^p x (x) d y
                        if let Some(&toff) = dst.get(&p) {
                            let rq1 = other.rank(q - 1);
                            for b in 0..rq1 {
                                let c = dd.get(b, j);
                                if !c.is_zero() {
                                    let row = toff + i * rq1 + b;
                                    m.set(row, col, m.get(row, col) + &c.scale(sign));
                                }
                            }
                        }
                    }
                }
            }
            boundaries.push(m);
        }
        BasedComplex::new(g, lo, ranks, boundaries)
    }

    /// Regard an integer complex as a complex over `Z[G]`.
    pub fn extend_scalars(&self, g: GroupSpec) -> BasedComplex {
        let boundaries = self
            .boundaries
            .iter()
            .map(|b| {
                let mut m = RingMatrix::zeros(g, b.rows(), b.cols());
                for i in 0..b.rows() {
                    for j in 0..b.cols() {
                        let x = b.get(i, j);
                        if !x.is_zero() {
                            m.set(i, j, GroupRingElt::from_terms(g, &x.terms()));
                        }
                    }
                }
                m
            })
            .collect();
        BasedComplex { ring: g, lo: self.lo, ranks: self.ranks.clone(), boundaries, labels: self.labels.clone() }
    }

    pub fn direct_sum(&self, other: &BasedComplex) -> Result<BasedComplex, ChainError> {
        if self.ring != other.ring {
            return Err(ChainError::Shape("direct sum of complexes over different rings".into()));
        }
        if self.ranks.is_empty() {
            return Ok(other.clone());
        }
        if other.ranks.is_empty() {
            return Ok(self.clone());
        }
        let lo = self.lo.min(other.lo);
        let hi = self.hi().max(other.hi());
        let ranks = (lo..=hi).map(|k| self.rank(k) + other.rank(k)).collect();
        let boundaries = (lo + 1..=hi).map(|k| self.boundary(k).block_diag(&other.boundary(k))).collect();
        BasedComplex::new(self.ring, lo, ranks, boundaries)
    }

    /// Mapping cone of `f: S -> T`: degree n is `S_{n-1} + T_n`,
    /// boundary `[[-d_S, 0], [f, d_T]]`.
    pub fn cone(f: &ChainMap, s: &BasedComplex, t: &BasedComplex) -> Result<BasedComplex, ChainError> {
        f.check(s, t)?;
        let g = s.ring;
        let lo = (s.lo + 1).min(t.lo);
        let hi = (s.hi() + 1).max(t.hi());
        let ranks: Vec<usize> = (lo..=hi).map(|n| s.rank(n - 1) + t.rank(n)).collect();
        let mut boundaries = Vec::new();
        for n in lo + 1..=hi {
            let mut m = RingMatrix::zeros(g, s.rank(n - 2) + t.rank(n - 1), s.rank(n - 1) + t.rank(n));
            m.set_block(0, 0, &s.boundary(n - 1).scale(-1));
            m.set_block(s.rank(n - 2), 0, &f.at(n - 1, s, t));
            m.set_block(s.rank(n - 2), s.rank(n - 1), &t.boundary(n));
            boundaries.push(m);
        }
        BasedComplex::new(g, lo, ranks, boundaries)
    }

    /// Degree shift: `C[k]_n = C_{n-k}`, boundary unchanged.
    pub fn shift(&self, k: i64) -> BasedComplex {
        BasedComplex { lo: self.lo + k, ..self.clone() }
    }

    pub fn to_json(&self) -> ComplexJson {
        let entry = |x: &GroupRingElt| -> EntryJson {
            if self.ring.is_trivial() {
                EntryJson::Int(x.coeff(0))
            } else {
                EntryJson::Terms(x.terms())
            }
        };
        ComplexJson {
            ring: self.ring.to_json(),
            lo: self.lo,
            ranks: self.ranks.clone(),
            boundaries: self
                .boundaries
                .iter()
                .map(|b| b.to_rows().iter().map(|r| r.iter().map(entry).collect()).collect())
                .collect(),
            labels: self.labels.clone(),
        }
    }

    pub fn from_json(j: &ComplexJson) -> Result<Self, ChainError> {
        let g = GroupSpec::from_json(&j.ring)?;
        let mut boundaries = Vec::new();
        for (i, b) in j.boundaries.iter().enumerate() {
            let rows = j.ranks.get(i).copied().unwrap_or(0);
            let cols = j.ranks.get(i + 1).copied().unwrap_or(0);
            let entries: Vec<Vec<GroupRingElt>> = b
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|e| match e {
                            EntryJson::Int(c) => GroupRingElt::constant(g, *c),
                            EntryJson::Terms(t) => GroupRingElt::from_terms(g, t),
                        })
                        .collect()
                })
                .collect();
            let entries = if rows == 0 && entries.is_empty() { vec![] } else { entries };
            boundaries.push(RingMatrix::from_rows(g, rows, cols, entries)?);
        }
        let c = BasedComplex::new(g, j.lo, j.ranks.clone(), boundaries)?;
        Ok(match &j.labels {
            Some(l) => c.with_labels(l.clone()),
            None => c,
        })
    }
}

/// Chain map between based complexes; missing degrees are zero.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainMap {
    pub maps: BTreeMap<i64, RingMatrix>,
}

impl ChainMap {
    pub fn new(maps: BTreeMap<i64, RingMatrix>) -> Self {
        ChainMap { maps }
    }

    pub fn identity(c: &BasedComplex) -> Self {
        ChainMap { maps: c.degrees().map(|k| (k, RingMatrix::identity(c.ring, c.rank(k)))).collect() }
    }

    /// Matrix in degree `k`, `T_k x S_k`.
    pub fn at(&self, k: i64, s: &BasedComplex, t: &BasedComplex) -> RingMatrix {
        self.maps.get(&k).cloned().unwrap_or_else(|| RingMatrix::zeros(s.ring, t.rank(k), s.rank(k)))
    }

    pub fn check(&self, s: &BasedComplex, t: &BasedComplex) -> Result<(), ChainError> {
        if s.ring != t.ring {
            return Err(ChainError::Shape("chain map between complexes over different rings".into()));
        }
        for (&k, m) in &self.maps {
            if m.rows() != t.rank(k) || m.cols() != s.rank(k) {
                return Err(ChainError::Shape(format!(
                    "chain map in degree {k} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    t.rank(k),
                    s.rank(k)
                )));
            }
        }
        let lo = s.lo.min(t.lo);
        let hi = s.hi().max(t.hi());
        for k in lo..=hi + 1 {
            let lhs = t.boundary(k).mul(&self.at(k, s, t));
            let rhs = self.at(k - 1, s, t).mul(&s.boundary(k));
            if lhs != rhs {
                return Err(ChainError::NotAChainMap { degree: k });
            }
        }
        Ok(())
    }

    /// `g o f` for `f: S -> T`, `g: T -> U`.
    pub fn compose(&self, g: &ChainMap, s: &BasedComplex, t: &BasedComplex, u: &BasedComplex) -> ChainMap {
        let lo = s.lo.min(t.lo).min(u.lo);
        let hi = s.hi().max(t.hi()).max(u.hi());
        ChainMap { maps: (lo..=hi).map(|k| (k, g.at(k, t, u).mul(&self.at(k, s, t)))).collect() }
    }
}

/// Entry in a JSON boundary matrix: an integer or a list of `[exponent, coefficient]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EntryJson {
    Int(i64),
    Terms(Vec<(i64, i64)>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub ring: RingSpecJson,
    pub lo: i64,
    pub ranks: Vec<usize>,
    pub boundaries: Vec<Vec<Vec<EntryJson>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<Vec<String>>>,
}
