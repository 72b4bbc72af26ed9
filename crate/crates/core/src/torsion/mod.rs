//! Whitehead torsion of based acyclic complexes, basis changes, and the
//! sum, subdivision, product and composition formulas as checks.

mod formulas;
mod k1;

pub use formulas::{
    check_product_formula, check_subdivision, check_sum_formula, composition_torsion, duality_relation,
    FormulaReport, ShortExactSequence, Verdict,
};
pub use k1::{Comparison, K1Class, K1Json};

use std::collections::BTreeMap;

use crate::chains::{find_contraction, BasedComplex, ChainError, ChainMap, Contraction};
use crate::coefficients::{solve, GroupKind, RingError, RingMatrix};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TorsionError {
    #[error("complex is not acyclic: {0}")]
    NotAcyclic(String),
    #[error("no contraction with Laurent exponents in [-{window}, {window}] (degree {degree})")]
    OutOfBound { degree: i64, window: i64 },
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("sequence is not exact in degree {degree}: {detail}")]
    NotExact { degree: i64, detail: String },
    #[error("filtration hypothesis fails: {0}")]
    Filtration(String),
    #[error(transparent)]
    Chain(ChainError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

impl From<ChainError> for TorsionError {
    fn from(e: ChainError) -> Self {
        match e {
            ChainError::NotAcyclic { degree, detail } => TorsionError::NotAcyclic(format!("degree {degree}: {detail}")),
            ChainError::NoContractionWithinBound { degree, window } => TorsionError::OutOfBound { degree, window },
            ChainError::Ring(r) => TorsionError::Ring(r),
            other => TorsionError::Chain(other),
        }
    }
}

/// The odd-to-even matrix `d + D: C_odd -> C_even`.
pub fn odd_to_even(c: &BasedComplex, h: &Contraction) -> RingMatrix {
    let g = c.ring();
    let even: Vec<i64> = c.degrees().filter(|k| k.rem_euclid(2) == 0).collect();
    let odd: Vec<i64> = c.degrees().filter(|k| k.rem_euclid(2) == 1).collect();
    let offsets = |ks: &[i64]| -> BTreeMap<i64, usize> {
        let mut off = 0;
        ks.iter()
            .map(|&k| {
                let o = off;
                off += c.rank(k);
                (k, o)
            })
            .collect()
    };
    let (eo, oo) = (offsets(&even), offsets(&odd));
    let rows: usize = even.iter().map(|&k| c.rank(k)).sum();
    let cols: usize = odd.iter().map(|&k| c.rank(k)).sum();
    let mut m = RingMatrix::zeros(g, rows, cols);
    for &k in &odd {
        if let Some(&r) = eo.get(&(k - 1)) {
            m.set_block(r, oo[&k], &c.boundary(k));
        }
        if let Some(&r) = eo.get(&(k + 1)) {
            m.set_block(r, oo[&k], &h.at(k, c));
        }
    }
    m
}

pub fn torsion_with_contraction(c: &BasedComplex, h: &Contraction) -> Result<K1Class, TorsionError> {
    h.verify(c)?;
    K1Class::new(odd_to_even(c, h))
}

/// Torsion of a based acyclic complex.
pub fn torsion_of_acyclic(c: &BasedComplex) -> Result<K1Class, TorsionError> {
    let h = find_contraction(c)?;
    torsion_with_contraction(c, &h)
}

/// Torsion of `C` with based homology: `h[k]` has as columns cycles of `C_k`
/// whose classes form a basis of `H_k`. Computed as the torsion of the cone
/// of `(H, 0) -> C`.
pub fn torsion_with_homology(c: &BasedComplex, h: &BTreeMap<i64, RingMatrix>) -> Result<K1Class, TorsionError> {
    let (hc, phi) = homology_inclusion(c, h)?;
    let cone = BasedComplex::cone(&phi, &hc, c)?;
    torsion_of_acyclic(&cone).map_err(|e| match e {
        TorsionError::NotAcyclic(d) => {
            TorsionError::NotAcyclic(format!("given cycles do not induce an isomorphism on homology ({d})"))
        }
        e => e,
    })
}

fn homology_inclusion(
    c: &BasedComplex,
    h: &BTreeMap<i64, RingMatrix>,
) -> Result<(BasedComplex, ChainMap), TorsionError> {
    let g = c.ring();
    let lo = c.lo().min(h.keys().next().copied().unwrap_or(c.lo()));
    let hi = c.hi().max(h.keys().last().copied().unwrap_or(c.hi()));
    let mut ranks = Vec::new();
    for k in lo..=hi {
        let r = match h.get(&k) {
            Some(m) => {
                if m.rows() != c.rank(k) {
                    return Err(ChainError::Shape(format!(
                        "homology basis in degree {k} has {} rows, C_{k} has rank {}",
                        m.rows(),
                        c.rank(k)
                    ))
                    .into());
                }
                if !c.boundary(k).mul(m).is_zero() {
                    return Err(ChainError::NotACycle { degree: k }.into());
                }
                m.cols()
            }
            None => 0,
        };
        ranks.push(r);
    }
    let boundaries = (lo + 1..=hi).map(|k| RingMatrix::zeros(g, ranks[(k - 1 - lo) as usize], ranks[(k - lo) as usize])).collect();
    let hc = BasedComplex::new(g, lo, ranks, boundaries)?;
    Ok((hc, ChainMap::new(h.clone())))
}

/// Inverse of a square matrix over the group ring.
pub fn ring_inverse(p: &RingMatrix) -> Result<RingMatrix, TorsionError> {
    if p.rows() != p.cols() {
        return Err(TorsionError::NotInvertible(format!("{}x{} matrix is not square", p.rows(), p.cols())));
    }
    let g = p.group();
    let n = p.rows() as i64;
    let window = match g.kind() {
        GroupKind::InfiniteCyclic => 2 * n * p.max_abs_exponent().max(1) + 1,
        _ => 0,
    };
    solve(p, &RingMatrix::identity(g, p.rows()), window)?
        .filter(|x| x.mul(p) == RingMatrix::identity(g, p.rows()))
        .ok_or_else(|| TorsionError::NotInvertible("no two-sided inverse over the ring".into()))
}

/// The same complex in new bases: `changes[k]` has as columns the new basis of
/// `C_k` in old coordinates. Returns the rebased complex.
pub fn rebase(c: &BasedComplex, changes: &BTreeMap<i64, RingMatrix>) -> Result<BasedComplex, TorsionError> {
    let g = c.ring();
    let mut p = BTreeMap::new();
    let mut pinv = BTreeMap::new();
    for k in c.degrees() {
        let m = changes.get(&k).cloned().unwrap_or_else(|| RingMatrix::identity(g, c.rank(k)));
        if m.rows() != c.rank(k) {
            return Err(ChainError::Shape(format!("basis change in degree {k} has wrong size")).into());
        }
        pinv.insert(k, ring_inverse(&m)?);
        p.insert(k, m);
    }
    let boundaries = (c.lo() + 1..=c.hi()).map(|k| pinv[&(k - 1)].mul(&c.boundary(k)).mul(&p[&k])).collect();
    Ok(BasedComplex::new(g, c.lo(), c.ranks().to_vec(), boundaries)?)
}

/// `sum (-1)^k [c_k / c'_k]`, where `[b/c]` is the matrix of `b` in terms of `c`;
/// on acyclic complexes this equals `tau(c') - tau(c)`.
pub fn torsion_basis_change(c: &BasedComplex, changes: &BTreeMap<i64, RingMatrix>) -> Result<K1Class, TorsionError> {
    let mut acc = K1Class::trivial(c.ring());
    for k in c.degrees() {
        let Some(p) = changes.get(&k) else { continue };
        if p.rows() != c.rank(k) || p.cols() != c.rank(k) {
            return Err(ChainError::Shape(format!("basis change in degree {k} has wrong size")).into());
        }
        // [c/c'] = P^{-1}; the odd terms enter negated, i.e. as P
        let term = if k.rem_euclid(2) == 0 { K1Class::new(ring_inverse(p)?)? } else { K1Class::new(p.clone())? };
        acc = acc.add(&term);
    }
    Ok(acc)
}
