use std::collections::BTreeMap;

use super::complex::BasedComplex;
use super::ChainError;
use crate::coefficients::{solve, GroupKind, RingMatrix};

/// A chain contraction `D_k: C_k -> C_{k+1}` with `dD + Dd = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct Contraction {
    pub maps: BTreeMap<i64, RingMatrix>,
}

impl Contraction {
    pub fn at(&self, k: i64, c: &BasedComplex) -> RingMatrix {
        self.maps.get(&k).cloned().unwrap_or_else(|| RingMatrix::zeros(c.ring(), c.rank(k + 1), c.rank(k)))
    }

    /// Check `dD + Dd = 1` in every degree.
    pub fn verify(&self, c: &BasedComplex) -> Result<(), ChainError> {
        for k in c.degrees() {
            let lhs = c.boundary(k + 1).mul(&self.at(k, c)).add(&self.at(k - 1, c).mul(&c.boundary(k)));
            if lhs != RingMatrix::identity(c.ring(), c.rank(k)) {
                return Err(ChainError::NotAContraction { degree: k });
            }
        }
        Ok(())
    }
}

/// Laurent support window used for the unknowns of a contraction.
pub fn default_window(c: &BasedComplex) -> i64 {
    c.max_abs_exponent().max(1) * c.ranks().len() as i64 + 2
}

fn solve_with_widening(a: &RingMatrix, b: &RingMatrix, window: i64) -> Result<Option<RingMatrix>, ChainError> {
    if let Some(x) = solve(a, b, window)? {
        return Ok(Some(x));
    }
    if a.group().kind() == GroupKind::InfiniteCyclic {
        return Ok(solve(a, b, 2 * window)?);
    }
    Ok(None)
}

fn failure(c: &BasedComplex, k: i64, window: i64) -> ChainError {
    match c.ring().kind() {
        GroupKind::InfiniteCyclic => ChainError::NoContractionWithinBound { degree: k, window: 2 * window },
        _ => ChainError::NotAcyclic { degree: k, detail: first_homology(c, k) },
    }
}

fn first_homology(c: &BasedComplex, k: i64) -> String {
    match c.change_of_rings(super::RingMorphism::RegularEmbedding).and_then(|z| z.to_int_complex()) {
        Ok(z) => match z.is_acyclic() {
            Some(d) => format!("H_{d} = {} over Z", z.homology(d).describe()),
            None => format!("degree {k}"),
        },
        Err(_) => format!("degree {k}"),
    }
}

/// Contraction found by solving `d_{k+1} D_k = 1 - D_{k-1} d_k` from the bottom up.
pub fn find_contraction(c: &BasedComplex) -> Result<Contraction, ChainError> {
    c.validate()?;
    let g = c.ring();
    let window = default_window(c);
    let mut maps = BTreeMap::new();
    let mut prev = RingMatrix::zeros(g, c.rank(c.lo()), c.rank(c.lo() - 1));
    for k in c.degrees() {
        let rhs = RingMatrix::identity(g, c.rank(k)).sub(&prev.mul(&c.boundary(k)));
        let a = c.boundary(k + 1);
        let d = if c.rank(k + 1) == 0 {
            if !rhs.is_zero() {
                return Err(failure(c, k, window));
            }
            RingMatrix::zeros(g, 0, c.rank(k))
        } else {
            solve_with_widening(&a, &rhs, window)?.ok_or_else(|| failure(c, k, window))?
        };
        maps.insert(k, d.clone());
        prev = d;
    }
    let h = Contraction { maps };
    h.verify(c)?;
    Ok(h)
}

/// Contraction found from the top down: `D_{k-1} d_k = 1 - d_{k+1} D_k`.
pub fn find_contraction_top_down(c: &BasedComplex) -> Result<Contraction, ChainError> {
    c.validate()?;
    let g = c.ring();
    let window = default_window(c);
    let mut maps = BTreeMap::new();
    let mut next = RingMatrix::zeros(g, c.rank(c.hi() + 1), c.rank(c.hi()));
    for k in c.degrees().rev() {
        // unknown X = D_{k-1}: C_{k-1} -> C_k with X d_k = rhs
        let rhs = RingMatrix::identity(g, c.rank(k)).sub(&c.boundary(k + 1).mul(&next));
        let d = if c.rank(k - 1) == 0 {
            if !rhs.is_zero() {
                return Err(failure(c, k, window));
            }
            RingMatrix::zeros(g, c.rank(k), 0)
        } else {
            let at = c.boundary(k).transpose();
            solve_with_widening(&at, &rhs.transpose(), window)?.ok_or_else(|| failure(c, k, window))?.transpose()
        };
        maps.insert(k - 1, d.clone());
        next = d;
    }
    maps.retain(|&k, _| k >= c.lo());
    let h = Contraction { maps };
    h.verify(c)?;
    Ok(h)
}
