use std::collections::BTreeSet;

use serde::Serialize;

use super::{check_cycle, class_map, cochain_twists, poincare_check, restrict_pair, DualityError, Groups};
use crate::coefficients::hom_decompose;
use crate::simplicial::{boundary, cap, Chain, Cochain, Rel, SimplicialSpace};
use crate::torsion::Verdict;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GluingReport {
    /// `Z` with `[Z]`, `(Y, X + dZ|Y)`, `(Y', X + dZ|Y')`.
    pub whole: Verdict,
    pub first: Verdict,
    pub second: Verdict,
    pub interface: Vec<Vec<usize>>,
    /// No two statements hold without the third.
    pub consistent: bool,
}

fn verdict(b: bool) -> Verdict {
    if b {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

fn closure(facets: &[Vec<usize>]) -> BTreeSet<Vec<usize>> {
    let mut out = BTreeSet::new();
    for f in facets {
        for mask in 1u32..(1 << f.len()) {
            out.insert(f.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, &v)| v).collect());
        }
    }
    out
}

fn two_of_three(a: bool, b: bool, c: bool) -> bool {
    [a, b, c].iter().filter(|&&x| x).count() != 2
}

/// `Z = Y + Y'` split along the top simplices; `X` is their common codimension-one part.
pub fn gluing_check(k: &SimplicialSpace, first: &[Vec<usize>], second: &[Vec<usize>], z: &Chain) -> Result<GluingReport, DualityError> {
    check_cycle(k, z)?;
    let n = k.dim();
    let sorted = |v: &[Vec<usize>]| -> Result<BTreeSet<Vec<usize>>, DualityError> {
        let mut s = BTreeSet::new();
        for f in v {
            let mut f = f.clone();
            f.sort_unstable();
            if f.len() != n + 1 || k.index_of(&f).is_none() {
                return Err(DualityError::Gluing(format!("{f:?} is not a top simplex")));
            }
            if !s.insert(f.clone()) {
                return Err(DualityError::Gluing(format!("{f:?} listed twice")));
            }
        }
        Ok(s)
    };
    let (a, b) = (sorted(first)?, sorted(second)?);
    if !a.is_disjoint(&b) || a.len() + b.len() != k.count(n as i64) {
        return Err(DualityError::Gluing("pieces must partition the top simplices".into()));
    }
    let (a, b): (Vec<_>, Vec<_>) = (a.into_iter().collect(), b.into_iter().collect());
    let (ca, cb) = (closure(&a), closure(&b));
    let interface: Vec<Vec<usize>> = ca.intersection(&cb).filter(|s| s.len() == n).cloned().collect();
    let whole = poincare_check(k, z)?.passes();
    let piece = |facets: &[Vec<usize>]| -> Result<bool, DualityError> {
        let (sp, zc) = restrict_pair(k, facets, &interface, z)?;
        check_cycle(&sp, &zc).map_err(|e| DualityError::Gluing(format!("restricted class: {e}")))?;
        Ok(poincare_check(&sp, &zc)?.passes())
    };
    let (p, q) = (piece(&a)?, piece(&b)?);
    Ok(GluingReport {
        whole: verdict(whole),
        first: verdict(p),
        second: verdict(q),
        interface,
        consistent: two_of_three(whole, p, q),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TriadReport {
    /// Duality of `(X, dX)`; of `(d_0 X, d_01 X)` together with the cap map
    /// `H^*(X, d_1 X) -> H_{n-*}(X, d_0 X)`; the same with `0` and `1` swapped.
    pub statements: [Verdict; 3],
    pub equivalent: bool,
}

/// Whether cap with `z` is an isomorphism `H^*(X, B) -> H_{n-*}(X, C)` in every degree.
fn mixed_cap_iso(k: &SimplicialSpace, b: &SimplicialSpace, c: &SimplicialSpace, z: &Chain) -> Result<bool, DualityError> {
    let n = z.degree;
    for tw in cochain_twists(k) {
        let t = tw.combine(z.twist);
        for m in 0..=n {
            let src = Groups::cohomology(b, tw, Rel::Relative, m);
            let tgt = Groups::homology(c, t, Rel::Relative, n - m);
            let f = class_map(&src, &tgt, |u| Ok(cap(k, &Cochain { degree: m, twist: tw, values: u.to_vec() }, z)?.coeffs))?;
            if !hom_decompose(&src.group.group, &tgt.group.group, &f)?.is_iso() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The triad `(X; d_0 X, d_1 X)`: `k` carries `dX` as its subcomplex and
/// `d0` lists the codimension-one simplices of `d_0 X`.
pub fn triad_check(k: &SimplicialSpace, d0: &[Vec<usize>], z: &Chain) -> Result<TriadReport, DualityError> {
    check_cycle(k, z)?;
    let n = k.dim();
    let mut d0: Vec<Vec<usize>> = d0.iter().map(|f| {
        let mut f = f.clone();
        f.sort_unstable();
        f
    }).collect();
    d0.sort();
    let boundary_faces: Vec<Vec<usize>> = k
        .simplices(n - 1)
        .iter()
        .enumerate()
        .filter(|&(i, _)| k.in_sub(n - 1, i))
        .map(|(_, s)| s.clone())
        .collect();
    if let Some(f) = d0.iter().find(|f| !boundary_faces.contains(f)) {
        return Err(DualityError::Gluing(format!("{f:?} is not a boundary face")));
    }
    let d1: Vec<Vec<usize>> = boundary_faces.iter().filter(|f| !d0.contains(f)).cloned().collect();
    let (c0, c1) = (closure(&d0), closure(&d1));
    let common: Vec<Vec<usize>> = c0.intersection(&c1).cloned().collect();
    let k0 = k.with_sub_replaced(&d0)?;
    let k1 = k.with_sub_replaced(&d1)?;
    let dz = boundary(k, z)?;
    let face = |faces: &[Vec<usize>]| -> Result<bool, DualityError> {
        if faces.is_empty() {
            return Ok(true);
        }
        let (sp, map) = k.restrict(faces)?;
        let sub: Vec<Vec<usize>> = common.iter().map(|s| s.iter().map(|v| map[v]).collect()).collect();
        let sp = sp.with_sub_replaced(&sub)?;
        let mut zc = Chain::zero(&sp, n as i64 - 1, dz.twist);
        for f in faces {
            let g: Vec<usize> = f.iter().map(|v| map[v]).collect();
            zc.coeffs[sp.index_of(&g).unwrap()] = dz.coeffs[k.index_of(f).unwrap()];
        }
        check_cycle(&sp, &zc)?;
        Ok(poincare_check(&sp, &zc)?.passes())
    };
    let s1 = poincare_check(k, z)?.passes();
    let s2 = face(&d0)? && mixed_cap_iso(k, &k1, &k0, z)?;
    let s3 = face(&d1)? && mixed_cap_iso(k, &k0, &k1, z)?;
    Ok(TriadReport { statements: [verdict(s1), verdict(s2), verdict(s3)], equivalent: s1 == s2 && s2 == s3 })
}
