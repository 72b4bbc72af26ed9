use serde::Serialize;

use super::{check_cycle, poincare_check, restrict_pair, DualityError};
use crate::endtowers::EndPeriodicComplex;
use crate::simplicial::fundamental_class;
use crate::torsion::Verdict;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TruncationCheck {
    /// `None` for the whole truncation, `Some(j)` for the end pieces `B x [j, depth]`.
    pub stage: Option<usize>,
    pub vertices: usize,
    pub top_simplices: usize,
    pub verdict: Verdict,
    pub failed_degrees: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InfinityReport {
    pub verdict: Verdict,
    pub depth: usize,
    pub checks: Vec<TruncationCheck>,
}

/// Duality for the truncation at `depth` relative to its far ends, and for
/// each end piece `B x [j, depth]` relative to both of its frontiers, with
/// the class restricted from the truncation.
pub fn truncated_duality_at_infinity(x: &EndPeriodicComplex, depth: usize) -> Result<InfinityReport, DualityError> {
    if depth == 0 {
        return Err(DualityError::Unsupported("depth must be positive".into()));
    }
    let t = x.truncation(depth)?;
    let far = t.far_facets()?;
    let pair = t.space.with_sub_replaced(&far)?;
    let z = fundamental_class(&pair)?;
    let mut checks = Vec::new();
    let mut record = |stage, sp: &crate::simplicial::SimplicialSpace, zc: &crate::simplicial::Chain| -> Result<(), DualityError> {
        check_cycle(sp, zc)?;
        let r = poincare_check(sp, zc)?;
        let mut failed: Vec<i64> = r.degrees.iter().filter(|d| !d.iso).map(|d| d.degree).collect();
        failed.dedup();
        checks.push(TruncationCheck {
            stage,
            vertices: sp.n_vertices(),
            top_simplices: sp.count(sp.dim() as i64),
            verdict: r.verdict,
            failed_degrees: failed,
        });
        Ok(())
    };
    record(None, &pair, &z)?;
    for j in 0..depth {
        let mut facets = Vec::new();
        let mut near = Vec::new();
        for e in 0..x.ends.len() {
            facets.extend(t.collar_facets(e, j, depth)?);
            near.extend(t.collar_facets(e, j, j)?);
        }
        let (sp, zc) = restrict_pair(&pair, &facets, &near, &z)?;
        record(Some(j), &sp, &zc)?;
    }
    let verdict = if checks.iter().all(|c| c.verdict == Verdict::Pass) { Verdict::Pass } else { Verdict::Fail };
    Ok(InfinityReport { verdict, depth, checks })
}
