use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::{torsion_of_acyclic, torsion_with_homology, Comparison, K1Class, TorsionError};
use crate::chains::{default_window, BasedComplex, ChainError, ChainMap};
use crate::coefficients::{solve, RingMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Unknown => "UNKNOWN",
        })
    }
}

impl From<Comparison> for Verdict {
    fn from(c: Comparison) -> Self {
        match c {
            Comparison::Equal => Verdict::Pass,
            Comparison::Unequal => Verdict::Fail,
            Comparison::Unknown => Verdict::Unknown,
        }
    }
}

/// Both sides of a torsion identity and the verdict of comparing them.
#[derive(Clone, Debug, PartialEq)]
pub struct FormulaReport {
    pub formula: &'static str,
    pub verdict: Verdict,
    pub lhs: Option<K1Class>,
    pub rhs: Option<K1Class>,
    pub detail: String,
}

impl FormulaReport {
    fn compare(formula: &'static str, lhs: Result<K1Class, TorsionError>, rhs: Result<K1Class, TorsionError>) -> Result<Self, TorsionError> {
        match (lhs, rhs) {
            (Ok(l), Ok(r)) => {
                let verdict = l.compare(&r).into();
                let detail = format!("det {} vs {}", l.det.normalized, r.det.normalized);
                Ok(FormulaReport { formula, verdict, lhs: Some(l), rhs: Some(r), detail })
            }
            (Err(e @ TorsionError::OutOfBound { .. }), _) | (_, Err(e @ TorsionError::OutOfBound { .. })) => {
                Ok(FormulaReport { formula, verdict: Verdict::Unknown, lhs: None, rhs: None, detail: e.to_string() })
            }
            (Err(e), _) | (_, Err(e)) => Err(e),
        }
    }

    pub fn to_json(&self) -> Value {
        let side = |k: &Option<K1Class>| k.as_ref().map(|k| serde_json::to_value(k.to_json()).unwrap()).unwrap_or(Value::Null);
        json!({
            "formula": self.formula,
            "verdict": self.verdict,
            "det": self.lhs.as_ref().map(|k| serde_json::to_value(k.det.unit.to_json()).unwrap()),
            "representative": self.lhs.as_ref().map(|k| serde_json::to_value(k.to_json().representative).unwrap()),
            "lhs": side(&self.lhs),
            "rhs": side(&self.rhs),
            "detail": self.detail,
        })
    }
}

/// `0 -> C' -> C -> C'' -> 0` with `C_k = C'_k + C''_k` in the concatenated
/// basis, inclusion `[1; 0]` and projection `[0 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct ShortExactSequence {
    pub sub: BasedComplex,
    pub total: BasedComplex,
    pub quotient: BasedComplex,
    pub inclusion: ChainMap,
    pub projection: ChainMap,
}

impl ShortExactSequence {
    /// Extension with boundary `[[d', x], [0, d'']]`; `off_diagonal[n]: C''_n -> C'_{n-1}`.
    pub fn extension(
        sub: &BasedComplex,
        quotient: &BasedComplex,
        off_diagonal: &BTreeMap<i64, RingMatrix>,
    ) -> Result<Self, TorsionError> {
        let g = sub.ring();
        let lo = sub.lo().min(quotient.lo());
        let hi = sub.hi().max(quotient.hi());
        let ranks: Vec<usize> = (lo..=hi).map(|k| sub.rank(k) + quotient.rank(k)).collect();
        let mut boundaries = Vec::new();
        for n in lo + 1..=hi {
            let mut m = sub.boundary(n).block_diag(&quotient.boundary(n));
            if let Some(x) = off_diagonal.get(&n) {
                if x.rows() != sub.rank(n - 1) || x.cols() != quotient.rank(n) {
                    return Err(ChainError::Shape(format!("off-diagonal block in degree {n} has wrong size")).into());
                }
                m.set_block(0, sub.rank(n), x);
            }
            boundaries.push(m);
        }
        let total = BasedComplex::new(g, lo, ranks, boundaries)?;
        total.validate()?;
        let mut inc = BTreeMap::new();
        let mut proj = BTreeMap::new();
        for k in lo..=hi {
            let (a, b) = (sub.rank(k), quotient.rank(k));
            let mut i = RingMatrix::zeros(g, a + b, a);
            i.set_block(0, 0, &RingMatrix::identity(g, a));
            let mut p = RingMatrix::zeros(g, b, a + b);
            p.set_block(0, a, &RingMatrix::identity(g, b));
            inc.insert(k, i);
            proj.insert(k, p);
        }
        Ok(ShortExactSequence {
            sub: sub.clone(),
            total,
            quotient: quotient.clone(),
            inclusion: ChainMap::new(inc),
            projection: ChainMap::new(proj),
        })
    }

    /// Exactness with compatible bases, degree by degree.
    pub fn validate(&self) -> Result<(), TorsionError> {
        let g = self.total.ring();
        let lo = self.sub.lo().min(self.total.lo()).min(self.quotient.lo());
        let hi = self.sub.hi().max(self.total.hi()).max(self.quotient.hi());
        for k in lo..=hi {
            let (a, b) = (self.sub.rank(k), self.quotient.rank(k));
            if self.total.rank(k) != a + b {
                return Err(TorsionError::NotExact {
                    degree: k,
                    detail: format!("rank {} != {a} + {b}", self.total.rank(k)),
                });
            }
            let i = self.inclusion.at(k, &self.sub, &self.total);
            let p = self.projection.at(k, &self.total, &self.quotient);
            let mut ei = RingMatrix::zeros(g, a + b, a);
            ei.set_block(0, 0, &RingMatrix::identity(g, a));
            let mut ep = RingMatrix::zeros(g, b, a + b);
            ep.set_block(0, a, &RingMatrix::identity(g, b));
            if i != ei || p != ep {
                return Err(TorsionError::NotExact {
                    degree: k,
                    detail: "maps are not the standard inclusion and projection of a based splitting".into(),
                });
            }
        }
        self.inclusion.check(&self.sub, &self.total).map_err(|e| TorsionError::NotExact {
            degree: chain_degree(&e),
            detail: format!("inclusion: {e}"),
        })?;
        self.projection.check(&self.total, &self.quotient).map_err(|e| TorsionError::NotExact {
            degree: chain_degree(&e),
            detail: format!("projection: {e}"),
        })?;
        Ok(())
    }
}

fn chain_degree(e: &ChainError) -> i64 {
    match e {
        ChainError::NotAChainMap { degree } => *degree,
        _ => 0,
    }
}

/// `tau(C) = tau(C') + tau(C'')` for acyclic terms.
pub fn check_sum_formula(ses: &ShortExactSequence) -> Result<FormulaReport, TorsionError> {
    ses.validate()?;
    let lhs = torsion_of_acyclic(&ses.total);
    let rhs = torsion_of_acyclic(&ses.sub).and_then(|a| Ok(a.add(&torsion_of_acyclic(&ses.quotient)?)));
    FormulaReport::compare("sum", lhs, rhs)
}

/// `tau(C (x) D) = chi(D) tau(C)` for acyclic `C` and `D` over `Z`.
pub fn check_product_formula(c: &BasedComplex, d: &BasedComplex) -> Result<FormulaReport, TorsionError> {
    let tc = torsion_of_acyclic(c)?;
    let lhs = torsion_of_acyclic(&c.tensor(d)?);
    FormulaReport::compare("product", lhs, Ok(tc.times(d.euler_characteristic())))
}

/// `tau(g f) = tau(g) + tau(f)`, each torsion that of the mapping cone.
pub fn composition_torsion(
    f: &ChainMap,
    g: &ChainMap,
    a: &BasedComplex,
    b: &BasedComplex,
    c: &BasedComplex,
) -> Result<FormulaReport, TorsionError> {
    let gf = f.compose(g, a, b, c);
    let cone = |m: &ChainMap, s: &BasedComplex, t: &BasedComplex| -> Result<K1Class, TorsionError> {
        torsion_of_acyclic(&BasedComplex::cone(m, s, t)?).map_err(|e| match e {
            TorsionError::NotAcyclic(d) => TorsionError::NotAcyclic(format!("map is not a chain equivalence ({d})")),
            e => e,
        })
    };
    let lhs = cone(&gf, a, c);
    let rhs = cone(g, b, c).and_then(|x| Ok(x.add(&cone(f, a, b)?)));
    FormulaReport::compare("composition", lhs, rhs)
}

/// `tau = (-1)^m tau*` on the determinant level.
pub fn duality_relation(tau: &K1Class, m: i64) -> Verdict {
    let star = tau.involve();
    let rhs = if m.rem_euclid(2) == 0 { star } else { star.neg() };
    tau.compare(&rhs).into()
}

/// Algebraic subdivision: `tau(C) = tau(Cbar) + sum tau(Q^l, h^l)`.
///
/// `levels[k - lo][i]` is the filtration level of basis element `i` of `C_k`;
/// `Q^l` is spanned by the elements of level `l`, whose homology must be
/// concentrated in degree `l`. `homology_bases[l]` gives cycles of `Q^l_l`
/// forming a basis of `H_l(Q^l)`; when absent, `Q^l` must be concentrated in
/// degree `l` and its basis is used.
pub fn check_subdivision(
    c: &BasedComplex,
    levels: &[Vec<i64>],
    homology_bases: &BTreeMap<i64, RingMatrix>,
) -> Result<FormulaReport, TorsionError> {
    let g = c.ring();
    if levels.len() != c.ranks().len() || c.degrees().any(|k| levels[(k - c.lo()) as usize].len() != c.rank(k)) {
        return Err(TorsionError::Filtration("level assignment does not match the ranks".into()));
    }
    let level = |k: i64, i: usize| levels[(k - c.lo()) as usize][i];
    for k in c.lo() + 1..=c.hi() {
        let d = c.boundary(k);
        for j in 0..d.cols() {
            for i in 0..d.rows() {
                if !d.get(i, j).is_zero() && level(k - 1, i) > level(k, j) {
                    return Err(TorsionError::Filtration(format!(
                        "boundary of element {j} in degree {k} leaves its filtration stage"
                    )));
                }
            }
        }
    }
    let all: BTreeSet<i64> = levels.iter().flatten().copied().collect();
    let positions = |l: i64, k: i64| -> Vec<usize> {
        if k < c.lo() || k > c.hi() {
            return vec![];
        }
        (0..c.rank(k)).filter(|&i| level(k, i) == l).collect()
    };
    // the subquotient Q^l
    let quotient = |l: i64| -> Result<BasedComplex, TorsionError> {
        let ranks = c.degrees().map(|k| positions(l, k).len()).collect();
        let boundaries = (c.lo() + 1..=c.hi())
            .map(|k| select(&c.boundary(k), &positions(l, k - 1), &positions(l, k)))
            .collect();
        Ok(BasedComplex::new(g, c.lo(), ranks, boundaries)?)
    };
    let mut qs = BTreeMap::new();
    let mut hs = BTreeMap::new();
    for &l in &all {
        let q = quotient(l)?;
        let h = match homology_bases.get(&l) {
            Some(h) => h.clone(),
            None => {
                if let Some(k) = q.degrees().find(|&k| k != l && q.rank(k) != 0) {
                    return Err(TorsionError::Filtration(format!(
                        "stage {l} has cells in degree {k}; supply a homology basis"
                    )));
                }
                RingMatrix::identity(g, q.rank(l))
            }
        };
        qs.insert(l, q);
        hs.insert(l, h);
    }
    let mut rhs = Ok(K1Class::trivial(g));
    for (&l, q) in &qs {
        let t = torsion_with_homology(q, &BTreeMap::from([(l, hs[&l].clone())])).map_err(|e| match e {
            TorsionError::NotAcyclic(d) => {
                TorsionError::Filtration(format!("stage {l}: homology is not the given free module in degree {l} ({d})"))
            }
            e => e,
        });
        rhs = match (rhs, t) {
            (Ok(a), Ok(b)) => Ok(a.add(&b)),
            (Err(e), _) | (_, Err(e)) => Err(e),
        };
    }
    let cbar = subdivided_complex(c, &qs, &hs, &positions)?;
    let rhs = rhs.and_then(|r| Ok(torsion_of_acyclic(&cbar)?.add(&r)));
    FormulaReport::compare("subdivision", torsion_of_acyclic(c), rhs)
}

fn select(m: &RingMatrix, rows: &[usize], cols: &[usize]) -> RingMatrix {
    let mut out = RingMatrix::zeros(m.group(), rows.len(), cols.len());
    for (a, &i) in rows.iter().enumerate() {
        for (b, &j) in cols.iter().enumerate() {
            out.set(a, b, m.get(i, j).clone());
        }
    }
    out
}

/// `Cbar_l = H_l(Q^l)` with the boundary of the triple.
fn subdivided_complex(
    c: &BasedComplex,
    qs: &BTreeMap<i64, BasedComplex>,
    hs: &BTreeMap<i64, RingMatrix>,
    positions: &dyn Fn(i64, i64) -> Vec<usize>,
) -> Result<BasedComplex, TorsionError> {
    let g = c.ring();
    let lo = *qs.keys().next().unwrap_or(&0);
    let hi = *qs.keys().last().unwrap_or(&0);
    let rank = |l: i64| hs.get(&l).map_or(0, |h| h.cols());
    let ranks: Vec<usize> = (lo..=hi).map(rank).collect();
    let window = default_window(c);
    let mut boundaries = Vec::new();
    for l in lo + 1..=hi {
        let mut m = RingMatrix::zeros(g, rank(l - 1), rank(l));
        if rank(l) > 0 && rank(l - 1) > 0 {
            let src = positions(l, l);
            let dst = positions(l - 1, l - 1);
            let d = c.boundary(l);
            // lift, apply the boundary, project to Q^{l-1}_{l-1}
            let mut lift = RingMatrix::zeros(g, c.rank(l), rank(l));
            for (a, &i) in src.iter().enumerate() {
                for j in 0..rank(l) {
                    lift.set(i, j, hs[&l].get(a, j).clone());
                }
            }
            let image = d.mul(&lift);
            let proj = select(&image, &dst, &(0..rank(l)).collect::<Vec<_>>());
            // express modulo boundaries of Q^{l-1}
            let h = &hs[&(l - 1)];
            let qd = qs[&(l - 1)].boundary(l);
            let mut a = RingMatrix::zeros(g, dst.len(), h.cols() + qd.cols());
            a.set_block(0, 0, h);
            a.set_block(0, h.cols(), &qd);
            let x = solve(&a, &proj, window)?.ok_or_else(|| {
                TorsionError::Filtration(format!("boundary of stage {l} is not expressible in the basis of stage {}", l - 1))
            })?;
            m = x.submatrix(0..h.cols(), 0..rank(l));
        }
        boundaries.push(m);
    }
    let cbar = BasedComplex::new(g, lo, ranks, boundaries)?;
    cbar.validate()?;
    Ok(cbar)
}

