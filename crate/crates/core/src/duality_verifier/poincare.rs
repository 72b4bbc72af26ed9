use serde::Serialize;

use super::{check_cycle, class_map, cochain_twists, same_map, terms, twist_name, DualityError, DualityTorsion, Groups};
use crate::coefficients::hom_decompose;
use crate::simplicial::{cap, cap_reversed, Chain, Cochain, Rel, SimplicialSpace, Twist, Voltage};
use crate::torsion::Verdict;

/// Which Lefschetz map: `H^m(K, A) -> H_{n-m}(K)` or `H^m(K) -> H_{n-m}(K, A)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    RelativeToAbsolute,
    AbsoluteToRelative,
}

impl Direction {
    pub const BOTH: [Direction; 2] = [Direction::RelativeToAbsolute, Direction::AbsoluteToRelative];

    /// Relativity of the cochain side and of the chain side.
    pub fn rels(self) -> (Rel, Rel) {
        match self {
            Direction::RelativeToAbsolute => (Rel::Relative, Rel::Absolute),
            Direction::AbsoluteToRelative => (Rel::Absolute, Rel::Relative),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeCheck {
    pub direction: Direction,
    pub coefficients: String,
    /// Cohomological degree `m`; the target is `H_{n-m}`.
    pub degree: i64,
    pub cohomology: String,
    pub homology: String,
    pub iso: bool,
    pub diagonals_agree: bool,
}

/// A class the cap map kills, a class it misses, or a class on which the
/// two diagonals disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub direction: Direction,
    pub coefficients: String,
    pub degree: i64,
    pub kind: String,
    /// Coordinates in the generators of the source (kernel, diagonal) or target (cokernel) group.
    pub class: Vec<i64>,
    pub representative: Vec<(Vec<usize>, i64)>,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct DualityReport {
    pub dim: i64,
    pub class_twist: String,
    pub verdict: Verdict,
    /// Both directions pass or fail together, per coefficient system.
    pub directions_agree: bool,
    pub degrees: Vec<DegreeCheck>,
    pub witnesses: Vec<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subdivision_stable: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flip_stable: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub torsion: Option<DualityTorsion>,
}

impl DualityReport {
    pub fn passes(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    fn signature(&self) -> Vec<(Direction, String, i64, bool)> {
        self.degrees.iter().map(|d| (d.direction, d.coefficients.clone(), d.degree, d.iso)).collect()
    }
}

fn cap_with<'a>(k: &'a SimplicialSpace, z: &Chain, m: i64, c: Twist, reversed: bool) -> impl Fn(&[i64]) -> Result<Vec<i64>, DualityError> + 'a {
    let z = z.clone();
    move |u: &[i64]| {
        let u = Cochain { degree: m, twist: c, values: u.to_vec() };
        let out = if reversed { cap_reversed(k, &u, &z)? } else { cap(k, &u, &z)? };
        Ok(out.coeffs)
    }
}

/// Cap with `z` in both Lefschetz directions, every degree, each cochain twist.
pub fn poincare_check(k: &SimplicialSpace, z: &Chain) -> Result<DualityReport, DualityError> {
    check_cycle(k, z)?;
    let n = z.degree;
    let mut degrees = Vec::new();
    let mut witnesses = Vec::new();
    let mut directions_agree = true;
    for c in cochain_twists(k) {
        let t = c.combine(z.twist);
        let mut all_iso = Vec::new();
        for dir in Direction::BOTH {
            let (crel, hrel) = dir.rels();
            let mut ok = true;
            for m in 0..=n {
                let src = Groups::cohomology(k, c, crel, m);
                let tgt = Groups::homology(k, t, hrel, n - m);
                let f = class_map(&src, &tgt, cap_with(k, z, m, c, false))?;
                let g = class_map(&src, &tgt, cap_with(k, z, m, c, true))?;
                let dec = hom_decompose(&src.group.group, &tgt.group.group, &f)?;
                let diagonals_agree = same_map(&tgt, &f, &g);
                let witness = |kind: &str, class: Vec<i64>, representative, detail: String| Witness {
                    direction: dir,
                    coefficients: twist_name(c).into(),
                    degree: m,
                    kind: kind.into(),
                    class,
                    representative,
                    detail,
                };
                if !dec.is_injective() {
                    let e = &dec.kernel_embedding;
                    if let Some(col) = (0..e.cols()).map(|j| e.column(j)).find(|x| !src.group.group.is_zero_element(x)) {
                        let rep = src.chains.from_basis(m, &src.group.cycle_of(&col));
                        witnesses.push(witness(
                            "kernel",
                            col,
                            terms(k, m, &rep),
                            format!("a class of H^{m} = {} maps to zero in H_{} = {}", src.describe(), n - m, tgt.describe()),
                        ));
                    }
                }
                if !dec.is_surjective() {
                    let b = tgt.group.generators.len();
                    if let Some(i) = (0..b).find(|&i| {
                        let mut e = vec![0; b];
                        e[i] = 1;
                        !dec.cokernel.is_zero_element(&e)
                    }) {
                        let mut e = vec![0; b];
                        e[i] = 1;
                        let rep = tgt.chains.from_basis(n - m, &tgt.group.generators[i]);
                        witnesses.push(witness(
                            "cokernel",
                            e,
                            terms(k, n - m, &rep),
                            format!("a class of H_{} = {} is not hit from H^{m} = {}", n - m, tgt.describe(), src.describe()),
                        ));
                    }
                }
                if !diagonals_agree {
                    if let Some(j) = (0..f.cols()).find(|&j| !tgt.group.group.equal_elements(&f.column(j), &g.column(j))) {
                        let mut e = vec![0; f.cols()];
                        e[j] = 1;
                        witnesses.push(witness(
                            "diagonal",
                            e,
                            terms(k, m, &src.representatives()[j]),
                            "front-face and back-face diagonals give different classes".into(),
                        ));
                    }
                }
                ok &= dec.is_iso();
                degrees.push(DegreeCheck {
                    direction: dir,
                    coefficients: twist_name(c).into(),
                    degree: m,
                    cohomology: src.describe(),
                    homology: tgt.describe(),
                    iso: dec.is_iso(),
                    diagonals_agree,
                });
            }
            all_iso.push(ok);
        }
        directions_agree &= all_iso[0] == all_iso[1];
    }
    let pass = degrees.iter().all(|d| d.iso && d.diagonals_agree);
    Ok(DualityReport {
        dim: n,
        class_twist: twist_name(z.twist).into(),
        verdict: if pass { Verdict::Pass } else { Verdict::Fail },
        directions_agree,
        degrees,
        witnesses,
        subdivision_stable: None,
        flip_stable: None,
        torsion: None,
    })
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn sign(p: &[usize]) -> i64 {
    let inv = (0..p.len()).flat_map(|i| (i + 1..p.len()).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Image of a chain under barycentric subdivision, `sd = k.subdivide()`:
/// each simplex goes to the signed sum of its flags.
pub fn subdivide_chain(k: &SimplicialSpace, sd: &SimplicialSpace, z: &Chain) -> Result<Chain, DualityError> {
    z.check(k)?;
    let n = z.degree as usize;
    let offsets: Vec<usize> = (0..=k.dim()).scan(0, |acc, d| {
        let o = *acc;
        *acc += k.count(d as i64);
        Some(o)
    }).collect();
    let mut out = Chain::zero(sd, z.degree, z.twist);
    let perms = permutations(n + 1);
    for (i, &x) in z.coeffs.iter().enumerate() {
        if x == 0 {
            continue;
        }
        let s = k.simplex(n, i);
        for p in &perms {
            let mut verts = Vec::with_capacity(n + 1);
            for d in 0..=n {
                let mut face: Vec<usize> = p[..=d].iter().map(|&j| s[j]).collect();
                face.sort_unstable();
                verts.push(offsets[d] + k.index_of(&face).unwrap());
            }
            let idx = sd
                .index_of(&verts)
                .ok_or_else(|| DualityError::Unsupported("subdivision does not match the space".into()))?;
            out.coeffs[idx] += x * sign(p) * k.transport(z.twist, s[p[0]], s[0]);
        }
    }
    Ok(out)
}

/// Whether the per-degree verdicts survive one barycentric subdivision.
pub fn subdivision_check(k: &SimplicialSpace, z: &Chain) -> Result<bool, DualityError> {
    let sd = k.subdivide();
    let zs = subdivide_chain(k, &sd, z)?;
    Ok(poincare_check(k, z)?.signature() == poincare_check(&sd, &zs)?.signature())
}

/// Whether `-z` gives the same verdicts as `z`.
pub fn flip_check(k: &SimplicialSpace, z: &Chain) -> Result<bool, DualityError> {
    Ok(poincare_check(k, z)?.signature() == poincare_check(k, &z.scale(-1))?.signature())
}

/// Poincare check plus subdivision and orientation stability, and the
/// duality torsion when duality holds.
pub fn verify_duality(k: &SimplicialSpace, z: &Chain, voltage: Option<&Voltage>) -> Result<DualityReport, DualityError> {
    let mut r = poincare_check(k, z)?;
    r.subdivision_stable = Some(subdivision_check(k, z)?);
    r.flip_stable = Some(flip_check(k, z)?);
    if r.passes() {
        r.torsion = Some(super::duality_torsion(k, z, voltage)?);
    }
    if r.subdivision_stable != Some(true) || r.flip_stable != Some(true) {
        r.verdict = Verdict::Fail;
    }
    Ok(r)
}
