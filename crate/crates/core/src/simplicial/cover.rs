use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::cochain::{Chain, Cochain, Twist};
use super::space::{Rel, SimplicialSpace};
use super::SpaceError;
use crate::chains::BasedComplex;
use crate::coefficients::{GroupKind, GroupRingElt, GroupSpec, RingMatrix};

/// Edge voltages `nu(a, b)` for `a < b` in a cyclic group; a cocycle on triangles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Voltage {
    pub group: GroupSpec,
    pub values: BTreeMap<(usize, usize), i64>,
}

impl Voltage {
    pub fn new(base: &SimplicialSpace, group: GroupSpec, values: BTreeMap<(usize, usize), i64>) -> Result<Self, SpaceError> {
        if group.character() != 1 {
            return Err(SpaceError::Unsupported("voltage group must carry the trivial character".into()));
        }
        for &(a, b) in values.keys() {
            if a >= b || base.index_of(&[a, b]).is_none() {
                return Err(SpaceError::NotACover(format!("voltage on ({a},{b}), which is not an ordered edge")));
            }
        }
        let v = Voltage { group, values: values.into_iter().map(|(k, x)| (k, group.reduce_exp(x))).collect() };
        for t in base.simplices(2) {
            let lhs = group.reduce_exp(v.get(t[0], t[1]) + v.get(t[1], t[2]));
            if lhs != v.get(t[0], t[2]) {
                return Err(SpaceError::NotACover(format!("voltage is not a cocycle on triangle {t:?}")));
            }
        }
        Ok(v)
    }

    /// `nu(a, b)` for `a <= b` (0 when equal or unset).
    pub fn get(&self, a: usize, b: usize) -> i64 {
        if a == b {
            return 0;
        }
        let x = self.values.get(&(a.min(b), a.max(b))).copied().unwrap_or(0);
        if a < b {
            x
        } else {
            self.group.reduce_exp(-x)
        }
    }

    pub fn to_json(&self) -> VoltageJson {
        VoltageJson {
            group: self.group.to_json(),
            values: self.values.iter().filter(|(_, &x)| x != 0).map(|(&(a, b), &x)| (a, b, x)).collect(),
        }
    }

    pub fn from_json(base: &SimplicialSpace, j: &VoltageJson) -> Result<Self, SpaceError> {
        let g = GroupSpec::from_json(&j.group).map_err(|e| SpaceError::Invalid(e.to_string()))?;
        Voltage::new(base, g, j.values.iter().map(|&(a, b, x)| ((a, b), x)).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VoltageJson {
    pub group: crate::coefficients::RingSpecJson,
    pub values: Vec<(usize, usize, i64)>,
}

/// A finite covering `p: total -> base` of ordered simplicial complexes.
#[derive(Clone, Debug)]
pub struct SimplicialCover {
    pub total: SimplicialSpace,
    pub base: SimplicialSpace,
    pub projection: Vec<usize>,
    pub sheets: usize,
    lifts: Vec<Vec<Vec<usize>>>,
    pub voltage: Option<Voltage>,
}

impl SimplicialCover {
    /// Validate a vertex map as a covering map.
    pub fn new(total: SimplicialSpace, base: SimplicialSpace, projection: Vec<usize>) -> Result<Self, SpaceError> {
        if projection.len() != total.n_vertices() {
            return Err(SpaceError::NotACover("projection must list one base vertex per total vertex".into()));
        }
        if base.n_vertices() == 0 || total.n_vertices() % base.n_vertices() != 0 {
            return Err(SpaceError::NotACover("vertex counts are not a multiple".into()));
        }
        let sheets = total.n_vertices() / base.n_vertices();
        if total.dim() != base.dim() {
            return Err(SpaceError::NotACover("dimensions differ".into()));
        }
        let mut lifts: Vec<Vec<Vec<usize>>> = (0..=base.dim()).map(|d| vec![Vec::new(); base.count(d as i64)]).collect();
        for d in 0..=total.dim() {
            for (i, s) in total.simplices(d).iter().enumerate() {
                let img: Vec<usize> = s.iter().map(|&v| projection[v]).collect();
                if img.iter().any(|&v| v >= base.n_vertices()) {
                    return Err(SpaceError::NotACover("projection leaves the base".into()));
                }
                if img.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(SpaceError::NotACover(format!("projection is not order-preserving and injective on {s:?}")));
                }
                let bi = base
                    .index_of(&img)
                    .ok_or_else(|| SpaceError::NotACover(format!("image of {s:?} is not a simplex")))?;
                if total.in_sub(d, i) != base.in_sub(d, bi) {
                    return Err(SpaceError::NotACover(format!("subcomplex is not the preimage at {s:?}")));
                }
                lifts[d][bi].push(i);
            }
        }
        for d in 0..=base.dim() {
            for (bi, l) in lifts[d].iter().enumerate() {
                if l.len() != sheets {
                    return Err(SpaceError::NotACover(format!(
                        "{:?} has {} lifts, expected {sheets}",
                        base.simplex(d, bi),
                        l.len()
                    )));
                }
            }
        }
        // lifts restrict bijectively to faces
        for d in 1..=base.dim() {
            for (bi, l) in lifts[d].iter().enumerate() {
                let s = base.simplex(d, bi);
                for k in 0..=d {
                    let mut seen = std::collections::BTreeSet::new();
                    for &ti in l {
                        let mut f = total.simplex(d, ti).to_vec();
                        f.remove(k);
                        seen.insert(f);
                    }
                    if seen.len() != sheets {
                        return Err(SpaceError::NotACover(format!("lifts of {s:?} do not restrict bijectively to face {k}")));
                    }
                }
            }
        }
        for e in total.simplices(1) {
            if total.edge_sign(e[0], e[1]) != base.edge_sign(projection[e[0]], projection[e[1]]) {
                return Err(SpaceError::NotACover("character of the total space is not pulled back".into()));
            }
        }
        Ok(SimplicialCover { total, base, projection, sheets, lifts, voltage: None })
    }

    /// The cover determined by a voltage in `Z/n`; total vertex `(v, s)` is `v * n + s`.
    pub fn from_voltage(base: &SimplicialSpace, voltage: Voltage) -> Result<Self, SpaceError> {
        let n = match voltage.group.kind() {
            GroupKind::Cyclic(n) => n as usize,
            GroupKind::Trivial => 1,
            GroupKind::InfiniteCyclic => {
                return Err(SpaceError::Unsupported("infinite covers have no finite total space".into()))
            }
        };
        let lift = |s: &[usize], sheet: i64| -> Vec<usize> {
            s.iter()
                .map(|&v| v * n + voltage.group.reduce_exp(sheet + voltage.get(s[0], v)) as usize)
                .collect()
        };
        let mut facets = Vec::new();
        let mut sub = Vec::new();
        for f in base.facets() {
            for sh in 0..n as i64 {
                facets.push(lift(&f, sh));
            }
        }
        for f in base.sub_facets() {
            for sh in 0..n as i64 {
                sub.push(lift(&f, sh));
            }
        }
        let mut total = SimplicialSpace::from_facets(base.n_vertices() * n, &facets)?.with_subcomplex(&sub)?;
        let neg: Vec<(usize, usize)> = total
            .simplices(1)
            .iter()
            .filter(|e| base.edge_sign(e[0] / n, e[1] / n) == -1)
            .map(|e| (e[0], e[1]))
            .collect();
        total = total.with_character(&neg)?;
        let projection = (0..total.n_vertices()).map(|v| v / n).collect();
        let mut c = SimplicialCover::new(total, base.clone(), projection)?;
        c.voltage = Some(voltage);
        Ok(c)
    }

    pub fn lifts(&self, d: usize, i: usize) -> &[usize] {
        &self.lifts[d][i]
    }

    /// Sum of all lifts.
    pub fn transfer_chain(&self, c: &Chain) -> Result<Chain, SpaceError> {
        c.check(&self.base)?;
        let mut out = Chain::zero(&self.total, c.degree, c.twist);
        for (i, &x) in c.coeffs.iter().enumerate() {
            for &t in &self.lifts[c.degree as usize][i] {
                out.coeffs[t] += x;
            }
        }
        Ok(out)
    }

    /// `(tr u)(s) = sum of u over the lifts of s`.
    pub fn transfer_cochain(&self, u: &Cochain) -> Result<Cochain, SpaceError> {
        u.check(&self.total)?;
        let mut out = Cochain::zero(&self.base, u.degree, u.twist);
        if u.degree >= 0 && (u.degree as usize) < self.lifts.len() {
            for (i, o) in out.values.iter_mut().enumerate() {
                *o = self.lifts[u.degree as usize][i].iter().map(|&t| u.values[t]).sum();
            }
        }
        Ok(out)
    }

    pub fn push_forward(&self, c: &Chain) -> Result<Chain, SpaceError> {
        c.check(&self.total)?;
        let mut out = Chain::zero(&self.base, c.degree, c.twist);
        if c.degree >= 0 && (c.degree as usize) < self.lifts.len() {
            for (i, o) in out.coeffs.iter_mut().enumerate() {
                *o = self.lifts[c.degree as usize][i].iter().map(|&t| c.coeffs[t]).sum();
            }
        }
        Ok(out)
    }

    pub fn pull_back(&self, u: &Cochain) -> Result<Cochain, SpaceError> {
        u.check(&self.base)?;
        let mut out = Cochain::zero(&self.total, u.degree, u.twist);
        if u.degree >= 0 && (u.degree as usize) < self.lifts.len() {
            for (i, &x) in u.values.iter().enumerate() {
                for &t in &self.lifts[u.degree as usize][i] {
                    out.values[t] = x;
                }
            }
        }
        Ok(out)
    }
}

fn rel_positions(k: &SimplicialSpace, d: i64, rel: Rel) -> (Vec<usize>, BTreeMap<usize, usize>) {
    let b = k.basis(d, rel);
    let pos = b.iter().enumerate().map(|(p, &i)| (i, p)).collect();
    (b, pos)
}

/// Cellular chains of the cover as a based complex over `Z[G]`: basis the
/// sheet-0 lifts of base simplices, `d L(s) = sum (-1)^i g^{shift_i} L(face_i)`
/// with `shift_0 = nu(v_0, v_1)` and the others zero.
pub fn equivariant_complex(base: &SimplicialSpace, voltage: &Voltage, twist: Twist, rel: Rel) -> BasedComplex {
    let g = voltage.group;
    let dim = base.dim() as i64;
    let ranks: Vec<usize> = (0..=dim).map(|d| base.basis(d, rel).len()).collect();
    let mut boundaries = Vec::new();
    for d in 1..=dim {
        let (src, _) = rel_positions(base, d, rel);
        let (_, tpos) = rel_positions(base, d - 1, rel);
        let mut m = RingMatrix::zeros(g, ranks[d as usize - 1], ranks[d as usize]);
        for (col, &i) in src.iter().enumerate() {
            let s = base.simplex(d as usize, i);
            for (k, (f, c)) in base.boundary_terms(d as usize, i, twist).into_iter().enumerate() {
                let Some(&row) = tpos.get(&f) else { continue };
                let shift = if k == 0 { voltage.get(s[0], s[1]) } else { 0 };
                let x = m.get(row, col) + &GroupRingElt::monomial(g, shift, c);
                m.set(row, col, x);
            }
        }
        boundaries.push(m);
    }
    BasedComplex::new(g, 0, ranks, boundaries).expect("equivariant complex shapes")
}

/// Matrix of `cap z` from the `n`-dual of the equivariant complex on
/// `cochains` to the one on `chains`, in dual degree `j`.
pub fn equivariant_cap_matrix(base: &SimplicialSpace, voltage: &Voltage, z: &Chain, j: i64, cochains: Rel, chains: Rel) -> RingMatrix {
    let g = voltage.group;
    let nn = z.degree;
    let m = nn - j;
    let (cols, cpos) = rel_positions(base, m, cochains);
    let (rows, rpos) = rel_positions(base, j, chains);
    let mut out = RingMatrix::zeros(g, rows.len(), cols.len());
    if j < 0 || m < 0 {
        return out;
    }
    let ju = j as usize;
    for (i, &x) in z.coeffs.iter().enumerate() {
        if x == 0 {
            continue;
        }
        let s = base.simplex(nn as usize, i);
        let back = base.index_of(&s[ju..]).unwrap();
        let Some(&col) = cpos.get(&back) else { continue };
        let front = base.index_of(&s[..=ju]).unwrap();
        let Some(&row) = rpos.get(&front) else { continue };
        let shift = -voltage.get(s[0], s[ju]);
        let y = out.get(row, col) + &GroupRingElt::monomial(g, shift, x);
        out.set(row, col, y);
    }
    out
}
