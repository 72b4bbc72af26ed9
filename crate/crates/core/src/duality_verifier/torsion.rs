use std::collections::BTreeMap;

use serde::Serialize;

use super::{check_cycle, poincare_check, Direction, DualityError};
use crate::chains::{BasedComplex, ChainMap};
use crate::coefficients::{GroupKind, GroupSpec, IntMatrix, RingMatrix};
use crate::simplicial::{
    cap, equivariant_cap_matrix, equivariant_complex, Chain, Cochain, SimplicialCover, SimplicialSpace, Twist,
    Voltage,
};
use crate::torsion::{duality_relation, torsion_of_acyclic, K1Class, K1Json, TorsionError, Verdict};

/// Torsion of the cone of each cap chain equivalence.
#[derive(Clone, Debug, Serialize)]
pub struct DualityTorsion {
    pub ring: String,
    pub relative_to_absolute: K1Json,
    pub absolute_to_relative: K1Json,
    pub trivial: bool,
    /// `tau = (-1)^n tau*` for both directions.
    pub relation: Verdict,
    #[serde(skip)]
    pub classes: [K1Class; 2],
}

/// Cap with `z` as a chain map from the `n`-dual of one complex to the other,
/// over `Z` with the space's own twisting.
fn integer_cap_map(k: &SimplicialSpace, z: &Chain, dir: Direction) -> Result<(BasedComplex, BasedComplex, ChainMap), DualityError> {
    let n = z.degree;
    let (crel, hrel) = dir.rels();
    let c = Twist::Trivial;
    let src = k.based_complex(c, crel).dual(n);
    let tgt = k.based_complex(c.combine(z.twist), hrel);
    let sc = k.chains(c, crel);
    let tc = k.chains(c.combine(z.twist), hrel);
    let mut maps = BTreeMap::new();
    for j in 0..=n {
        let m = n - j;
        let mut cols = Vec::new();
        for &b in &sc.bases[m as usize] {
            let mut u = Cochain::zero(k, m, c);
            u.values[b] = 1;
            cols.push(tc.to_basis(j, &cap(k, &u, z)?.coeffs));
        }
        let mat = IntMatrix::from_columns(tc.bases[j as usize].len(), &cols);
        maps.insert(j, RingMatrix::from_int(GroupSpec::trivial(), &mat));
    }
    Ok((src, tgt, ChainMap::new(maps)))
}

fn equivariant_cap_map(k: &SimplicialSpace, v: &Voltage, z: &Chain, dir: Direction) -> (BasedComplex, BasedComplex, ChainMap) {
    let n = z.degree;
    let (crel, hrel) = dir.rels();
    let src = equivariant_complex(k, v, Twist::Trivial, crel).dual(n);
    let tgt = equivariant_complex(k, v, Twist::Trivial, hrel);
    let maps = (0..=n).map(|j| (j, equivariant_cap_matrix(k, v, z, j, crel, hrel))).collect();
    (src, tgt, ChainMap::new(maps))
}

fn cone_torsion(s: &BasedComplex, t: &BasedComplex, f: &ChainMap) -> Result<K1Class, DualityError> {
    f.check(s, t)?;
    let cone = BasedComplex::cone(f, s, t)?;
    torsion_of_acyclic(&cone).map_err(|e| match e {
        TorsionError::NotAcyclic(d) => DualityError::DualityFails(format!("cap is not a chain equivalence: {d}")),
        e => e.into(),
    })
}

/// Whitehead torsion of the cap chain equivalences, over the deck ring of the
/// voltage cover when one is given and over `Z` otherwise.
pub fn duality_torsion(k: &SimplicialSpace, z: &Chain, voltage: Option<&Voltage>) -> Result<DualityTorsion, DualityError> {
    check_cycle(k, z)?;
    let mut classes = Vec::new();
    let ring;
    match voltage {
        None => {
            if !poincare_check(k, z)?.passes() {
                return Err(DualityError::DualityFails("cap with the class is not an isomorphism".into()));
            }
            ring = GroupSpec::trivial();
            for dir in Direction::BOTH {
                let (s, t, f) = integer_cap_map(k, z, dir)?;
                classes.push(cone_torsion(&s, &t, &f)?);
            }
        }
        Some(v) => {
            if k.is_twisted() || z.twist != Twist::Trivial {
                return Err(DualityError::Unsupported("covers of twisted spaces".into()));
            }
            if !matches!(v.group.kind(), GroupKind::InfiniteCyclic) {
                let cover = SimplicialCover::from_voltage(k, v.clone())?;
                let tz = cover.transfer_chain(z)?;
                if !poincare_check(&cover.total, &tz)?.passes() {
                    return Err(DualityError::DualityFails("cap with the transferred class fails on the cover".into()));
                }
            }
            ring = v.group;
            for dir in Direction::BOTH {
                let (s, t, f) = equivariant_cap_map(k, v, z, dir);
                classes.push(cone_torsion(&s, &t, &f)?);
            }
        }
    }
    let rel = |t: &K1Class| duality_relation(t, z.degree);
    let relation = match (rel(&classes[0]), rel(&classes[1])) {
        (Verdict::Pass, Verdict::Pass) => Verdict::Pass,
        (Verdict::Fail, _) | (_, Verdict::Fail) => Verdict::Fail,
        _ => Verdict::Unknown,
    };
    let classes: [K1Class; 2] = [classes[0].clone(), classes[1].clone()];
    Ok(DualityTorsion {
        ring: ring.describe(),
        relative_to_absolute: classes[0].to_json(),
        absolute_to_relative: classes[1].to_json(),
        trivial: classes.iter().all(|c| c.is_trivial()),
        relation,
        classes,
    })
}

/// The voltage on `k.subdivide()` pulled back along `b(s) -> s[0]`.
pub fn subdivide_voltage(k: &SimplicialSpace, sd: &SimplicialSpace, v: &Voltage) -> Result<Voltage, DualityError> {
    let mut lead = Vec::new();
    for d in 0..=k.dim() {
        lead.extend(k.simplices(d).iter().map(|s| s[0]));
    }
    let values = sd.simplices(1).iter().map(|e| ((e[0], e[1]), v.get(lead[e[0]], lead[e[1]]))).collect();
    Ok(Voltage::new(sd, v.group, values)?)
}
