use super::element::GroupRingElt;
use super::group::GroupKind;
use super::ring_matrix::{solve, RingMatrix};
use super::RingError;

/// Representative of `u` modulo trivial units `+-g`.
///
/// Laurent: shifted so the lowest exponent is 0 with positive lowest coefficient.
/// Finite groups: lexicographically smallest coefficient vector among `+-g^k u`.
pub fn normalize_mod_trivial(u: &GroupRingElt) -> GroupRingElt {
    let g = u.group();
    if u.is_zero() {
        return u.clone();
    }
    match g.kind() {
        GroupKind::InfiniteCyclic => {
            let (lo, _) = u.support().unwrap();
            let s = u.shift(-lo);
            if s.coeff(0) < 0 {
                s.scale(-1)
            } else {
                s
            }
        }
        GroupKind::Trivial | GroupKind::Cyclic(_) => {
            let n = g.order().unwrap() as i64;
            let mut best: Option<GroupRingElt> = None;
            for k in 0..n {
                for sign in [1, -1] {
                    let c = u.shift(k).scale(sign);
                    let better = match &best {
                        None => true,
                        Some(b) => c.dense().unwrap() < b.dense().unwrap(),
                    };
                    if better {
                        best = Some(c);
                    }
                }
            }
            best.unwrap()
        }
    }
}

/// Whether `u` is `+-g` for some group element.
pub fn is_trivial_unit(u: &GroupRingElt) -> bool {
    let t = u.terms();
    t.len() == 1 && t[0].1.abs() == 1
}

/// Inverse of a unit, or an explanation of why it is not one.
pub fn invert(u: &GroupRingElt) -> Result<GroupRingElt, RingError> {
    let g = u.group();
    let aug = u.augmentation();
    if aug.abs() != 1 {
        return Err(RingError::NotAUnit(format!("{u}: augmentation {aug} is not +-1")));
    }
    match g.kind() {
        GroupKind::InfiniteCyclic => {
            let (lo, hi) = u.support().unwrap();
            if lo != hi {
                return Err(RingError::NotAUnit(format!("{u}: Laurent polynomial of span {} is not a unit", hi - lo)));
            }
            // units of Z[t,t^-1] are +-t^k; confirm by the bounded search
            let a = RingMatrix::from_rows(g, 1, 1, vec![vec![u.clone()]])?;
            let w = lo.abs() + 1;
            match solve(&a, &RingMatrix::identity(g, 1), w)? {
                Some(x) => Ok(x.get(0, 0).clone()),
                None => Err(RingError::InverseNotFound(format!("{u}: no inverse with exponents in [-{w},{w}]"))),
            }
        }
        GroupKind::Trivial | GroupKind::Cyclic(_) => {
            let a = RingMatrix::from_rows(g, 1, 1, vec![vec![u.clone()]])?;
            match solve(&a, &RingMatrix::identity(g, 1), 0)? {
                Some(x) => Ok(x.get(0, 0).clone()),
                None => Err(RingError::NotAUnit(format!("{u}: no inverse in the group ring"))),
            }
        }
    }
}

/// A unit together with its inverse and its class modulo trivial units.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitClass {
    pub unit: GroupRingElt,
    pub inverse: GroupRingElt,
    pub normalized: GroupRingElt,
}

impl UnitClass {
    pub fn new(u: GroupRingElt) -> Result<Self, RingError> {
        let inverse = invert(&u)?;
        let normalized = normalize_mod_trivial(&u);
        Ok(UnitClass { unit: u, inverse, normalized })
    }

    pub fn one(g: super::GroupSpec) -> Self {
        Self::new(GroupRingElt::one(g)).expect("1 is a unit")
    }

    /// Trivial modulo `+-g`.
    pub fn is_trivial(&self) -> bool {
        is_trivial_unit(&self.normalized)
    }

    /// Equality of classes modulo trivial units.
    pub fn same_class(&self, other: &UnitClass) -> bool {
        self.normalized == other.normalized
    }

    pub fn mul(&self, other: &UnitClass) -> UnitClass {
        let unit = &self.unit * &other.unit;
        let inverse = &self.inverse * &other.inverse;
        let normalized = normalize_mod_trivial(&unit);
        UnitClass { unit, inverse, normalized }
    }

    pub fn inv(&self) -> UnitClass {
        UnitClass {
            unit: self.inverse.clone(),
            inverse: self.unit.clone(),
            normalized: normalize_mod_trivial(&self.inverse),
        }
    }

    pub fn pow(&self, k: i64) -> UnitClass {
        let base = if k < 0 { self.inv() } else { self.clone() };
        let mut acc = UnitClass::one(self.unit.group());
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    pub fn involve(&self) -> UnitClass {
        let unit = self.unit.involve();
        UnitClass { normalized: normalize_mod_trivial(&unit), unit, inverse: self.inverse.involve() }
    }
}

/// Unit class of the determinant of a square matrix.
pub fn det_unit_class(m: &RingMatrix) -> Result<UnitClass, RingError> {
    let d = m.det()?;
    UnitClass::new(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::GroupSpec;

    #[test]
    fn c5_unit_nontrivial() {
        let g = GroupSpec::cyclic(5).unwrap();
        let u = GroupRingElt::from_terms(g, &[(1, 1), (4, 1), (0, -1)]);
        let c = UnitClass::new(u.clone()).unwrap();
        assert!(!c.is_trivial());
        assert!((&c.unit * &c.inverse).is_one());
        // u is fixed by the involution g -> g^-1
        assert_eq!(u.involve(), u);
        let shifted = UnitClass::new(u.shift(3).scale(-1)).unwrap();
        assert!(c.same_class(&shifted));
    }

    #[test]
    fn non_units() {
        let g = GroupSpec::cyclic(5).unwrap();
        let x = GroupRingElt::from_terms(g, &[(0, 1), (1, 1)]);
        assert!(matches!(invert(&x), Err(RingError::NotAUnit(_))));
        // augmentation 1 but not a unit: 1 - g + g^2 ... check via norm
        let y = GroupRingElt::from_terms(g, &[(0, 2), (1, -1)]);
        assert!(invert(&y).is_err());
        let l = GroupSpec::infinite_cyclic();
        let z = GroupRingElt::from_terms(l, &[(0, 2), (1, -1)]);
        assert!(matches!(invert(&z), Err(RingError::NotAUnit(_))));
        let t = GroupRingElt::from_terms(l, &[(3, -1)]);
        assert_eq!(invert(&t).unwrap().terms(), vec![(-3, -1)]);
    }

    #[test]
    fn laurent_normalization() {
        let l = GroupSpec::infinite_cyclic();
        let x = GroupRingElt::from_terms(l, &[(-2, -3), (1, 1)]);
        assert_eq!(normalize_mod_trivial(&x).terms(), vec![(0, 3), (3, -1)]);
    }
}
