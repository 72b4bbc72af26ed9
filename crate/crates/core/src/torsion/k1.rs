use serde::{Deserialize, Serialize};

use super::{ring_inverse, TorsionError};
use crate::coefficients::{ElementJson, GroupRingElt, GroupSpec, RingMatrix, UnitClass};

/// Outcome of comparing two torsion classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Comparison {
    Equal,
    Unequal,
    Unknown,
}

/// An element of reduced `K_1` of a catalog ring, modulo `+-g`.
///
/// Every catalog ring is a commutative group ring of a cyclic group, for which
/// `SK_1` vanishes, so the determinant class decides equality.
#[derive(Clone, Debug, PartialEq)]
pub struct K1Class {
    pub ring: GroupSpec,
    pub representative: RingMatrix,
    pub det: UnitClass,
    /// Sign of the augmented determinant.
    pub augmentation_sign: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct K1Json {
    pub det: ElementJson,
    pub normalized: ElementJson,
    pub trivial: bool,
    pub representative: Vec<Vec<ElementJson>>,
}

impl K1Class {
    pub fn new(m: RingMatrix) -> Result<Self, TorsionError> {
        if m.rows() != m.cols() {
            return Err(TorsionError::NotInvertible(format!("{}x{} matrix is not square", m.rows(), m.cols())));
        }
        let d = m.det()?;
        let det = UnitClass::new(d.clone())
            .map_err(|e| TorsionError::NotInvertible(format!("determinant {d} is not a unit ({e})")))?;
        Ok(K1Class { ring: m.group(), augmentation_sign: d.augmentation().signum(), representative: m, det })
    }

    pub fn trivial(g: GroupSpec) -> Self {
        K1Class::new(RingMatrix::identity(g, 0)).expect("empty matrix")
    }

    pub fn from_unit(u: GroupRingElt) -> Result<Self, TorsionError> {
        let g = u.group();
        K1Class::new(RingMatrix::from_rows(g, 1, 1, vec![vec![u]])?)
    }

    pub fn is_trivial(&self) -> bool {
        self.det.is_trivial()
    }

    /// Sum in `K_1`: block sum of representatives.
    pub fn add(&self, other: &K1Class) -> K1Class {
        K1Class {
            ring: self.ring,
            representative: self.representative.block_diag(&other.representative),
            det: self.det.mul(&other.det),
            augmentation_sign: self.augmentation_sign * other.augmentation_sign,
        }
    }

    /// Additive inverse, represented by the inverse matrix.
    pub fn neg(&self) -> K1Class {
        let representative = match ring_inverse(&self.representative) {
            Ok(inv) => inv,
            Err(_) => RingMatrix::from_rows(self.ring, 1, 1, vec![vec![self.det.inverse.clone()]]).unwrap(),
        };
        K1Class { ring: self.ring, representative, det: self.det.inv(), augmentation_sign: self.augmentation_sign }
    }

    pub fn sub(&self, other: &K1Class) -> K1Class {
        self.add(&other.neg())
    }

    /// `k`-fold multiple.
    pub fn times(&self, k: i64) -> K1Class {
        let base = if k < 0 { self.neg() } else { self.clone() };
        let mut acc = K1Class::trivial(self.ring);
        for _ in 0..k.unsigned_abs() {
            acc = acc.add(&base);
        }
        acc
    }

    /// Image under the involution: conjugate transpose.
    pub fn involve(&self) -> K1Class {
        K1Class {
            ring: self.ring,
            representative: self.representative.conjugate_transpose(),
            det: self.det.involve(),
            augmentation_sign: self.augmentation_sign,
        }
    }

    pub fn compare(&self, other: &K1Class) -> Comparison {
        if self.ring != other.ring {
            return Comparison::Unknown;
        }
        if self.det.same_class(&other.det) {
            Comparison::Equal
        } else {
            Comparison::Unequal
        }
    }

    pub fn to_json(&self) -> K1Json {
        K1Json {
            det: self.det.unit.to_json(),
            normalized: self.det.normalized.to_json(),
            trivial: self.is_trivial(),
            representative: self.representative.to_rows().iter().map(|r| r.iter().map(|x| x.to_json()).collect()).collect(),
        }
    }
}
