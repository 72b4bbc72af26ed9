use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::group::{GroupKind, GroupSpec, RingSpecJson};
use super::RingError;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    /// Coefficients of `t^min, t^(min+1), ...`, trimmed at both ends.
    Laurent { min: i64, coeffs: Vec<i64> },
    /// Coefficients indexed by group element `g^0 .. g^(n-1)`.
    Dense(Vec<i64>),
}

/// An element of the integral group ring `Z[G]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupRingElt {
    group: GroupSpec,
    repr: Repr,
}

impl GroupRingElt {
    pub fn zero(group: GroupSpec) -> Self {
        let repr = match group.order() {
            Some(n) => Repr::Dense(vec![0; n]),
            None => Repr::Laurent { min: 0, coeffs: vec![] },
        };
        GroupRingElt { group, repr }
    }

    pub fn one(group: GroupSpec) -> Self {
        Self::monomial(group, 0, 1)
    }

    pub fn constant(group: GroupSpec, c: i64) -> Self {
        Self::monomial(group, 0, c)
    }

    /// `c * g^e`.
    pub fn monomial(group: GroupSpec, e: i64, c: i64) -> Self {
        let mut x = Self::zero(group);
        x.add_term(e, c);
        x
    }

    pub fn from_terms(group: GroupSpec, terms: &[(i64, i64)]) -> Self {
        let mut x = Self::zero(group);
        for &(e, c) in terms {
            x.add_term(e, c);
        }
        x
    }

    pub fn group(&self) -> GroupSpec {
        self.group
    }

    fn add_term(&mut self, e: i64, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.group.reduce_exp(e);
        match &mut self.repr {
            Repr::Dense(v) => v[e as usize] += c,
            Repr::Laurent { min, coeffs } => {
                if coeffs.is_empty() {
                    *min = e;
                    coeffs.push(c);
                } else if e < *min {
                    let shift = (*min - e) as usize;
                    let mut nv = vec![0; shift];
                    nv.extend_from_slice(coeffs);
                    *coeffs = nv;
                    *min = e;
                    coeffs[0] += c;
                } else {
                    let idx = (e - *min) as usize;
                    if idx >= coeffs.len() {
                        coeffs.resize(idx + 1, 0);
                    }
                    coeffs[idx] += c;
                }
                Self::trim(min, coeffs);
            }
        }
    }

    fn trim(min: &mut i64, coeffs: &mut Vec<i64>) {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        let lead = coeffs.iter().take_while(|&&c| c == 0).count();
        if lead > 0 {
            coeffs.drain(..lead);
            *min += lead as i64;
        }
        if coeffs.is_empty() {
            *min = 0;
        }
    }

    /// Nonzero terms `(exponent, coefficient)` in increasing exponent order.
    pub fn terms(&self) -> Vec<(i64, i64)> {
        match &self.repr {
            Repr::Dense(v) => v
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(e, &c)| (e as i64, c))
                .collect(),
            Repr::Laurent { min, coeffs } => coeffs
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(i, &c)| (min + i as i64, c))
                .collect(),
        }
    }

    /// Coefficient of `g^e`.
    pub fn coeff(&self, e: i64) -> i64 {
        let e = self.group.reduce_exp(e);
        match &self.repr {
            Repr::Dense(v) => v[e as usize],
            Repr::Laurent { min, coeffs } => {
                if e < *min {
                    0
                } else {
                    coeffs.get((e - min) as usize).copied().unwrap_or(0)
                }
            }
        }
    }

    /// Dense coefficient vector for finite groups.
    pub fn dense(&self) -> Option<&[i64]> {
        match &self.repr {
            Repr::Dense(v) => Some(v),
            Repr::Laurent { .. } => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Dense(v) => v.iter().all(|&c| c == 0),
            Repr::Laurent { coeffs, .. } => coeffs.is_empty(),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == Self::one(self.group)
    }

    /// Lowest and highest exponent present (Laurent), or `None` for zero.
    pub fn support(&self) -> Option<(i64, i64)> {
        let t = self.terms();
        Some((t.first()?.0, t.last()?.0))
    }

    /// Largest absolute exponent present.
    pub fn max_abs_exponent(&self) -> i64 {
        self.terms().iter().map(|(e, _)| e.abs()).max().unwrap_or(0)
    }

    fn check(&self, other: &Self) -> Result<(), RingError> {
        if self.group != other.group {
            return Err(RingError::GroupMismatch(self.group.describe(), other.group.describe()));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, RingError> {
        self.check(other)?;
        let mut out = self.clone();
        match (&mut out.repr, &other.repr) {
            (Repr::Dense(a), Repr::Dense(b)) => {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
            }
            _ => {
                for (e, c) in other.terms() {
                    out.add_term(e, c);
                }
            }
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, RingError> {
        self.check(other)?;
        Ok(match (&self.repr, &other.repr) {
            (Repr::Dense(a), Repr::Dense(b)) => {
                let n = a.len();
                let mut v = vec![0i64; n];
                for (i, &x) in a.iter().enumerate() {
                    if x == 0 {
                        continue;
                    }
                    for (j, &y) in b.iter().enumerate() {
                        if y != 0 {
                            let k = (i + j) % n;
                            v[k] += x * y;
                        }
                    }
                }
                GroupRingElt { group: self.group, repr: Repr::Dense(v) }
            }
            (Repr::Laurent { min: m1, coeffs: a }, Repr::Laurent { min: m2, coeffs: b }) => {
                if a.is_empty() || b.is_empty() {
                    return Ok(Self::zero(self.group));
                }
                let mut v = vec![0i64; a.len() + b.len() - 1];
                for (i, &x) in a.iter().enumerate() {
                    if x == 0 {
                        continue;
                    }
                    for (j, &y) in b.iter().enumerate() {
                        v[i + j] += x * y;
                    }
                }
                let mut min = m1 + m2;
                Self::trim(&mut min, &mut v);
                GroupRingElt { group: self.group, repr: Repr::Laurent { min, coeffs: v } }
            }
            _ => unreachable!("representation fixed by group"),
        })
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut out = self.clone();
        match &mut out.repr {
            Repr::Dense(v) => v.iter_mut().for_each(|c| *c *= k),
            Repr::Laurent { min, coeffs } => {
                coeffs.iter_mut().for_each(|c| *c *= k);
                Self::trim(min, coeffs);
            }
        }
        out
    }

    /// Multiply by `g^e`.
    pub fn shift(&self, e: i64) -> Self {
        let mut out = Self::zero(self.group);
        for (f, c) in self.terms() {
            out.add_term(f + e, c);
        }
        out
    }

    /// The `w`-twisted involution `g -> w(g) g^{-1}`.
    pub fn involve(&self) -> Self {
        let mut out = Self::zero(self.group);
        for (e, c) in self.terms() {
            out.add_term(-e, c * self.group.w(e));
        }
        out
    }

    /// Sum of coefficients.
    pub fn augmentation(&self) -> i64 {
        self.terms().iter().map(|(_, c)| c).sum()
    }

    /// Image under the ring map `Z[G] -> Z`, `g -> sign`.
    pub fn evaluate_sign(&self, sign: i64) -> i64 {
        self.terms()
            .iter()
            .map(|&(e, c)| if sign == -1 && e.rem_euclid(2) == 1 { -c } else { c })
            .sum()
    }

    pub fn to_json(&self) -> ElementJson {
        ElementJson { ring: self.group.to_json(), terms: self.terms() }
    }

    pub fn from_json(j: &ElementJson) -> Result<Self, RingError> {
        let g = GroupSpec::from_json(&j.ring)?;
        Ok(Self::from_terms(g, &j.terms))
    }
}

impl fmt::Display for GroupRingElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        let var = match self.group.kind() {
            GroupKind::InfiniteCyclic => "t",
            _ => "g",
        };
        for (i, (e, c)) in terms.iter().enumerate() {
            let (sign, a) = if *c < 0 { ("-", -c) } else { ("+", *c) };
            if i == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            match (e, a) {
                (0, a) => write!(f, "{a}")?,
                (e, 1) if *e == 1 => write!(f, "{var}")?,
                (e, 1) => write!(f, "{var}^{e}")?,
                (e, a) if *e == 1 => write!(f, "{a}{var}")?,
                (e, a) => write!(f, "{a}{var}^{e}")?,
            }
        }
        Ok(())
    }
}

impl Add for &GroupRingElt {
    type Output = GroupRingElt;
    fn add(self, rhs: &GroupRingElt) -> GroupRingElt {
        self.try_add(rhs).expect("group ring elements over different groups")
    }
}

impl Sub for &GroupRingElt {
    type Output = GroupRingElt;
    fn sub(self, rhs: &GroupRingElt) -> GroupRingElt {
        self.try_add(&rhs.scale(-1)).expect("group ring elements over different groups")
    }
}

impl Mul for &GroupRingElt {
    type Output = GroupRingElt;
    fn mul(self, rhs: &GroupRingElt) -> GroupRingElt {
        self.try_mul(rhs).expect("group ring elements over different groups")
    }
}

impl Neg for &GroupRingElt {
    type Output = GroupRingElt;
    fn neg(self) -> GroupRingElt {
        self.scale(-1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementJson {
    pub ring: RingSpecJson,
    pub terms: Vec<(i64, i64)>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c5() -> GroupSpec {
        GroupSpec::cyclic(5).unwrap()
    }

    #[test]
    fn cyclic_unit_times_inverse() {
        // (g + g^4 - 1)(g^2 + g^3 - 1) = 1 in Z[C5]
        let u = GroupRingElt::from_terms(c5(), &[(1, 1), (4, 1), (0, -1)]);
        let v = GroupRingElt::from_terms(c5(), &[(2, 1), (3, 1), (0, -1)]);
        assert!((&u * &v).is_one());
    }

    #[test]
    fn laurent_product_and_trim() {
        let g = GroupSpec::infinite_cyclic();
        let a = GroupRingElt::from_terms(g, &[(-1, 1), (0, 1)]);
        let b = GroupRingElt::from_terms(g, &[(-1, 1), (0, -1)]);
        assert_eq!((&a * &b).terms(), vec![(-2, 1), (0, -1)]);
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn mismatched_groups_error() {
        let a = GroupRingElt::one(c5());
        let b = GroupRingElt::one(GroupSpec::infinite_cyclic());
        assert!(a.try_mul(&b).is_err());
        assert!(a.try_add(&b).is_err());
    }

    #[test]
    fn twisted_involution() {
        let g = GroupSpec::infinite_cyclic().with_character(-1).unwrap();
        let t = GroupRingElt::monomial(g, 1, 1);
        assert_eq!(t.involve().terms(), vec![(-1, -1)]);
        let c4 = GroupSpec::cyclic(4).unwrap().with_character(-1).unwrap();
        let x = GroupRingElt::from_terms(c4, &[(1, 2), (2, 3)]);
        assert_eq!(x.involve().terms(), vec![(2, 3), (3, -2)]);
    }

    fn arb_elt(g: GroupSpec) -> impl Strategy<Value = GroupRingElt> {
        prop::collection::vec((-4i64..5, -3i64..4), 0..5)
            .prop_map(move |t| GroupRingElt::from_terms(g, &t))
    }

    fn groups() -> Vec<GroupSpec> {
        vec![
            GroupSpec::trivial(),
            GroupSpec::cyclic(5).unwrap(),
            GroupSpec::cyclic(4).unwrap().with_character(-1).unwrap(),
            GroupSpec::infinite_cyclic(),
            GroupSpec::infinite_cyclic().with_character(-1).unwrap(),
        ]
    }

    proptest! {
        #[test]
        fn ring_axioms((a, b, c) in (0usize..5).prop_flat_map(|gi| {
            let g = groups()[gi];
            (arb_elt(g), arb_elt(g), arb_elt(g))
        })) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!((&a * &b).involve(), &a.involve() * &b.involve());
            prop_assert_eq!(a.involve().involve(), a.clone());
            prop_assert_eq!((&a * &b).augmentation(), a.augmentation() * b.augmentation());
        }
    }
}
