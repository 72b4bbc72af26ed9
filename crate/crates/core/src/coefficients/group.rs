use serde::{Deserialize, Serialize};

use super::RingError;

/// The group underlying a group ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupKind {
    Trivial,
    Cyclic(u32),
    InfiniteCyclic,
}

/// A group together with an orientation character `w: G -> {+1,-1}`,
/// recorded by its value on the generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    kind: GroupKind,
    character: i8,
}

impl GroupSpec {
    pub fn trivial() -> Self {
        GroupSpec { kind: GroupKind::Trivial, character: 1 }
    }

    pub fn cyclic(n: u32) -> Result<Self, RingError> {
        if n == 0 {
            return Err(RingError::InvalidGroup("cyclic group of order 0".into()));
        }
        if n == 1 {
            return Ok(Self::trivial());
        }
        Ok(GroupSpec { kind: GroupKind::Cyclic(n), character: 1 })
    }

    pub fn infinite_cyclic() -> Self {
        GroupSpec { kind: GroupKind::InfiniteCyclic, character: 1 }
    }

    pub fn with_character(self, sign: i8) -> Result<Self, RingError> {
        match (self.kind, sign) {
            (_, 1) => Ok(GroupSpec { character: 1, ..self }),
            (GroupKind::Trivial, -1) => {
                Err(RingError::InvalidGroup("trivial group has no nontrivial character".into()))
            }
            (GroupKind::Cyclic(n), -1) if n % 2 == 1 => Err(RingError::InvalidGroup(format!(
                "cyclic group of odd order {n} has no nontrivial character"
            ))),
            (_, -1) => Ok(GroupSpec { character: -1, ..self }),
            (_, s) => Err(RingError::InvalidGroup(format!("character value {s} is not +1 or -1"))),
        }
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn character(&self) -> i8 {
        self.character
    }

    pub fn is_trivial(&self) -> bool {
        self.kind == GroupKind::Trivial
    }

    /// Order of the group, `None` when infinite.
    pub fn order(&self) -> Option<usize> {
        match self.kind {
            GroupKind::Trivial => Some(1),
            GroupKind::Cyclic(n) => Some(n as usize),
            GroupKind::InfiniteCyclic => None,
        }
    }

    /// Reduce an exponent of the generator to its canonical representative.
    pub fn reduce_exp(&self, e: i64) -> i64 {
        match self.kind {
            GroupKind::Trivial => 0,
            GroupKind::Cyclic(n) => e.rem_euclid(n as i64),
            GroupKind::InfiniteCyclic => e,
        }
    }

    /// `w(g^e)`.
    pub fn w(&self, e: i64) -> i64 {
        if self.character == -1 && e.rem_euclid(2) == 1 {
            -1
        } else {
            1
        }
    }

    /// Same group with the trivial character.
    pub fn untwisted(&self) -> Self {
        GroupSpec { kind: self.kind, character: 1 }
    }

    pub fn same_group(&self, other: &GroupSpec) -> bool {
        self.kind == other.kind
    }

    pub fn to_json(&self) -> RingSpecJson {
        let (kind, n) = match self.kind {
            GroupKind::Trivial => ("trivial", None),
            GroupKind::Cyclic(n) => ("cyclic", Some(n)),
            GroupKind::InfiniteCyclic => ("infinite-cyclic", None),
        };
        let character = if self.kind == GroupKind::Trivial { vec![] } else { vec![self.character] };
        RingSpecJson { kind: kind.to_string(), n, character }
    }

    pub fn from_json(j: &RingSpecJson) -> Result<Self, RingError> {
        let base = match j.kind.as_str() {
            "trivial" => Self::trivial(),
            "cyclic" => {
                let n = j.n.ok_or_else(|| RingError::InvalidGroup("cyclic ring needs n".into()))?;
                Self::cyclic(n)?
            }
            "infinite-cyclic" | "infinite_cyclic" | "laurent" => Self::infinite_cyclic(),
            other => return Err(RingError::InvalidGroup(format!("unknown ring kind '{other}'"))),
        };
        match j.character.as_slice() {
            [] => Ok(base),
            [s] => base.with_character(*s),
            _ => Err(RingError::InvalidGroup("character must list one value per generator".into())),
        }
    }

    pub fn describe(&self) -> String {
        let g = match self.kind {
            GroupKind::Trivial => "Z".to_string(),
            GroupKind::Cyclic(n) => format!("Z[C{n}]"),
            GroupKind::InfiniteCyclic => "Z[t,t^-1]".to_string(),
        };
        if self.character == -1 {
            format!("{g} (w(t)=-1)")
        } else {
            g
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingSpecJson {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    #[serde(default)]
    pub character: Vec<i8>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odd_cyclic_rejects_sign_character() {
        assert!(GroupSpec::cyclic(5).unwrap().with_character(-1).is_err());
        assert!(GroupSpec::cyclic(4).unwrap().with_character(-1).is_ok());
        assert!(GroupSpec::trivial().with_character(-1).is_err());
    }

    #[test]
    fn json_roundtrip() {
        for g in [
            GroupSpec::trivial(),
            GroupSpec::cyclic(6).unwrap().with_character(-1).unwrap(),
            GroupSpec::infinite_cyclic().with_character(-1).unwrap(),
        ] {
            assert_eq!(GroupSpec::from_json(&g.to_json()).unwrap(), g);
        }
    }
}
