use std::collections::BTreeMap;

use super::tower::{MultiTower, Periodicity, Tower};
use super::TowerError;
use crate::chains::{induced_map, ChainError, IntComplex};
use crate::coefficients::IntMatrix;

/// A tower of integer chain complexes `C_0 <- C_1 <- ...`.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexTower {
    pub complexes: Vec<IntComplex>,
    /// `maps[k][deg]: C_{k+1} -> C_k` in degree `deg`; absent degrees are zero.
    pub maps: Vec<BTreeMap<i64, IntMatrix>>,
    /// `(preperiod, period)`: stage `preperiod + period` repeats stage `preperiod`.
    pub periodicity: Option<(usize, usize)>,
}

impl ComplexTower {
    fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        let lo = self.complexes.iter().map(|c| c.lo()).min().unwrap_or(0);
        let hi = self.complexes.iter().map(|c| c.hi()).max().unwrap_or(-1);
        lo..=hi
    }

    fn map_at(&self, k: usize, deg: i64) -> IntMatrix {
        let (s, t) = (&self.complexes[k + 1], &self.complexes[k]);
        self.maps[k].get(&deg).cloned().unwrap_or_else(|| IntMatrix::zeros(t.rank(deg), s.rank(deg)))
    }

    pub fn validate(&self) -> Result<(), TowerError> {
        if self.complexes.is_empty() || self.maps.len() + 1 != self.complexes.len() {
            return Err(TowerError::Invalid("need n complexes and n - 1 maps".into()));
        }
        for c in &self.complexes {
            c.validate()?;
        }
        for k in 0..self.maps.len() {
            let (s, t) = (&self.complexes[k + 1], &self.complexes[k]);
            for deg in self.degrees() {
                let f = self.map_at(k, deg);
                if (f.rows(), f.cols()) != (t.rank(deg), s.rank(deg)) {
                    return Err(ChainError::Shape(format!("map {k} in degree {deg}")).into());
                }
                let lhs = t.boundary(deg).mul(&f);
                let rhs = self.map_at(k, deg - 1).mul(&s.boundary(deg));
                if lhs != rhs {
                    return Err(ChainError::NotAChainMap { degree: deg }.into());
                }
            }
        }
        if let Some((pre, p)) = self.periodicity {
            if p == 0 || pre + p >= self.complexes.len() {
                return Err(TowerError::Periodicity("stage preperiod + period must be stored".into()));
            }
            if self.complexes[pre + p] != self.complexes[pre] {
                return Err(TowerError::Periodicity(format!("complex {} differs from complex {pre}", pre + p)));
            }
        }
        Ok(())
    }
}

/// Levelwise homology: one tower of groups per degree.
pub fn tower_homology(ct: &ComplexTower) -> Result<BTreeMap<i64, MultiTower>, TowerError> {
    ct.validate()?;
    let mut out = BTreeMap::new();
    for deg in ct.degrees() {
        let hs: Vec<_> = ct.complexes.iter().map(|c| c.homology(deg)).collect();
        let mut maps = Vec::new();
        for k in 0..ct.maps.len() {
            maps.push(induced_map(&hs[k + 1], &hs[k], &ct.map_at(k, deg))?);
        }
        let periodicity = ct.periodicity.map(|(pre, p)| Periodicity {
            preperiod: pre,
            period: p,
            iso: IntMatrix::identity(hs[pre].group.generators()),
        });
        let stages = hs.into_iter().map(|h| h.group).collect();
        out.insert(deg, MultiTower::single(Tower::new(stages, maps, periodicity)?));
    }
    Ok(out)
}
