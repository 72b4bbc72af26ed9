use serde::{Deserialize, Serialize};

use super::TowerError;
use crate::coefficients::{invert_iso, is_homomorphism, FgAbelian, IntMatrix, PresentationJson};

/// Eventual periodicity: stage `preperiod + period` is identified with stage
/// `preperiod` through `iso`, and the tower continues periodically.
#[derive(Clone, Debug, PartialEq)]
pub struct Periodicity {
    pub preperiod: usize,
    pub period: usize,
    /// `G_{preperiod + period} -> G_preperiod`.
    pub iso: IntMatrix,
}

/// `G_0 <- G_1 <- ... <- G_N`; `maps[k]: G_{k+1} -> G_k` in generator coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct Tower {
    stages: Vec<FgAbelian>,
    maps: Vec<IntMatrix>,
    periodicity: Option<Periodicity>,
    /// Periodic case: `G_pre -> G_{pre+period-1}`, the last map of a period.
    wrap: Option<IntMatrix>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Multiplicity {
    Finite(u64),
    Omega,
}

/// Finitely many classes of base points, each with its tower.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiTower {
    pub entries: Vec<(Tower, Multiplicity)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MultiplicityJson {
    Finite(u64),
    Omega(String),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TowerJson {
    pub stages: Vec<PresentationJson>,
    pub maps: Vec<Vec<Vec<i64>>>,
    pub period: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preperiod: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub iso: Option<Vec<Vec<i64>>>,
    #[serde(default = "omega")]
    pub multiplicity: MultiplicityJson,
}

fn omega() -> MultiplicityJson {
    MultiplicityJson::Omega("omega".into())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MultiTowerJson {
    pub entries: Vec<TowerJson>,
}

fn shape_matrix(rows: usize, cols: usize, data: &[Vec<i64>], what: &str) -> Result<IntMatrix, TowerError> {
    if data.len() != rows || data.iter().any(|r| r.len() != cols) {
        return Err(TowerError::Invalid(format!("{what} must be {rows}x{cols}")));
    }
    Ok(IntMatrix::from_rows(rows, cols, data))
}

impl Tower {
    pub fn new(stages: Vec<FgAbelian>, maps: Vec<IntMatrix>, periodicity: Option<Periodicity>) -> Result<Tower, TowerError> {
        if stages.is_empty() {
            return Err(TowerError::Invalid("a tower needs at least one stage".into()));
        }
        if maps.len() + 1 != stages.len() {
            return Err(TowerError::Invalid(format!("{} stages need {} maps, got {}", stages.len(), stages.len() - 1, maps.len())));
        }
        for (k, f) in maps.iter().enumerate() {
            if f.rows() != stages[k].generators() || f.cols() != stages[k + 1].generators() {
                return Err(TowerError::Invalid(format!("map {k} has the wrong shape")));
            }
            if !is_homomorphism(&stages[k + 1], &stages[k], f) {
                return Err(TowerError::Invalid(format!("map G_{} -> G_{k} does not respect relations", k + 1)));
            }
        }
        let mut t = Tower { stages, maps, periodicity: None, wrap: None };
        if let Some(p) = periodicity {
            t.set_periodicity(p)?;
        }
        Ok(t)
    }

    /// Constant tower `G <- G <- ...` with the given self-map.
    pub fn constant(g: FgAbelian, f: IntMatrix) -> Result<Tower, TowerError> {
        let n = g.generators();
        Tower::new(vec![g.clone(), g], vec![f], Some(Periodicity { preperiod: 0, period: 1, iso: IntMatrix::identity(n) }))
    }

    fn set_periodicity(&mut self, p: Periodicity) -> Result<(), TowerError> {
        let end = p.preperiod + p.period;
        if p.period == 0 {
            return Err(TowerError::Periodicity("period must be positive".into()));
        }
        if end >= self.stages.len() {
            return Err(TowerError::Periodicity(format!("stage {end} is not stored")));
        }
        let (a, b) = (&self.stages[end], &self.stages[p.preperiod]);
        if p.iso.rows() != b.generators() || p.iso.cols() != a.generators() || !is_homomorphism(a, b, &p.iso) {
            return Err(TowerError::Periodicity(format!("iso G_{end} -> G_{} is not a homomorphism", p.preperiod)));
        }
        let inv = invert_iso(a, b, &p.iso).map_err(|e| TowerError::Periodicity(format!("G_{end} -> G_{}: {e}", p.preperiod)))?;
        // stages stored past one period must agree with the periodic continuation
        for k in end + 1..self.stages.len() {
            let j = k - p.period;
            let identity = p.iso == IntMatrix::identity(p.iso.rows());
            if !identity || self.stages[k] != self.stages[j] || self.maps[k - 1] != self.maps[j - 1] {
                return Err(TowerError::Periodicity(format!("stage {k} does not repeat stage {j}")));
            }
        }
        self.wrap = Some(self.maps[end - 1].mul(&inv));
        self.periodicity = Some(p);
        Ok(())
    }

    pub fn periodicity(&self) -> Option<&Periodicity> {
        self.periodicity.as_ref()
    }

    pub fn is_periodic(&self) -> bool {
        self.periodicity.is_some()
    }

    /// Number of stored stages.
    pub fn stored(&self) -> usize {
        self.stages.len()
    }

    fn reduce(&self, k: usize) -> Option<usize> {
        match &self.periodicity {
            Some(p) if k >= p.preperiod => Some(p.preperiod + (k - p.preperiod) % p.period),
            Some(_) => Some(k),
            None => (k < self.stages.len()).then_some(k),
        }
    }

    /// `G_k`, continuing periodically; `None` past the data of a non-periodic tower.
    pub fn stage(&self, k: usize) -> Option<&FgAbelian> {
        self.reduce(k).map(|i| &self.stages[i])
    }

    /// `G_{k+1} -> G_k`.
    pub fn map(&self, k: usize) -> Option<IntMatrix> {
        match &self.periodicity {
            Some(p) if k >= p.preperiod => {
                let r = (k - p.preperiod) % p.period;
                if r == p.period - 1 {
                    self.wrap.clone()
                } else {
                    Some(self.maps[p.preperiod + r].clone())
                }
            }
            _ => self.maps.get(k).cloned(),
        }
    }

    /// Composite `G_k -> G_j` for `k >= j`, columns kept in canonical form.
    pub fn composite(&self, k: usize, j: usize) -> Option<IntMatrix> {
        assert!(k >= j);
        let gj = self.stage(j)?;
        let mut acc = IntMatrix::identity(self.stage(k)?.generators());
        for i in (j..k).rev() {
            acc = self.map(i)?.mul(&acc);
            acc = canonical_columns(self.stage(i)?, &acc);
        }
        debug_assert_eq!(acc.rows(), gj.generators());
        Some(acc)
    }

    pub fn to_json(&self, m: Multiplicity) -> TowerJson {
        TowerJson {
            stages: self.stages.iter().map(|g| g.to_json()).collect(),
            maps: self.maps.iter().map(|f| f.to_rows()).collect(),
            period: self.periodicity.as_ref().map(|p| p.period),
            preperiod: self.periodicity.as_ref().map(|p| p.preperiod),
            iso: self.periodicity.as_ref().map(|p| p.iso.to_rows()),
            multiplicity: match m {
                Multiplicity::Finite(n) => MultiplicityJson::Finite(n),
                Multiplicity::Omega => omega(),
            },
        }
    }

    pub fn from_json(j: &TowerJson) -> Result<(Tower, Multiplicity), TowerError> {
        let stages = j.stages.iter().map(FgAbelian::from_json).collect::<Result<Vec<_>, _>>()?;
        if j.maps.len() + 1 != stages.len() {
            return Err(TowerError::Invalid(format!("{} stages need {} maps", stages.len(), stages.len().saturating_sub(1))));
        }
        let maps = j
            .maps
            .iter()
            .enumerate()
            .map(|(k, m)| shape_matrix(stages[k].generators(), stages[k + 1].generators(), m, &format!("map {k}")))
            .collect::<Result<Vec<_>, _>>()?;
        let periodicity = match j.period {
            None => None,
            Some(period) => {
                let last = stages.len() - 1;
                let preperiod = j.preperiod.unwrap_or(last.saturating_sub(period));
                let end = preperiod + period;
                if end > last {
                    return Err(TowerError::Periodicity(format!("stage {end} is not stored")));
                }
                let iso = match &j.iso {
                    Some(rows) => shape_matrix(stages[preperiod].generators(), stages[end].generators(), rows, "iso")?,
                    None => {
                        if stages[end] != stages[preperiod] {
                            return Err(TowerError::Periodicity(format!(
                                "stage {end} differs from stage {preperiod}; give an explicit iso"
                            )));
                        }
                        IntMatrix::identity(stages[end].generators())
                    }
                };
                Some(Periodicity { preperiod, period, iso })
            }
        };
        let mult = match &j.multiplicity {
            MultiplicityJson::Finite(0) => return Err(TowerError::Invalid("multiplicity must be positive".into())),
            MultiplicityJson::Finite(n) => Multiplicity::Finite(*n),
            MultiplicityJson::Omega(s) if s == "omega" => Multiplicity::Omega,
            MultiplicityJson::Omega(s) => return Err(TowerError::Invalid(format!("unknown multiplicity {s:?}"))),
        };
        Ok((Tower::new(stages, maps, periodicity)?, mult))
    }
}

/// Replace each column by the canonical representative of its class.
pub(crate) fn canonical_columns(g: &FgAbelian, m: &IntMatrix) -> IntMatrix {
    let cols: Vec<Vec<i64>> = (0..m.cols()).map(|j| g.from_coords(&g.coords(&m.column(j)))).collect();
    IntMatrix::from_columns(g.generators(), &cols)
}

impl MultiTower {
    pub fn new(entries: Vec<(Tower, Multiplicity)>) -> Result<MultiTower, TowerError> {
        if entries.is_empty() {
            return Err(TowerError::Invalid("a multitower needs at least one entry".into()));
        }
        if entries.iter().any(|(_, m)| *m == Multiplicity::Finite(0)) {
            return Err(TowerError::Invalid("multiplicities must be positive".into()));
        }
        Ok(MultiTower { entries })
    }

    pub fn single(t: Tower) -> MultiTower {
        MultiTower { entries: vec![(t, Multiplicity::Omega)] }
    }

    pub fn to_json(&self) -> MultiTowerJson {
        MultiTowerJson { entries: self.entries.iter().map(|(t, m)| t.to_json(*m)).collect() }
    }

    pub fn from_json(j: &MultiTowerJson) -> Result<MultiTower, TowerError> {
        MultiTower::new(j.entries.iter().map(Tower::from_json).collect::<Result<Vec<_>, _>>()?)
    }
}
