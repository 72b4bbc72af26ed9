use super::ChainError;
use crate::coefficients::{FgAbelian, IntMatrix, Snf};

/// Integer chain complex; the working form for homology computations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntComplex {
    lo: i64,
    ranks: Vec<usize>,
    boundaries: Vec<IntMatrix>,
}

impl IntComplex {
    pub fn new(lo: i64, ranks: Vec<usize>, boundaries: Vec<IntMatrix>) -> Self {
        assert_eq!(boundaries.len(), ranks.len().saturating_sub(1));
        for (i, b) in boundaries.iter().enumerate() {
            assert_eq!((b.rows(), b.cols()), (ranks[i], ranks[i + 1]), "boundary shape in degree {}", lo + i as i64 + 1);
        }
        IntComplex { lo, ranks, boundaries }
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.ranks.len() as i64 - 1
    }

    pub fn rank(&self, k: i64) -> usize {
        if k < self.lo || k > self.hi() {
            0
        } else {
            self.ranks[(k - self.lo) as usize]
        }
    }

    pub fn boundary(&self, k: i64) -> IntMatrix {
        if k > self.lo && k <= self.hi() {
            self.boundaries[(k - self.lo - 1) as usize].clone()
        } else {
            IntMatrix::zeros(self.rank(k - 1), self.rank(k))
        }
    }

    pub fn validate(&self) -> Result<(), ChainError> {
        for k in self.lo + 2..=self.hi() {
            if !self.boundary(k - 1).mul(&self.boundary(k)).is_zero() {
                return Err(ChainError::NotAComplex { degree: k });
            }
        }
        Ok(())
    }

    /// Cochain complex as a chain complex: degree `-k` holds `C^k`, boundary is
    /// the transpose, so `H^k(C) = H_{-k}` of the result.
    pub fn cochain_complex(&self) -> IntComplex {
        if self.ranks.is_empty() {
            return IntComplex::new(0, vec![], vec![]);
        }
        let lo = -self.hi();
        let ranks: Vec<usize> = (lo..=-self.lo).map(|j| self.rank(-j)).collect();
        let boundaries = (lo + 1..=-self.lo).map(|j| self.boundary(-j + 1).transpose()).collect();
        IntComplex::new(lo, ranks, boundaries)
    }

    pub fn homology(&self, k: i64) -> HomologyGroup {
        HomologyGroup::compute(k, &self.boundary(k), &self.boundary(k + 1))
    }

    pub fn all_homology(&self) -> Vec<HomologyGroup> {
        (self.lo..=self.hi()).map(|k| self.homology(k)).collect()
    }

    pub fn is_acyclic(&self) -> Option<i64> {
        (self.lo..=self.hi()).find(|&k| !self.homology(k).group.is_zero())
    }
}

/// `H_k` of an integer complex with explicit generating cycles and a
/// classifier sending cycles to coordinates.
#[derive(Clone, Debug)]
pub struct HomologyGroup {
    pub degree: i64,
    /// Presented on the canonical generators: `Z/d` for each torsion
    /// coordinate, `Z` for each free coordinate.
    pub group: FgAbelian,
    /// One cycle per generator.
    pub generators: Vec<Vec<i64>>,
    boundary_rank: usize,
    v_inv: IntMatrix,
    p: IntMatrix,
    factors: Vec<i64>,
}

impl HomologyGroup {
    /// Homology of `C_{k+1} --d_next--> C_k --d_k--> C_{k-1}` at the middle.
    pub fn compute(degree: i64, d_k: &IntMatrix, d_next: &IntMatrix) -> HomologyGroup {
        let n = d_k.cols();
        assert_eq!(d_next.rows(), n);
        let s = Snf::compute(d_k);
        let r = s.rank();
        let z = n - r;
        let kernel = s.kernel_basis();
        let b = s.v_inv.mul(d_next).submatrix(r..n, 0..d_next.cols());
        let sb = Snf::compute(&b);
        let mut factors = vec![0i64; z];
        for (i, &d) in sb.diagonal.iter().enumerate() {
            factors[i] = d;
        }
        let mut generators = Vec::new();
        let mut orders = Vec::new();
        for (i, &d) in factors.iter().enumerate() {
            if d != 1 {
                let y = sb.u_inv.column(i);
                generators.push(kernel.mul_vec(&y));
                orders.push(d);
            }
        }
        HomologyGroup {
            degree,
            group: FgAbelian::from_cyclic_orders(&orders),
            generators,
            boundary_rank: r,
            v_inv: s.v_inv,
            p: sb.u,
            factors,
        }
    }

    pub fn rank(&self) -> usize {
        self.group.free_rank()
    }

    pub fn torsion(&self) -> Vec<i64> {
        self.group.invariant_factors()
    }

    pub fn is_zero(&self) -> bool {
        self.group.is_zero()
    }

    /// Orders of the generators (0 for infinite order).
    pub fn generator_orders(&self) -> Vec<i64> {
        self.factors.iter().copied().filter(|&d| d != 1).collect()
    }

    /// Coordinates of the class of a cycle, torsion entries reduced.
    pub fn classify(&self, x: &[i64]) -> Result<Vec<i64>, ChainError> {
        let y = self.v_inv.mul_vec(x);
        if y[..self.boundary_rank].iter().any(|&v| v != 0) {
            return Err(ChainError::NotACycle { degree: self.degree });
        }
        let c = self.p.mul_vec(&y[self.boundary_rank..]);
        Ok(c.iter()
            .zip(&self.factors)
            .filter(|(_, &d)| d != 1)
            .map(|(&v, &d)| if d == 0 { v } else { v.rem_euclid(d) })
            .collect())
    }

    pub fn is_cycle(&self, x: &[i64]) -> bool {
        self.v_inv.mul_vec(x)[..self.boundary_rank].iter().all(|&v| v == 0)
    }

    /// Whether a cycle is a boundary.
    pub fn is_boundary(&self, x: &[i64]) -> Result<bool, ChainError> {
        Ok(self.classify(x)?.iter().all(|&v| v == 0))
    }

    /// Cycle representing the given coordinates.
    pub fn cycle_of(&self, coords: &[i64]) -> Vec<i64> {
        let n = self.v_inv.cols();
        let mut out = vec![0i64; n];
        for (g, &c) in self.generators.iter().zip(coords) {
            for (o, &v) in out.iter_mut().zip(g) {
                *o += c * v;
            }
        }
        out
    }

    pub fn describe(&self) -> String {
        self.group.to_string()
    }
}

/// Matrix of the map on homology induced by a chain-level matrix `f`.
pub fn induced_map(src: &HomologyGroup, tgt: &HomologyGroup, f: &IntMatrix) -> Result<IntMatrix, ChainError> {
    let mut cols = Vec::new();
    for g in &src.generators {
        cols.push(tgt.classify(&f.mul_vec(g))?);
    }
    Ok(IntMatrix::from_columns(tgt.generators.len(), &cols))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rp2_cellular() -> IntComplex {
        // one cell in each degree, d_2 = 2, d_1 = 0
        IntComplex::new(0, vec![1, 1, 1], vec![IntMatrix::zeros(1, 1), IntMatrix::from_rows(1, 1, &[vec![2]])])
    }

    #[test]
    fn rp2_homology() {
        let c = rp2_cellular();
        let h: Vec<String> = c.all_homology().iter().map(|h| h.describe()).collect();
        assert_eq!(h, vec!["Z", "Z/2", "0"]);
        let h1 = c.homology(1);
        assert_eq!(h1.classify(&[1]).unwrap(), vec![1]);
        assert_eq!(h1.classify(&[2]).unwrap(), vec![0]);
        let co: Vec<String> = c.cochain_complex().all_homology().iter().rev().map(|h| h.describe()).collect();
        assert_eq!(co, vec!["Z", "0", "Z/2"]);
    }

    #[test]
    fn not_a_cycle() {
        let c = IntComplex::new(0, vec![2, 1], vec![IntMatrix::from_rows(2, 1, &[vec![-1], vec![1]])]);
        assert!(matches!(c.homology(1).classify(&[1]), Err(ChainError::NotACycle { .. })));
        assert_eq!(c.homology(0).describe(), "Z");
    }
}
