use super::element::GroupRingElt;
use super::group::{GroupKind, GroupSpec};
use super::matrix::IntMatrix;
use super::snf::Snf;
use super::RingError;

/// Dense matrix over a group ring, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingMatrix {
    group: GroupSpec,
    rows: usize,
    cols: usize,
    data: Vec<GroupRingElt>,
}

impl RingMatrix {
    pub fn zeros(group: GroupSpec, rows: usize, cols: usize) -> Self {
        RingMatrix { group, rows, cols, data: vec![GroupRingElt::zero(group); rows * cols] }
    }

    pub fn identity(group: GroupSpec, n: usize) -> Self {
        let mut m = Self::zeros(group, n, n);
        for i in 0..n {
            m.set(i, i, GroupRingElt::one(group));
        }
        m
    }

    pub fn from_int(group: GroupSpec, m: &IntMatrix) -> Self {
        let mut r = Self::zeros(group, m.rows(), m.cols());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                if m[(i, j)] != 0 {
                    r.set(i, j, GroupRingElt::constant(group, m[(i, j)]));
                }
            }
        }
        r
    }

    pub fn from_rows(group: GroupSpec, rows: usize, cols: usize, entries: Vec<Vec<GroupRingElt>>) -> Result<Self, RingError> {
        if entries.len() != rows || entries.iter().any(|r| r.len() != cols) {
            return Err(RingError::Shape(format!("entries do not match shape {rows}x{cols}")));
        }
        let data: Vec<GroupRingElt> = entries.into_iter().flatten().collect();
        if let Some(bad) = data.iter().find(|x| x.group() != group) {
            return Err(RingError::GroupMismatch(group.describe(), bad.group().describe()));
        }
        Ok(RingMatrix { group, rows, cols, data })
    }

    pub fn group(&self) -> GroupSpec {
        self.group
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &GroupRingElt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: GroupRingElt) {
        debug_assert_eq!(x.group(), self.group);
        self.data[i * self.cols + j] = x;
    }

    pub fn to_rows(&self) -> Vec<Vec<GroupRingElt>> {
        (0..self.rows).map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn mul(&self, other: &RingMatrix) -> RingMatrix {
        assert_eq!(self.cols, other.rows, "ring matrix shapes {}x{} * {}x{}", self.rows, self.cols, other.rows, other.cols);
        assert_eq!(self.group, other.group);
        let mut out = Self::zeros(self.group, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let s = out.get(i, j) + &(a * b);
                        out.set(i, j, s);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &RingMatrix) -> RingMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        RingMatrix { group: self.group, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &RingMatrix) -> RingMatrix {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, k: i64) -> RingMatrix {
        self.map(|x| x.scale(k))
    }

    pub fn map(&self, f: impl Fn(&GroupRingElt) -> GroupRingElt) -> RingMatrix {
        RingMatrix { group: self.group, rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> RingMatrix {
        let mut t = Self::zeros(self.group, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Transpose with the involution applied entrywise.
    pub fn conjugate_transpose(&self) -> RingMatrix {
        self.transpose().map(|x| x.involve())
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &RingMatrix) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(r0 + i, c0 + j, b.get(i, j).clone());
            }
        }
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> RingMatrix {
        let mut m = Self::zeros(self.group, rows.len(), cols.len());
        for (a, i) in rows.clone().enumerate() {
            for (b, j) in cols.clone().enumerate() {
                m.set(a, b, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn block_diag(&self, other: &RingMatrix) -> RingMatrix {
        let mut m = Self::zeros(self.group, self.rows + other.rows, self.cols + other.cols);
        m.set_block(0, 0, self);
        m.set_block(self.rows, self.cols, other);
        m
    }

    /// Largest absolute exponent among entries.
    pub fn max_abs_exponent(&self) -> i64 {
        self.data.iter().map(|x| x.max_abs_exponent()).max().unwrap_or(0)
    }

    /// Determinant: elimination on trivial-unit pivots, then the division-free
    /// Berkowitz recursion on what remains.
    pub fn det(&self) -> Result<GroupRingElt, RingError> {
        if self.rows != self.cols {
            return Err(RingError::Shape(format!("determinant of non-square {}x{} matrix", self.rows, self.cols)));
        }
        let (factor, rest) = self.eliminate_unit_pivots();
        Ok(&factor * &rest.berkowitz())
    }

    /// `(f, M')` with `det M = f * det M'`, pivoting on entries `+-g`
    /// with the fewest other nonzeros in their row and column.
    fn eliminate_unit_pivots(&self) -> (GroupRingElt, RingMatrix) {
        let g = self.group;
        let mut rows: Vec<Vec<GroupRingElt>> = self.to_rows();
        let mut factor = GroupRingElt::one(g);
        loop {
            let n = rows.len();
            let mut col_nnz = vec![0usize; n];
            let mut row_nnz = vec![0usize; n];
            for (i, r) in rows.iter().enumerate() {
                for (j, x) in r.iter().enumerate() {
                    if !x.is_zero() {
                        col_nnz[j] += 1;
                        row_nnz[i] += 1;
                    }
                }
            }
            let mut best: Option<(usize, usize, usize)> = None;
            for (i, r) in rows.iter().enumerate() {
                for (j, x) in r.iter().enumerate() {
                    let t = x.terms();
                    if t.len() == 1 && t[0].1.abs() == 1 {
                        let cost = (row_nnz[i] - 1) * (col_nnz[j] - 1);
                        if best.map_or(true, |(c, _, _)| cost < c) {
                            best = Some((cost, i, j));
                        }
                    }
                }
            }
            let Some((_, r, c)) = best else { break };
            let p = rows[r][c].clone();
            let (e, sign) = p.terms()[0];
            let p_inv = GroupRingElt::monomial(g, -e, sign);
            let pivot_row = rows[r].clone();
            for i in 0..n {
                if i == r || rows[i][c].is_zero() {
                    continue;
                }
                let k = &rows[i][c] * &p_inv;
                for j in 0..n {
                    if !pivot_row[j].is_zero() {
                        rows[i][j] = &rows[i][j] - &(&k * &pivot_row[j]);
                    }
                }
            }
            let s = if (r + c) % 2 == 0 { 1 } else { -1 };
            factor = &factor * &p.scale(s);
            rows.remove(r);
            for row in rows.iter_mut() {
                row.remove(c);
            }
        }
        let n = rows.len();
        let mut m = RingMatrix::zeros(g, n, n);
        for (i, r) in rows.into_iter().enumerate() {
            for (j, x) in r.into_iter().enumerate() {
                m.set(i, j, x);
            }
        }
        (factor, m)
    }

    fn berkowitz(&self) -> GroupRingElt {
        let n = self.rows;
        let g = self.group;
        if n == 0 {
            return GroupRingElt::one(g);
        }
        // characteristic polynomial coefficients of the trailing block, highest degree first
        let mut v = vec![GroupRingElt::one(g), -self.get(n - 1, n - 1)];
        for k in (0..n - 1).rev() {
            let m = n - k - 1;
            let a = self.get(k, k);
            let row: Vec<GroupRingElt> = (k + 1..n).map(|j| self.get(k, j).clone()).collect();
            let mut col: Vec<GroupRingElt> = (k + 1..n).map(|i| self.get(i, k).clone()).collect();
            let mut t = vec![GroupRingElt::one(g), -a];
            for _ in 0..m {
                let rc = row.iter().zip(&col).fold(GroupRingElt::zero(g), |acc, (r, c)| &acc + &(r * c));
                t.push(-&rc);
                let mut next = vec![GroupRingElt::zero(g); m];
                for (i, slot) in next.iter_mut().enumerate() {
                    for (j, c) in col.iter().enumerate() {
                        let e = self.get(k + 1 + i, k + 1 + j);
                        if !e.is_zero() && !c.is_zero() {
                            *slot = &*slot + &(e * c);
                        }
                    }
                }
                col = next;
            }
            t.truncate(m + 2);
            let mut nv = vec![GroupRingElt::zero(g); m + 2];
            for (i, slot) in nv.iter_mut().enumerate() {
                for j in 0..=i.min(m) {
                    if i - j < t.len() {
                        *slot = &*slot + &(&t[i - j] * &v[j]);
                    }
                }
            }
            v = nv;
        }
        let c = v[n].clone();
        if n % 2 == 1 { -&c } else { c }
    }

    /// Integer matrix of the underlying map of free abelian groups (finite groups only).
    pub fn regular_embedding(&self) -> Result<IntMatrix, RingError> {
        let n = self.group.order().ok_or(RingError::InfiniteGroup)?;
        let mut out = IntMatrix::zeros(self.rows * n, self.cols * n);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let x = self.get(i, j);
                for (e, c) in x.terms() {
                    // multiplication by c g^e sends basis g^s to g^(s+e)
                    for s in 0..n {
                        let r = (s + e as usize) % n;
                        out[(i * n + r, j * n + s)] += c;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Apply the ring map `g -> sign` entrywise (augmentation for `sign = 1`).
    pub fn evaluate_sign(&self, sign: i64) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self.get(i, j).evaluate_sign(sign);
            }
        }
        out
    }

    /// Entries as integers when the ring is `Z`.
    pub fn to_int(&self) -> Result<IntMatrix, RingError> {
        if !self.group.is_trivial() {
            return Err(RingError::NotIntegral);
        }
        Ok(self.evaluate_sign(1))
    }
}

/// Solve `A X = B` over the group ring.
///
/// Finite groups are solved exactly through the regular representation.
/// For the Laurent ring the unknown entries are restricted to exponents in
/// `[-window, window]`; `None` means no solution inside that window.
pub fn solve(a: &RingMatrix, b: &RingMatrix, window: i64) -> Result<Option<RingMatrix>, RingError> {
    if a.rows() != b.rows() {
        return Err(RingError::Shape(format!("solve: {} rows vs {} rows", a.rows(), b.rows())));
    }
    if a.group() != b.group() {
        return Err(RingError::GroupMismatch(a.group().describe(), b.group().describe()));
    }
    let g = a.group();
    match g.kind() {
        GroupKind::Trivial | GroupKind::Cyclic(_) => {
            let n = g.order().unwrap();
            let ra = a.regular_embedding()?;
            let s = Snf::compute(&ra);
            let mut x = RingMatrix::zeros(g, a.cols(), b.cols());
            for j in 0..b.cols() {
                // right-hand side: coefficients of column j
                let mut rhs = vec![0i64; a.rows() * n];
                for i in 0..a.rows() {
                    for (e, c) in b.get(i, j).terms() {
                        rhs[i * n + e as usize] += c;
                    }
                }
                let Some(sol) = s.solve(&rhs) else { return Ok(None) };
                for k in 0..a.cols() {
                    let terms: Vec<(i64, i64)> = (0..n).map(|e| (e as i64, sol[k * n + e])).collect();
                    x.set(k, j, GroupRingElt::from_terms(g, &terms));
                }
            }
            Ok(Some(x))
        }
        GroupKind::InfiniteCyclic => {
            let w = 2 * window + 1;
            let amax = a.max_abs_exponent();
            let bmax = b.max_abs_exponent();
            if bmax > window + amax {
                return Ok(None);
            }
            let lo = -(window + amax);
            let span = (2 * (window + amax) + 1) as usize;
            let mut ra = IntMatrix::zeros(a.rows() * span, a.cols() * w as usize);
            for i in 0..a.rows() {
                for k in 0..a.cols() {
                    for (e, c) in a.get(i, k).terms() {
                        for s in 0..w {
                            let exp = e + s - window;
                            let r = (exp - lo) as usize;
                            ra[(i * span + r, k * w as usize + s as usize)] += c;
                        }
                    }
                }
            }
            let snf = Snf::compute(&ra);
            let mut x = RingMatrix::zeros(g, a.cols(), b.cols());
            for j in 0..b.cols() {
                let mut rhs = vec![0i64; a.rows() * span];
                for i in 0..a.rows() {
                    for (e, c) in b.get(i, j).terms() {
                        rhs[i * span + (e - lo) as usize] += c;
                    }
                }
                let Some(sol) = snf.solve(&rhs) else { return Ok(None) };
                for k in 0..a.cols() {
                    let terms: Vec<(i64, i64)> =
                        (0..w).map(|s| (s - window, sol[k * w as usize + s as usize])).collect();
                    x.set(k, j, GroupRingElt::from_terms(g, &terms));
                }
            }
            Ok(Some(x))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::snf;

    fn elt(g: GroupSpec, t: &[(i64, i64)]) -> GroupRingElt {
        GroupRingElt::from_terms(g, t)
    }

    #[test]
    fn berkowitz_matches_bareiss_over_z() {
        let g = GroupSpec::trivial();
        let m = IntMatrix::from_rows(4, 4, &[
            vec![2, -1, 0, 3],
            vec![1, 3, 4, 0],
            vec![0, 5, 1, -2],
            vec![7, 0, 1, 1],
        ]);
        let r = RingMatrix::from_int(g, &m);
        assert_eq!(r.det().unwrap().coeff(0), snf::det(&m));
    }

    proptest::proptest! {
        #[test]
        fn pivoting_preserves_det(
            gi in 0usize..3,
            n in 1usize..6,
            seed in proptest::collection::vec((-2i64..3, -1i64..2, -1i64..2), 36),
        ) {
            let g = [GroupSpec::trivial(), GroupSpec::cyclic(4).unwrap(), GroupSpec::infinite_cyclic()][gi];
            let mut m = RingMatrix::zeros(g, n, n);
            for i in 0..n {
                for j in 0..n {
                    let (e, a, b) = seed[i * 6 + j];
                    m.set(i, j, elt(g, &[(e, a), (e + 1, b)]));
                }
            }
            proptest::prop_assert_eq!(m.det().unwrap(), m.berkowitz());
            if g.is_trivial() {
                proptest::prop_assert_eq!(m.det().unwrap().coeff(0), snf::det(&m.to_int().unwrap()));
            }
        }
    }

    #[test]
    fn det_of_diagonal_units() {
        let g = GroupSpec::cyclic(5).unwrap();
        let u = elt(g, &[(1, 1), (4, 1), (0, -1)]);
        let mut m = RingMatrix::identity(g, 3);
        m.set(1, 1, u.clone());
        m.set(0, 2, elt(g, &[(2, 7)]));
        assert_eq!(m.det().unwrap(), u);
    }

    #[test]
    fn det_commutes_with_regular_embedding_norm() {
        // det over Z of the regular embedding is the product over characters,
        // and for a 1x1 matrix it equals the determinant of the circulant
        let g = GroupSpec::cyclic(3).unwrap();
        let x = elt(g, &[(0, 2), (1, 1)]);
        let m = RingMatrix::from_rows(g, 1, 1, vec![vec![x]]).unwrap();
        assert_eq!(snf::det(&m.regular_embedding().unwrap()), 8 + 1);
    }

    #[test]
    fn solve_cyclic_and_laurent() {
        let g = GroupSpec::cyclic(5).unwrap();
        let u = elt(g, &[(1, 1), (4, 1), (0, -1)]);
        let a = RingMatrix::from_rows(g, 1, 1, vec![vec![u]]).unwrap();
        let one = RingMatrix::identity(g, 1);
        let x = solve(&a, &one, 0).unwrap().unwrap();
        assert_eq!(x.get(0, 0), &elt(g, &[(2, 1), (3, 1), (0, -1)]));

        let l = GroupSpec::infinite_cyclic();
        let a = RingMatrix::from_rows(l, 1, 1, vec![vec![elt(l, &[(1, 1), (0, -1)])]]).unwrap();
        assert!(solve(&a, &RingMatrix::identity(l, 1), 4).unwrap().is_none());
        let b = RingMatrix::from_rows(l, 1, 1, vec![vec![elt(l, &[(3, 1), (0, -1)])]]).unwrap();
        let x = solve(&a, &b, 4).unwrap().unwrap();
        assert_eq!(a.mul(&x), b);
    }
}
