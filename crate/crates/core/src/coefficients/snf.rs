use super::matrix::IntMatrix;

/// Smith normal form `U * M * V = D` with unimodular `U`, `V`.
///
/// `D` is diagonal with `d_1 | d_2 | ...`, nonnegative, zeros last.
#[derive(Clone, Debug)]
pub struct Snf {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    pub d: IntMatrix,
    /// Nonzero diagonal entries, in order.
    pub diagonal: Vec<i64>,
}

struct State {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl State {
    fn row_add(&mut self, dst: usize, src: usize, k: i64) {
        if k == 0 {
            return;
        }
        self.a.add_row_multiple(dst, src, k);
        self.u.add_row_multiple(dst, src, k);
        self.u_inv.add_col_multiple(src, dst, -k);
    }

    fn col_add(&mut self, dst: usize, src: usize, k: i64) {
        if k == 0 {
            return;
        }
        self.a.add_col_multiple(dst, src, k);
        self.v.add_col_multiple(dst, src, k);
        self.v_inv.add_row_multiple(src, dst, -k);
    }

    fn row_swap(&mut self, x: usize, y: usize) {
        self.a.swap_rows(x, y);
        self.u.swap_rows(x, y);
        self.u_inv.swap_cols(x, y);
    }

    fn col_swap(&mut self, x: usize, y: usize) {
        self.a.swap_cols(x, y);
        self.v.swap_cols(x, y);
        self.v_inv.swap_rows(x, y);
    }

    fn row_negate(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    /// Smallest nonzero |entry| in the block starting at (t, t), row-major tie-break.
    fn smallest(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(i64, usize, usize)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = self.a[(i, j)].abs();
                if x != 0 && best.map_or(true, |(b, _, _)| x < b) {
                    best = Some((x, i, j));
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }

    /// Smallest nonzero |entry| in row t and column t (from t on).
    fn smallest_cross(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(i64, usize, usize)> = None;
        for j in t..self.a.cols() {
            let x = self.a[(t, j)].abs();
            if x != 0 && best.map_or(true, |(b, _, _)| x < b) {
                best = Some((x, t, j));
            }
        }
        for i in t + 1..self.a.rows() {
            let x = self.a[(i, t)].abs();
            if x != 0 && best.map_or(true, |(b, _, _)| x < b) {
                best = Some((x, i, t));
            }
        }
        best.map(|(_, i, j)| (i, j))
    }
}

impl Snf {
    pub fn compute(m: &IntMatrix) -> Snf {
        let (r, c) = (m.rows(), m.cols());
        let mut s = State {
            a: m.clone(),
            u: IntMatrix::identity(r),
            u_inv: IntMatrix::identity(r),
            v: IntMatrix::identity(c),
            v_inv: IntMatrix::identity(c),
        };
        let mut diagonal = Vec::new();
        let mut t = 0;
        while t < r.min(c) {
            let Some((i, j)) = s.smallest(t) else { break };
            s.row_swap(t, i);
            s.col_swap(t, j);
            loop {
                let p = s.a[(t, t)];
                for i in t + 1..r {
                    let q = round_div(s.a[(i, t)], p);
                    s.row_add(i, t, -q);
                }
                for j in t + 1..c {
                    let q = round_div(s.a[(t, j)], p);
                    s.col_add(j, t, -q);
                }
                let clean = (t + 1..r).all(|i| s.a[(i, t)] == 0) && (t + 1..c).all(|j| s.a[(t, j)] == 0);
                if !clean {
                    let (i, j) = s.smallest_cross(t).expect("nonzero pivot cross");
                    s.row_swap(t, i);
                    s.col_swap(t, j);
                    continue;
                }
                let mut bad = None;
                'outer: for i in t + 1..r {
                    for j in t + 1..c {
                        if s.a[(i, j)] % p != 0 {
                            bad = Some(i);
                            break 'outer;
                        }
                    }
                }
                match bad {
                    Some(i) => s.row_add(t, i, 1),
                    None => break,
                }
            }
            if s.a[(t, t)] < 0 {
                s.row_negate(t);
            }
            diagonal.push(s.a[(t, t)]);
            t += 1;
        }
        Snf { u: s.u, u_inv: s.u_inv, v: s.v, v_inv: s.v_inv, d: s.a, diagonal }
    }

    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    /// Columns of `V` spanning the integer kernel.
    pub fn kernel_basis(&self) -> IntMatrix {
        let n = self.v.cols();
        self.v.submatrix(0..n, self.rank()..n)
    }

    /// Basis of the column space, `d_i * U^{-1} e_i`.
    pub fn image_basis(&self) -> IntMatrix {
        let r = self.rank();
        let mut b = self.u_inv.submatrix(0..self.u_inv.rows(), 0..r);
        for (j, &d) in self.diagonal.iter().enumerate() {
            for i in 0..b.rows() {
                b[(i, j)] *= d;
            }
        }
        b
    }

    /// Some integer `x` with `M x = b`, if one exists.
    pub fn solve(&self, b: &[i64]) -> Option<Vec<i64>> {
        let ub = self.u.mul_vec(b);
        let mut y = vec![0i64; self.v.cols()];
        for (i, &x) in ub.iter().enumerate() {
            if i < self.rank() {
                let d = self.diagonal[i];
                if x % d != 0 {
                    return None;
                }
                y[i] = x / d;
            } else if x != 0 {
                return None;
            }
        }
        Some(self.v.mul_vec(&y))
    }
}

fn round_div(a: i64, p: i64) -> i64 {
    let q = a.div_euclid(p);
    let r = a - q * p;
    if 2 * r.abs() > p.abs() {
        q + p.signum()
    } else {
        q
    }
}

/// Integer rank.
pub fn rank(m: &IntMatrix) -> usize {
    Snf::compute(m).rank()
}

/// Determinant by fraction-free elimination.
pub fn det(m: &IntMatrix) -> i64 {
    assert_eq!(m.rows(), m.cols());
    let n = m.rows();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m.to_rows().into_iter().map(|r| r.into_iter().map(i128::from).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| a[i][k] != 0) else { return 0 };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    i64::try_from(sign * a[n - 1][n - 1]).expect("determinant overflows i64")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn check(m: &IntMatrix) {
        let s = Snf::compute(m);
        assert_eq!(s.u.mul(m).mul(&s.v), s.d);
        assert_eq!(s.u.mul(&s.u_inv), IntMatrix::identity(m.rows()));
        assert_eq!(s.v.mul(&s.v_inv), IntMatrix::identity(m.cols()));
        for w in s.diagonal.windows(2) {
            assert_eq!(w[1] % w[0], 0);
        }
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j || i >= s.rank() {
                    assert_eq!(s.d[(i, j)], 0);
                }
            }
        }
        assert!(m.mul(&s.kernel_basis()).is_zero());
    }

    #[test]
    fn known_forms() {
        let m = IntMatrix::from_rows(2, 2, &[vec![2, 4], vec![6, 8]]);
        let s = Snf::compute(&m);
        assert_eq!(s.diagonal, vec![2, 4]);
        let m = IntMatrix::from_rows(3, 3, &[vec![2, 0, 0], vec![0, 3, 0], vec![0, 0, 0]]);
        assert_eq!(Snf::compute(&m).diagonal, vec![1, 6]);
        check(&m);
    }

    #[test]
    fn determinant() {
        let m = IntMatrix::from_rows(3, 3, &[vec![2, -1, 0], vec![1, 3, 4], vec![0, 5, 1]]);
        assert_eq!(det(&m), 2 * (3 - 20) + (1 - 0));
    }

    proptest! {
        #[test]
        fn snf_invariants(r in 0usize..6, c in 0usize..6, seed in prop::collection::vec(-6i64..7, 36)) {
            let m = IntMatrix::from_flat(r, c, seed[..r * c].to_vec());
            check(&m);
            let s = Snf::compute(&m);
            if r == c && r > 0 {
                let prod: i64 = if s.rank() == r { s.diagonal.iter().product() } else { 0 };
                prop_assert_eq!(det(&m).abs(), prod);
            }
            // solve recovers a right-hand side in the image
            let x: Vec<i64> = (0..c).map(|i| seed[i] % 3).collect();
            let b = m.mul_vec(&x);
            let y = s.solve(&b).expect("image vector solvable");
            prop_assert_eq!(m.mul_vec(&y), b);
        }
    }
}
