use std::fmt;

use serde::{Deserialize, Serialize};

use super::matrix::IntMatrix;
use super::snf::Snf;
use super::RingError;

/// A finitely generated abelian group `Z^g / im(R)`.
#[derive(Clone, Debug)]
pub struct FgAbelian {
    relations: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    /// Per canonical coordinate: 1 trivial, 0 free, d > 1 cyclic of order d.
    factors: Vec<i64>,
}

impl PartialEq for FgAbelian {
    /// Equality of presentations (same generators and relation matrix).
    fn eq(&self, other: &Self) -> bool {
        self.relations == other.relations
    }
}

impl FgAbelian {
    pub fn new(generators: usize, relations: IntMatrix) -> Self {
        assert_eq!(relations.rows(), generators, "relation vectors must have one entry per generator");
        let s = Snf::compute(&relations);
        let mut factors = vec![0i64; generators];
        for (i, &d) in s.diagonal.iter().enumerate() {
            factors[i] = d;
        }
        FgAbelian { relations, u: s.u, u_inv: s.u_inv, factors }
    }

    pub fn free(rank: usize) -> Self {
        Self::new(rank, IntMatrix::zeros(rank, 0))
    }

    pub fn zero() -> Self {
        Self::free(0)
    }

    /// `Z/d_1 + ... ` with `d = 0` meaning a free summand.
    pub fn from_cyclic_orders(orders: &[i64]) -> Self {
        let n = orders.len();
        let cols: Vec<Vec<i64>> = orders
            .iter()
            .enumerate()
            .filter(|(_, &d)| d != 0)
            .map(|(i, &d)| {
                let mut c = vec![0; n];
                c[i] = d;
                c
            })
            .collect();
        Self::new(n, IntMatrix::from_columns(n, &cols))
    }

    pub fn generators(&self) -> usize {
        self.relations.rows()
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    /// Torsion invariant factors `d_1 | d_2 | ...`, each > 1.
    pub fn invariant_factors(&self) -> Vec<i64> {
        self.factors.iter().copied().filter(|&d| d > 1).collect()
    }

    pub fn free_rank(&self) -> usize {
        self.factors.iter().filter(|&&d| d == 0).count()
    }

    pub fn is_zero(&self) -> bool {
        self.factors.iter().all(|&d| d == 1)
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank() == 0
    }

    pub fn order(&self) -> Option<u128> {
        if !self.is_finite() {
            return None;
        }
        Some(self.invariant_factors().iter().map(|&d| d as u128).product())
    }

    /// Exponent of the torsion subgroup (1 if torsion-free).
    pub fn torsion_exponent(&self) -> i64 {
        self.invariant_factors().last().copied().unwrap_or(1)
    }

    /// Canonical coordinates of an element: components with factor 1 dropped,
    /// torsion components reduced into `[0, d)`.
    pub fn coords(&self, x: &[i64]) -> Vec<i64> {
        assert_eq!(x.len(), self.generators());
        let y = self.u.mul_vec(x);
        y.iter()
            .zip(&self.factors)
            .filter(|(_, &d)| d != 1)
            .map(|(&v, &d)| if d == 0 { v } else { v.rem_euclid(d) })
            .collect()
    }

    /// Orders of the canonical coordinates (0 for free).
    pub fn coord_orders(&self) -> Vec<i64> {
        self.factors.iter().copied().filter(|&d| d != 1).collect()
    }

    /// Generator-coordinate vector of the element with the given canonical coordinates.
    pub fn from_coords(&self, c: &[i64]) -> Vec<i64> {
        let mut y = vec![0i64; self.generators()];
        let mut k = 0;
        for (i, &d) in self.factors.iter().enumerate() {
            if d != 1 {
                y[i] = c[k];
                k += 1;
            }
        }
        assert_eq!(k, c.len());
        self.u_inv.mul_vec(&y)
    }

    pub fn is_zero_element(&self, x: &[i64]) -> bool {
        self.coords(x).iter().all(|&v| v == 0)
    }

    pub fn equal_elements(&self, x: &[i64], y: &[i64]) -> bool {
        let d: Vec<i64> = x.iter().zip(y).map(|(a, b)| a - b).collect();
        self.is_zero_element(&d)
    }

    /// Whether two groups are isomorphic.
    pub fn isomorphic(&self, other: &FgAbelian) -> bool {
        self.free_rank() == other.free_rank() && self.invariant_factors() == other.invariant_factors()
    }

    pub fn direct_sum(&self, other: &FgAbelian) -> FgAbelian {
        FgAbelian::new(self.generators() + other.generators(), self.relations.block_diag(&other.relations))
    }

    /// Every element of a finite group, in generator coordinates.
    pub fn enumerate(&self) -> Option<Vec<Vec<i64>>> {
        let orders = self.coord_orders();
        if orders.iter().any(|&d| d == 0) {
            return None;
        }
        let mut out = vec![vec![]];
        for &d in &orders {
            let mut next = Vec::new();
            for c in &out {
                for v in 0..d {
                    let mut c2 = c.clone();
                    c2.push(v);
                    next.push(c2);
                }
            }
            out = next;
        }
        Some(out.iter().map(|c| self.from_coords(c)).collect())
    }

    pub fn to_json(&self) -> PresentationJson {
        PresentationJson {
            generators: self.generators(),
            relations: (0..self.relations.cols()).map(|j| self.relations.column(j)).collect(),
        }
    }

    pub fn from_json(j: &PresentationJson) -> Result<Self, RingError> {
        if j.relations.iter().any(|r| r.len() != j.generators) {
            return Err(RingError::Shape(format!(
                "each relation must have {} entries",
                j.generators
            )));
        }
        Ok(FgAbelian::new(j.generators, IntMatrix::from_columns(j.generators, &j.relations)))
    }
}

impl fmt::Display for FgAbelian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank() {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in self.invariant_factors() {
            parts.push(format!("Z/{d}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// `{"generators": g, "relations": [[..g entries..], ..]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationJson {
    pub generators: usize,
    #[serde(default)]
    pub relations: Vec<Vec<i64>>,
}

/// Whether `f` (matrix in generator coordinates) is a well-defined homomorphism.
pub fn is_homomorphism(dom: &FgAbelian, cod: &FgAbelian, f: &IntMatrix) -> bool {
    if f.rows() != cod.generators() || f.cols() != dom.generators() {
        return false;
    }
    let img = f.mul(dom.relations());
    (0..img.cols()).all(|j| cod.is_zero_element(&img.column(j)))
}

/// Whether `f` is the zero homomorphism.
pub fn is_zero_map(cod: &FgAbelian, f: &IntMatrix) -> bool {
    (0..f.cols()).all(|j| cod.is_zero_element(&f.column(j)))
}

/// Kernel, image and cokernel of a homomorphism, with structure maps.
#[derive(Clone, Debug)]
pub struct HomDecomposition {
    pub kernel: FgAbelian,
    /// dom.generators x kernel.generators
    pub kernel_embedding: IntMatrix,
    pub image: FgAbelian,
    /// cod.generators x image.generators (image generators are those of dom)
    pub image_embedding: IntMatrix,
    pub cokernel: FgAbelian,
    /// coker.generators x cod.generators
    pub cokernel_projection: IntMatrix,
}

impl HomDecomposition {
    pub fn is_injective(&self) -> bool {
        self.kernel.is_zero()
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel.is_zero()
    }

    pub fn is_iso(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }
}

pub fn hom_decompose(dom: &FgAbelian, cod: &FgAbelian, f: &IntMatrix) -> Result<HomDecomposition, RingError> {
    if f.rows() != cod.generators() || f.cols() != dom.generators() {
        return Err(RingError::Shape(format!(
            "map is {}x{}, expected {}x{}",
            f.rows(),
            f.cols(),
            cod.generators(),
            dom.generators()
        )));
    }
    if !is_homomorphism(dom, cod, f) {
        return Err(RingError::NotAHomomorphism);
    }
    let a = dom.generators();
    let b = cod.generators();
    // L = { x : f x in im R_B }
    let m = f.hstack(cod.relations());
    let k = Snf::compute(&m).kernel_basis();
    let g_l = k.submatrix(0..a, 0..k.cols());
    let basis_l = Snf::compute(&g_l).image_basis();
    let l = basis_l.cols();
    let solver = Snf::compute(&basis_l);
    let mut rel_cols = Vec::new();
    for j in 0..dom.relations().cols() {
        let r = dom.relations().column(j);
        let c = solver.solve(&r).ok_or(RingError::NotAHomomorphism)?;
        rel_cols.push(c);
    }
    let kernel = FgAbelian::new(l, IntMatrix::from_columns(l, &rel_cols));
    let image = FgAbelian::new(a, basis_l.clone());
    let cokernel = FgAbelian::new(b, m);
    Ok(HomDecomposition {
        kernel,
        kernel_embedding: basis_l,
        image,
        image_embedding: f.clone(),
        cokernel,
        cokernel_projection: IntMatrix::identity(b),
    })
}

/// Inverse of an isomorphism `f: dom -> cod`.
pub fn invert_iso(dom: &FgAbelian, cod: &FgAbelian, f: &IntMatrix) -> Result<IntMatrix, RingError> {
    let dec = hom_decompose(dom, cod, f)?;
    if !dec.is_iso() {
        return Err(RingError::NotAnIsomorphism);
    }
    let m = f.hstack(cod.relations());
    let s = Snf::compute(&m);
    let mut cols = Vec::new();
    for i in 0..cod.generators() {
        let mut e = vec![0; cod.generators()];
        e[i] = 1;
        let x = s.solve(&e).ok_or(RingError::NotAnIsomorphism)?;
        cols.push(x[..dom.generators()].to_vec());
    }
    Ok(IntMatrix::from_columns(dom.generators(), &cols))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn invariants_of_presentations() {
        let g = FgAbelian::new(2, IntMatrix::from_rows(2, 1, &[vec![2], vec![4]]));
        assert_eq!(g.free_rank(), 1);
        assert_eq!(g.invariant_factors(), vec![2]);
        let h = FgAbelian::from_cyclic_orders(&[2, 3, 0]);
        assert_eq!(h.invariant_factors(), vec![6]);
        assert_eq!(h.free_rank(), 1);
        assert_eq!(h.to_string(), "Z + Z/6");
    }

    #[test]
    fn doubling_on_z() {
        let z = FgAbelian::free(1);
        let d = hom_decompose(&z, &z, &IntMatrix::from_rows(1, 1, &[vec![2]])).unwrap();
        assert!(d.kernel.is_zero());
        assert_eq!(d.cokernel.invariant_factors(), vec![2]);
        assert_eq!(d.image.free_rank(), 1);
    }

    #[test]
    fn ill_defined_map_rejected() {
        let z2 = FgAbelian::from_cyclic_orders(&[2]);
        let z = FgAbelian::free(1);
        assert!(matches!(
            hom_decompose(&z2, &z, &IntMatrix::from_rows(1, 1, &[vec![1]])),
            Err(RingError::NotAHomomorphism)
        ));
    }

    fn small_group() -> impl Strategy<Value = FgAbelian> {
        prop::collection::vec(prop::sample::select(vec![1i64, 2, 3, 4, 6]), 0..3)
            .prop_map(|o| FgAbelian::from_cyclic_orders(&o))
    }

    fn brute_check(a: &FgAbelian, b: &FgAbelian, f: &IntMatrix) {
        let dec = hom_decompose(a, b, f).unwrap();
        let ea = a.enumerate().unwrap();
        let eb = b.enumerate().unwrap();
        let ker = ea.iter().filter(|x| b.is_zero_element(&f.mul_vec(x))).count() as u128;
        let mut images: Vec<Vec<i64>> = ea.iter().map(|x| b.coords(&f.mul_vec(x))).collect();
        images.sort();
        images.dedup();
        let im = images.len() as u128;
        assert_eq!(dec.kernel.order().unwrap(), ker);
        assert_eq!(dec.image.order().unwrap(), im);
        assert_eq!(dec.cokernel.order().unwrap(), eb.len() as u128 / im);
        assert_eq!(ker * im, ea.len() as u128);
        // kernel embedding lands in the kernel
        for j in 0..dec.kernel_embedding.cols() {
            assert!(b.is_zero_element(&f.mul_vec(&dec.kernel_embedding.column(j))));
        }
    }

    proptest! {
        #[test]
        fn decomposition_matches_enumeration(a in small_group(), b in small_group(),
                                             entries in prop::collection::vec(-5i64..6, 9)) {
            let mut f = IntMatrix::from_flat(b.generators(), a.generators(),
                entries[..a.generators() * b.generators()].to_vec());
            // force well-definedness: scale each column by the order of its generator
            for j in 0..a.generators() {
                let ord = a.coord_orders().get(j).copied().unwrap_or(1);
                let lcm = b.coord_orders().iter().fold(1i64, |acc, &d| if d == 0 { acc } else { num_lcm(acc, d) });
                let k = lcm / gcd(lcm, ord.max(1));
                for i in 0..b.generators() { f[(i, j)] *= k; }
            }
            prop_assume!(is_homomorphism(&a, &b, &f));
            brute_check(&a, &b, &f);
        }

        #[test]
        fn rank_additivity(r in 0usize..4, s in 0usize..4, entries in prop::collection::vec(-4i64..5, 16)) {
            let a = FgAbelian::free(r);
            let b = FgAbelian::free(s);
            let f = IntMatrix::from_flat(s, r, entries[..r * s].to_vec());
            let d = hom_decompose(&a, &b, &f).unwrap();
            prop_assert_eq!(d.kernel.free_rank() + d.image.free_rank(), r);
            prop_assert_eq!(d.image.free_rank() + d.cokernel.free_rank(), s);
            prop_assert!(d.image.is_finite() || d.image.invariant_factors().is_empty());
        }
    }

    fn gcd(a: i64, b: i64) -> i64 {
        if b == 0 { a.abs() } else { gcd(b, a % b) }
    }

    fn num_lcm(a: i64, b: i64) -> i64 {
        a / gcd(a, b) * b
    }

    #[test]
    fn iso_inverse() {
        let a = FgAbelian::from_cyclic_orders(&[4, 0]);
        let f = IntMatrix::from_rows(2, 2, &[vec![3, 0], vec![0, -1]]);
        let g = invert_iso(&a, &a, &f).unwrap();
        let comp = f.mul(&g);
        for i in 0..2 {
            let mut e = vec![0; 2];
            e[i] = 1;
            assert!(a.equal_elements(&comp.mul_vec(&e), &e));
        }
    }
}
