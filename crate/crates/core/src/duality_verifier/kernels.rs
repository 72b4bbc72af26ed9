use serde::Serialize;

use super::{check_cycle, class_map, same_map, DualityError, Groups};
use crate::coefficients::{hom_decompose, invert_iso, IntMatrix};
use crate::simplicial::{cap, fundamental_class, Chain, Cochain, Rel, SimplicialSpace, Twist};
use crate::torsion::Verdict;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KernelDegree {
    pub degree: i64,
    /// `K_r = ker(f_*: H_r(M) -> H_r(X))`.
    pub homology_kernel: String,
    /// `K^r = coker(f^*: H^r(X) -> H^r(M))`.
    pub cohomology_cokernel: String,
    pub split_surjective: bool,
    pub split_injective: bool,
    /// Cap with `[M]` maps `K^r` isomorphically onto `K_{n-r}`.
    pub cap_iso: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KernelReport {
    pub verdict: Verdict,
    pub degrees: Vec<KernelDegree>,
}

/// `sign, image simplex` of a simplex under a vertex map, or none if degenerate.
fn push_simplex(x: &SimplicialSpace, f: &[usize], s: &[usize]) -> Result<Option<(i64, usize)>, DualityError> {
    let img: Vec<usize> = s.iter().map(|&v| f[v]).collect();
    let mut sorted = img.clone();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Ok(None);
    }
    let inv = (0..img.len()).flat_map(|i| (i + 1..img.len()).map(move |j| (i, j))).filter(|&(i, j)| img[i] > img[j]).count();
    let idx = x
        .index_of(&sorted)
        .ok_or_else(|| DualityError::NotDegreeOne(format!("image {sorted:?} of {s:?} is not a simplex")))?;
    Ok(Some((if inv % 2 == 0 { 1 } else { -1 }, idx)))
}

fn check_map(m: &SimplicialSpace, x: &SimplicialSpace, f: &[usize]) -> Result<(), DualityError> {
    if f.len() != m.n_vertices() || f.iter().any(|&v| v >= x.n_vertices()) {
        return Err(DualityError::NotDegreeOne("vertex map has the wrong shape".into()));
    }
    for d in 0..=m.dim() {
        for s in m.simplices(d) {
            push_simplex(x, f, s)?;
        }
    }
    Ok(())
}

/// `f_#` on chains of a simplicial vertex map.
pub fn simplicial_push(m: &SimplicialSpace, x: &SimplicialSpace, f: &[usize], c: &Chain) -> Result<Chain, DualityError> {
    c.check(m)?;
    let mut out = Chain::zero(x, c.degree, c.twist);
    for (i, &a) in c.coeffs.iter().enumerate() {
        if a != 0 {
            if let Some((sign, j)) = push_simplex(x, f, m.simplex(c.degree as usize, i))? {
                out.coeffs[j] += sign * a;
            }
        }
    }
    Ok(out)
}

fn pull(m: &SimplicialSpace, x: &SimplicialSpace, f: &[usize], u: &Cochain) -> Result<Cochain, DualityError> {
    let mut out = Cochain::zero(m, u.degree, u.twist);
    for (i, s) in m.simplices(u.degree as usize).iter().enumerate() {
        if let Some((sign, j)) = push_simplex(x, f, s)? {
            out.values[i] = sign * u.values[j];
        }
    }
    Ok(out)
}

/// `[M]` and `[X] = f_#[M]` for a map of closed oriented manifolds of degree `+-1`.
pub fn degree_one_class(m: &SimplicialSpace, x: &SimplicialSpace, f: &[usize]) -> Result<(Chain, Chain), DualityError> {
    check_map(m, x, f)?;
    let zm = fundamental_class(m)?;
    let zx = simplicial_push(m, x, f, &zm)?;
    let h = Groups::homology(x, Twist::Trivial, Rel::Absolute, x.dim() as i64);
    let c = h.classify_full(&zx.coeffs)?;
    if h.group.generators.len() != 1 || c[0].abs() != 1 {
        return Err(DualityError::NotDegreeOne(format!("f_*[M] has class {c:?} in H_n(X) = {}", h.describe())));
    }
    Ok((zm, zx))
}

struct Side {
    homology: Vec<Groups>,
    cohomology: Vec<Groups>,
    /// `H^r -> H_{n-r}`
    duality: Vec<IntMatrix>,
}

fn side(k: &SimplicialSpace, z: &Chain) -> Result<Side, DualityError> {
    let n = z.degree;
    let homology: Vec<Groups> = (0..=n).map(|r| Groups::homology(k, Twist::Trivial, Rel::Absolute, r)).collect();
    let cohomology: Vec<Groups> = (0..=n).map(|r| Groups::cohomology(k, Twist::Trivial, Rel::Absolute, r)).collect();
    let mut duality = Vec::new();
    for r in 0..=n {
        duality.push(class_map(&cohomology[r as usize], &homology[(n - r) as usize], |u| {
            Ok(cap(k, &Cochain { degree: r, twist: Twist::Trivial, values: u.to_vec() }, z)?.coeffs)
        })?);
    }
    Ok(Side { homology, cohomology, duality })
}

/// Kernels of a degree one map of closed oriented manifolds and their duality
/// under cap with `[M]`.
pub fn surgery_kernel_check(
    m: &SimplicialSpace,
    x: &SimplicialSpace,
    f: &[usize],
    zm: &Chain,
    zx: &Chain,
) -> Result<KernelReport, DualityError> {
    check_map(m, x, f)?;
    if m.is_twisted() || x.is_twisted() || m.has_subcomplex() || x.has_subcomplex() {
        return Err(DualityError::Unsupported("surgery kernels are checked for closed untwisted manifolds".into()));
    }
    check_cycle(m, zm)?;
    check_cycle(x, zx)?;
    let n = zm.degree;
    if zx.degree != n {
        return Err(DualityError::NotDegreeOne("classes have different degrees".into()));
    }
    let top = Groups::homology(x, Twist::Trivial, Rel::Absolute, n);
    if top.classify_full(&simplicial_push(m, x, f, zm)?.coeffs)? != top.classify_full(&zx.coeffs)? {
        return Err(DualityError::NotDegreeOne("f_*[M] differs from [X]".into()));
    }
    let sm = side(m, zm)?;
    let sx = side(x, zx)?;
    let nu = n as usize;
    let mut fstar = Vec::new();
    let mut fup = Vec::new();
    let mut pdx_inv = Vec::new();
    for r in 0..=nu {
        fstar.push(class_map(&sm.homology[r], &sx.homology[r], |c| {
            Ok(simplicial_push(m, x, f, &Chain { degree: r as i64, twist: Twist::Trivial, coeffs: c.to_vec() })?.coeffs)
        })?);
        fup.push(class_map(&sx.cohomology[r], &sm.cohomology[r], |u| {
            Ok(pull(m, x, f, &Cochain { degree: r as i64, twist: Twist::Trivial, values: u.to_vec() })?.values)
        })?);
        let inv = invert_iso(&sx.cohomology[r].group.group, &sx.homology[nu - r].group.group, &sx.duality[r])
            .map_err(|_| DualityError::DualityFails(format!("cap with [X] is not an isomorphism in degree {r}")))?;
        pdx_inv.push(inv);
    }
    // umkehr f^!: H_k(X) -> H_k(M)
    let umkehr: Vec<IntMatrix> = (0..=nu).map(|k| sm.duality[nu - k].mul(&fup[nu - k]).mul(&pdx_inv[nu - k])).collect();
    let mut degrees = Vec::new();
    for r in 0..=nu {
        let s = nu - r;
        let hm = &sm.homology[r];
        let hx = &sx.homology[r];
        let split_surjective = same_map(hx, &fstar[r].mul(&umkehr[r]), &IntMatrix::identity(hx.group.generators.len()));
        let back = pdx_inv[r].mul(&fstar[s]).mul(&sm.duality[r]);
        let cx = &sx.cohomology[r];
        let split_injective = same_map(cx, &back.mul(&fup[r]), &IntMatrix::identity(cx.group.generators.len()));
        let kernel = hom_decompose(&hm.group.group, &hx.group.group, &fstar[r])?;
        let cm = &sm.cohomology[r];
        let cokernel = hom_decompose(&cx.group.group, &cm.group.group, &fup[r])?;
        // q = (1 - f^! f_*) PD_M : H^r(M) -> K_{n-r}
        let hs = &sm.homology[s];
        let proj = IntMatrix::identity(hs.group.generators.len()).sub(&umkehr[s].mul(&fstar[s]));
        let q = proj.mul(&sm.duality[r]);
        let zero_x = IntMatrix::zeros(sx.homology[s].group.generators.len(), q.cols());
        let lands_in_kernel = same_map(&sx.homology[s], &fstar[s].mul(&q), &zero_x);
        let kills_image = same_map(hs, &q.mul(&fup[r]), &IntMatrix::zeros(hs.group.generators.len(), fup[r].cols()));
        let qd = hom_decompose(&cm.group.group, &hs.group.group, &q)?;
        let ks = hom_decompose(&hs.group.group, &sx.homology[s].group.group, &fstar[s])?;
        let onto = (0..ks.kernel_embedding.cols()).all(|j| qd.cokernel.is_zero_element(&ks.kernel_embedding.column(j)));
        let exact = (0..qd.kernel_embedding.cols()).all(|j| cokernel.cokernel.is_zero_element(&qd.kernel_embedding.column(j)));
        degrees.push(KernelDegree {
            degree: r as i64,
            homology_kernel: kernel.kernel.to_string(),
            cohomology_cokernel: cokernel.cokernel.to_string(),
            split_surjective,
            split_injective,
            cap_iso: lands_in_kernel && kills_image && onto && exact,
        });
    }
    let ok = degrees.iter().all(|d| d.split_surjective && d.split_injective && d.cap_iso);
    Ok(KernelReport { verdict: if ok { Verdict::Pass } else { Verdict::Fail }, degrees })
}
