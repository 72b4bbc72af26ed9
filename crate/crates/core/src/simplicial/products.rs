use super::cochain::{Chain, Cochain, Twist};
use super::space::SimplicialSpace;
use super::SpaceError;

pub fn boundary(k: &SimplicialSpace, c: &Chain) -> Result<Chain, SpaceError> {
    c.check(k)?;
    let mut out = Chain::zero(k, c.degree - 1, c.twist);
    if c.degree >= 1 {
        for (i, &x) in c.coeffs.iter().enumerate() {
            if x != 0 {
                for (f, s) in k.boundary_terms(c.degree as usize, i, c.twist) {
                    out.coeffs[f] += s * x;
                }
            }
        }
    }
    Ok(out)
}

/// `(du)(s) = u(ds)`.
pub fn coboundary(k: &SimplicialSpace, u: &Cochain) -> Result<Cochain, SpaceError> {
    u.check(k)?;
    let d = u.degree + 1;
    let mut out = Cochain::zero(k, d, u.twist);
    if d >= 1 && d as usize <= k.dim() {
        for i in 0..k.count(d) {
            out.values[i] = k.boundary_terms(d as usize, i, u.twist).iter().map(|&(f, s)| s * u.values[f]).sum();
        }
    }
    Ok(out)
}

/// Kronecker pairing `<u, c>`.
pub fn evaluate(u: &Cochain, c: &Chain) -> Result<i64, SpaceError> {
    if u.degree != c.degree || u.values.len() != c.coeffs.len() {
        return Err(SpaceError::Mismatch(format!("pairing a {}-cochain with a {}-chain", u.degree, c.degree)));
    }
    if u.twist != c.twist {
        return Err(SpaceError::Mismatch("pairing needs matching coefficient systems".into()));
    }
    Ok(u.values.iter().zip(&c.coeffs).map(|(a, b)| a * b).sum())
}

/// `(u cup v)(s) = u(front p-face) * v(back q-face)`, the value of `v`
/// transported back to the leading vertex.
pub fn cup(k: &SimplicialSpace, u: &Cochain, v: &Cochain) -> Result<Cochain, SpaceError> {
    u.check(k)?;
    v.check(k)?;
    let p = u.degree as usize;
    let d = u.degree + v.degree;
    let twist = u.twist.combine(v.twist);
    let mut out = Cochain::zero(k, d, twist);
    if d as usize > k.dim() {
        return Ok(out);
    }
    for i in 0..k.count(d) {
        let s = k.simplex(d as usize, i);
        let fu = u.values[k.index_of(&s[..=p]).unwrap()];
        if fu == 0 {
            continue;
        }
        let bv = v.values[k.index_of(&s[p..]).unwrap()];
        out.values[i] = fu * bv * k.transport(v.twist, s[p], s[0]);
    }
    Ok(out)
}

/// `u cap s = u(back m-face) * (front n-face)`.
///
/// Debug builds re-check `d(u cap z) = (-1)^{|z|-|u|} (du) cap z + u cap dz`.
pub fn cap(k: &SimplicialSpace, u: &Cochain, z: &Chain) -> Result<Chain, SpaceError> {
    let out = cap_raw(k, u, z)?;
    if cfg!(debug_assertions) {
        let lhs = boundary(k, &out)?;
        let mut rhs = Chain::zero(k, lhs.degree, lhs.twist);
        let du = coboundary(k, u)?;
        if du.degree <= z.degree {
            let n = z.degree - u.degree;
            let sign = if n % 2 == 0 { 1 } else { -1 };
            rhs = rhs.add(&cap_raw(k, &du, z)?.scale(sign));
        }
        if z.degree - 1 >= u.degree {
            rhs = rhs.add(&cap_raw(k, u, &boundary(k, z)?)?);
        }
        assert_eq!(lhs, rhs, "cap boundary identity");
    }
    Ok(out)
}

fn cap_raw(k: &SimplicialSpace, u: &Cochain, z: &Chain) -> Result<Chain, SpaceError> {
    u.check(k)?;
    z.check(k)?;
    let n = z.degree - u.degree;
    if n < 0 {
        return Err(SpaceError::Mismatch(format!("cap of a {}-cochain with a {}-chain", u.degree, z.degree)));
    }
    let nu = n as usize;
    let mut out = Chain::zero(k, n, u.twist.combine(z.twist));
    for (i, &x) in z.coeffs.iter().enumerate() {
        if x == 0 {
            continue;
        }
        let s = k.simplex(z.degree as usize, i);
        let bu = u.values[k.index_of(&s[nu..]).unwrap()];
        if bu != 0 {
            let f = k.index_of(&s[..=nu]).unwrap();
            out.coeffs[f] += x * bu * k.transport(u.twist, s[nu], s[0]);
        }
    }
    Ok(out)
}

/// Cap product built from the diagonal with the vertex order reversed:
/// `(-1)^{mn} u(front m-face) * (back n-face)`.
pub fn cap_reversed(k: &SimplicialSpace, u: &Cochain, z: &Chain) -> Result<Chain, SpaceError> {
    u.check(k)?;
    z.check(k)?;
    let m = u.degree as usize;
    let n = z.degree - u.degree;
    if n < 0 {
        return Err(SpaceError::Mismatch(format!("cap of a {}-cochain with a {}-chain", u.degree, z.degree)));
    }
    let sign = if (m as i64 * n) % 2 == 0 { 1 } else { -1 };
    let mut out = Chain::zero(k, n, u.twist.combine(z.twist));
    for (i, &x) in z.coeffs.iter().enumerate() {
        if x == 0 {
            continue;
        }
        let s = k.simplex(z.degree as usize, i);
        let fu = u.values[k.index_of(&s[..=m]).unwrap()];
        if fu != 0 {
            let b = k.index_of(&s[m..]).unwrap();
            let t = k.transport(u.twist, s[0], s[m]) * k.transport(z.twist, s[0], s[m]);
            out.coeffs[b] += sign * x * fu * t;
        }
    }
    Ok(out)
}

/// The product triangulation of `X x Y`: vertex `(x, y)` is `x * |V_Y| + y`,
/// simplices are chains increasing in both coordinates. The subcomplex is
/// `A_X x Y + X x A_Y`, the character is `w_X x w_Y`.
#[derive(Clone, Debug)]
pub struct ProductSpace {
    pub space: SimplicialSpace,
    pub x: SimplicialSpace,
    pub y: SimplicialSpace,
}

/// Monotone lattice paths from `(0,0)` to `(p,q)`: `false` = x-step, `true` = y-step.
pub fn lattice_paths(p: usize, q: usize) -> Vec<Vec<bool>> {
    if p == 0 && q == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    if p > 0 {
        for mut rest in lattice_paths(p - 1, q) {
            rest.insert(0, false);
            out.push(rest);
        }
    }
    if q > 0 {
        for mut rest in lattice_paths(p, q - 1) {
            rest.insert(0, true);
            out.push(rest);
        }
    }
    out
}

/// Sign of the shuffle: `(-1)^{#(y-step, x-step) pairs with the y-step first}`.
pub fn path_sign(path: &[bool]) -> i64 {
    let mut ys = 0;
    let mut inv = 0;
    for &step in path {
        if step {
            ys += 1;
        } else {
            inv += ys;
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

fn path_vertices(sx: &[usize], sy: &[usize], path: &[bool], ny: usize) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut v = vec![sx[0] * ny + sy[0]];
    for &step in path {
        if step {
            j += 1;
        } else {
            i += 1;
        }
        v.push(sx[i] * ny + sy[j]);
    }
    v
}

impl ProductSpace {
    pub fn new(x: &SimplicialSpace, y: &SimplicialSpace) -> Result<ProductSpace, SpaceError> {
        let ny = y.n_vertices();
        let prisms = |fx: &[Vec<usize>], fy: &[Vec<usize>]| -> Vec<Vec<usize>> {
            let mut out = Vec::new();
            for sx in fx {
                for sy in fy {
                    for path in lattice_paths(sx.len() - 1, sy.len() - 1) {
                        out.push(path_vertices(sx, sy, &path, ny));
                    }
                }
            }
            out
        };
        let fx = x.facets();
        let fy = y.facets();
        let mut space = SimplicialSpace::from_facets(x.n_vertices() * ny, &prisms(&fx, &fy))?;
        let mut sub = prisms(&x.sub_facets(), &fy);
        sub.extend(prisms(&fx, &y.sub_facets()));
        space = space.with_subcomplex(&sub)?;
        let neg: Vec<(usize, usize)> = space
            .simplices(1)
            .iter()
            .filter(|e| {
                let (a, b) = (e[0], e[1]);
                x.edge_sign(a / ny, b / ny) * y.edge_sign(a % ny, b % ny) == -1
            })
            .map(|e| (e[0], e[1]))
            .collect();
        space = space.with_character(&neg)?;
        Ok(ProductSpace { space, x: x.clone(), y: y.clone() })
    }

    pub fn ny(&self) -> usize {
        self.y.n_vertices()
    }

    pub fn split(&self, v: usize) -> (usize, usize) {
        (v / self.ny(), v % self.ny())
    }

    fn require_untwisted(&self, twists: &[Twist]) -> Result<(), SpaceError> {
        if twists.iter().any(|&t| t == Twist::W) {
            return Err(SpaceError::Unsupported("products are implemented for untwisted coefficients".into()));
        }
        Ok(())
    }

    /// Chain-level cross product via the shuffle map.
    pub fn cross(&self, c: &Chain, d: &Chain) -> Result<Chain, SpaceError> {
        c.check(&self.x)?;
        d.check(&self.y)?;
        self.require_untwisted(&[c.twist, d.twist])?;
        let (p, q) = (c.degree as usize, d.degree as usize);
        let mut out = Chain::zero(&self.space, c.degree + d.degree, Twist::Trivial);
        let paths = lattice_paths(p, q);
        for (i, &a) in c.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let sx = self.x.simplex(p, i);
            for (j, &b) in d.coeffs.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let sy = self.y.simplex(q, j);
                for path in &paths {
                    let v = path_vertices(sx, sy, path, self.ny());
                    let idx = self.space.index_of(&v).unwrap();
                    out.coeffs[idx] += path_sign(path) * a * b;
                }
            }
        }
        Ok(out)
    }

    /// Cochain cross product: `(u x v)(s) = u(pi_1 front p-face) v(pi_2 back q-face)`.
    pub fn cochain_cross(&self, u: &Cochain, v: &Cochain) -> Result<Cochain, SpaceError> {
        u.check(&self.x)?;
        v.check(&self.y)?;
        self.require_untwisted(&[u.twist, v.twist])?;
        let p = u.degree as usize;
        let d = u.degree + v.degree;
        let mut out = Cochain::zero(&self.space, d, Twist::Trivial);
        for i in 0..self.space.count(d) {
            let s = self.space.simplex(d as usize, i);
            let fx: Vec<usize> = s[..=p].iter().map(|&w| self.split(w).0).collect();
            let by: Vec<usize> = s[p..].iter().map(|&w| self.split(w).1).collect();
            if let (Some(a), Some(b)) = (self.x.index_of(&fx), self.y.index_of(&by)) {
                if strictly_increasing(&fx) && strictly_increasing(&by) {
                    out.values[i] = u.values[a] * v.values[b];
                }
            }
        }
        Ok(out)
    }

    /// Slant `u / z` of a `q`-cochain on `Y` with a chain on `X x Y`.
    pub fn slant(&self, u: &Cochain, z: &Chain) -> Result<Chain, SpaceError> {
        u.check(&self.y)?;
        z.check(&self.space).map_err(|_| SpaceError::Mismatch("slant target is not a chain on the product".into()))?;
        self.require_untwisted(&[u.twist, z.twist])?;
        let n = z.degree - u.degree;
        if n < 0 {
            return Err(SpaceError::Mismatch(format!("slant of a {}-cochain with a {}-chain", u.degree, z.degree)));
        }
        let nu = n as usize;
        let mut out = Chain::zero(&self.x, n, Twist::Trivial);
        for (i, &a) in z.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let s = self.space.simplex(z.degree as usize, i);
            let fx: Vec<usize> = s[..=nu].iter().map(|&w| self.split(w).0).collect();
            let by: Vec<usize> = s[nu..].iter().map(|&w| self.split(w).1).collect();
            if !strictly_increasing(&fx) || !strictly_increasing(&by) {
                continue;
            }
            let val = u.values[self.y.index_of(&by).unwrap()];
            if val != 0 {
                out.coeffs[self.x.index_of(&fx).unwrap()] += a * val;
            }
        }
        Ok(out)
    }

    /// Diagonal `s -> [(v_0,v_0), .., (v_n,v_n)]` (requires `X = Y`).
    pub fn diagonal(&self, c: &Chain) -> Result<Chain, SpaceError> {
        if self.x != self.y {
            return Err(SpaceError::Mismatch("diagonal needs a square product".into()));
        }
        c.check(&self.x)?;
        let ny = self.ny();
        let mut out = Chain::zero(&self.space, c.degree, c.twist);
        for (i, &a) in c.coeffs.iter().enumerate() {
            if a != 0 {
                let s = self.x.simplex(c.degree as usize, i);
                let v: Vec<usize> = s.iter().map(|&w| w * ny + w).collect();
                out.coeffs[self.space.index_of(&v).unwrap()] += a;
            }
        }
        Ok(out)
    }

    /// Pullback of a cochain along the diagonal.
    pub fn diagonal_pullback(&self, u: &Cochain) -> Result<Cochain, SpaceError> {
        if self.x != self.y {
            return Err(SpaceError::Mismatch("diagonal needs a square product".into()));
        }
        u.check(&self.space)?;
        let ny = self.ny();
        let mut out = Cochain::zero(&self.x, u.degree, u.twist);
        for (i, o) in out.values.iter_mut().enumerate() {
            let s = self.x.simplex(u.degree as usize, i);
            let v: Vec<usize> = s.iter().map(|&w| w * ny + w).collect();
            *o = u.values[self.space.index_of(&v).unwrap()];
        }
        Ok(out)
    }

    /// Pushforward along the first projection (degenerate images vanish).
    pub fn project_x(&self, z: &Chain) -> Result<Chain, SpaceError> {
        z.check(&self.space)?;
        let mut out = Chain::zero(&self.x, z.degree, z.twist);
        for (i, &a) in z.coeffs.iter().enumerate() {
            if a != 0 {
                let s = self.space.simplex(z.degree as usize, i);
                let fx: Vec<usize> = s.iter().map(|&w| self.split(w).0).collect();
                if strictly_increasing(&fx) {
                    out.coeffs[self.x.index_of(&fx).unwrap()] += a;
                }
            }
        }
        Ok(out)
    }
}

fn strictly_increasing(v: &[usize]) -> bool {
    v.windows(2).all(|w| w[0] < w[1])
}
