use serde::Serialize;

use super::{check_cycle, class_map, same_map, twist_name, DualityError, Groups};
use crate::simplicial::{boundary, cap, coboundary, Chain, Cochain, Rel, SimplicialSpace, Twist};
use crate::torsion::Verdict;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SquareCheck {
    /// `coboundary`: `H^{m-1}(A) -> H^m(X, A)` over `H_{n-m}(A) -> H_{n-m}(X)`;
    /// `inclusion`: `H^m(X, A) -> H^m(X)` over `H_{n-m}(X) -> H_{n-m}(X, A)`;
    /// `restriction`: `H^m(X) -> H^m(A)` over `H_{n-m}(X, A) -> H_{n-m-1}(A)`.
    pub square: String,
    pub degree: i64,
    /// Sign used on the subspace column.
    pub sign: i64,
    pub commutes: bool,
    /// Whether it also commutes when the connecting map is `[a] -> [d a~]` with no sign.
    pub unsigned_connecting_commutes: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BrowderReport {
    pub verdict: Verdict,
    pub vacuous: bool,
    pub coefficients: String,
    pub squares: Vec<SquareCheck>,
}

fn cochain(m: i64, c: Twist, v: &[i64]) -> Cochain {
    Cochain { degree: m, twist: c, values: v.to_vec() }
}

fn pow(n: i64) -> i64 {
    if n.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// The ladder of the pair `(X, A)` under cap with `z` and with
/// `(-1)^{n-1} dz` on the coboundary square, cochains in `gamma`. The
/// cohomology connecting map sends `[a]` to `(-1)^{|a|} [d a~]`.
pub fn browder_check(k: &SimplicialSpace, z: &Chain, gamma: Twist) -> Result<BrowderReport, DualityError> {
    check_cycle(k, z)?;
    let coefficients = twist_name(gamma).to_string();
    if !k.has_subcomplex() {
        return Ok(BrowderReport { verdict: Verdict::Pass, vacuous: true, coefficients, squares: vec![] });
    }
    let n = z.degree;
    let dz = boundary(k, z)?;
    let t = gamma.combine(z.twist);
    let mut squares = Vec::new();
    for m in 0..=n {
        // coboundary square
        if m >= 1 {
            let src = Groups::cohomology(k, gamma, Rel::Sub, m - 1);
            let tgt = Groups::homology(k, t, Rel::Absolute, n - m);
            let down_right = class_map(&src, &tgt, |a| {
                let da = coboundary(k, &cochain(m - 1, gamma, a))?;
                Ok(cap(k, &da, z)?.coeffs)
            })?;
            let right_down = class_map(&src, &tgt, |a| Ok(cap(k, &cochain(m - 1, gamma, a), &dz)?.coeffs))?;
            let printed = pow(n - 1);
            let connecting = pow(m - 1);
            squares.push(SquareCheck {
                square: "coboundary".into(),
                degree: m,
                sign: printed,
                commutes: same_map(&tgt, &down_right.scale(connecting), &right_down.scale(printed)),
                unsigned_connecting_commutes: same_map(&tgt, &down_right, &right_down.scale(printed)),
            });
        }
        // inclusion square
        {
            let src = Groups::cohomology(k, gamma, Rel::Relative, m);
            let tgt = Groups::homology(k, t, Rel::Relative, n - m);
            let via_abs_cochains = class_map(&src, &tgt, |u| Ok(cap(k, &cochain(m, gamma, u), z)?.coeffs))?;
            let mid = Groups::homology(k, t, Rel::Absolute, n - m);
            let to_abs = class_map(&src, &mid, |u| Ok(cap(k, &cochain(m, gamma, u), z)?.coeffs))?;
            let quotient = class_map(&mid, &tgt, |c| Ok(c.to_vec()))?;
            let ok = same_map(&tgt, &via_abs_cochains, &quotient.mul(&to_abs));
            squares.push(SquareCheck { square: "inclusion".into(), degree: m, sign: 1, commutes: ok, unsigned_connecting_commutes: ok });
        }
        // restriction square
        if n - m - 1 >= 0 {
            let src = Groups::cohomology(k, gamma, Rel::Absolute, m);
            let tgt = Groups::homology(k, t, Rel::Sub, n - m - 1);
            let mid = Groups::homology(k, t, Rel::Relative, n - m);
            let down = class_map(&src, &mid, |u| Ok(cap(k, &cochain(m, gamma, u), z)?.coeffs))?;
            let conn = class_map(&mid, &tgt, |c| {
                Ok(boundary(k, &Chain { degree: n - m, twist: t, coeffs: c.to_vec() })?.coeffs)
            })?;
            let right_down = class_map(&src, &tgt, |u| Ok(cap(k, &cochain(m, gamma, u), &dz)?.coeffs))?;
            let ok = same_map(&tgt, &conn.mul(&down), &right_down);
            squares.push(SquareCheck { square: "restriction".into(), degree: m, sign: 1, commutes: ok, unsigned_connecting_commutes: ok });
        }
    }
    let verdict = if squares.iter().all(|s| s.commutes) { Verdict::Pass } else { Verdict::Fail };
    Ok(BrowderReport { verdict, vacuous: false, coefficients, squares })
}
