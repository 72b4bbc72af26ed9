//! Bundled triangulations used by tests, the self-test and the CLI.

use std::collections::BTreeMap;

use crate::endtowers::EndPeriodicComplex;
use crate::simplicial::{ProductSpace, SimplicialSpace};

fn space(n: usize, facets: &[Vec<usize>]) -> SimplicialSpace {
    SimplicialSpace::from_facets(n, facets).expect("corpus triangulation")
}

pub fn point() -> SimplicialSpace {
    space(1, &[vec![0]])
}

/// Path with `n` edges, vertices `0..=n`.
pub fn path(n: usize) -> SimplicialSpace {
    space(n + 1, &(0..n).map(|i| vec![i, i + 1]).collect::<Vec<_>>())
}

/// Interval with its two endpoints as subcomplex.
pub fn interval_pair() -> SimplicialSpace {
    path(1).with_subcomplex(&[vec![0], vec![1]]).unwrap()
}

/// Circle on `n >= 3` vertices.
pub fn circle(n: usize) -> SimplicialSpace {
    space(n, &(0..n).map(|i| vec![i, (i + 1) % n]).collect::<Vec<_>>())
}

/// The 2-simplex with its boundary as subcomplex.
pub fn disk() -> SimplicialSpace {
    space(3, &[vec![0, 1, 2]]).with_subcomplex(&[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap()
}

/// The 2-simplex, no subcomplex.
pub fn simplex2() -> SimplicialSpace {
    space(3, &[vec![0, 1, 2]])
}

/// Boundary of the `(n+1)`-simplex.
pub fn sphere(n: usize) -> SimplicialSpace {
    let verts: Vec<usize> = (0..n + 2).collect();
    let facets: Vec<Vec<usize>> = (0..n + 2)
        .map(|skip| verts.iter().copied().filter(|&v| v != skip).collect())
        .collect();
    space(n + 2, &facets)
}

/// Seven-vertex torus.
pub fn torus7() -> SimplicialSpace {
    let mut f = Vec::new();
    for i in 0..7 {
        f.push(vec![i, (i + 1) % 7, (i + 3) % 7]);
        f.push(vec![i, (i + 2) % 7, (i + 3) % 7]);
    }
    space(7, &f)
}

/// Six-vertex projective plane, untwisted.
pub fn rp2_untwisted() -> SimplicialSpace {
    let t = [
        [1, 2, 3], [1, 3, 4], [1, 4, 5], [1, 5, 6], [1, 2, 6],
        [2, 3, 5], [2, 4, 5], [2, 4, 6], [3, 4, 6], [3, 5, 6],
    ];
    space(6, &t.iter().map(|s| s.iter().map(|v| v - 1).collect()).collect::<Vec<_>>())
}

/// Six-vertex projective plane with its orientation character.
pub fn rp2() -> SimplicialSpace {
    rp2_untwisted().with_orientation_character().unwrap()
}

fn grid_surface(m: usize, n: usize, flip: bool) -> (SimplicialSpace, BTreeMap<(i64, i64), usize>) {
    let (mi, ni) = (m as i64, n as i64);
    let canon = |x: i64, y: i64| -> (i64, i64) {
        let w = y.div_euclid(ni);
        let y2 = y.rem_euclid(ni);
        let x2 = if flip && w.rem_euclid(2) == 1 { -x } else { x };
        (x2.rem_euclid(mi), y2)
    };
    let idx = |p: (i64, i64)| (p.0 * ni + p.1) as usize;
    let mut f = Vec::new();
    for i in 0..mi {
        for j in 0..ni {
            let a = idx(canon(i, j));
            let b = idx(canon(i + 1, j));
            let c = idx(canon(i + 1, j + 1));
            let d = idx(canon(i, j + 1));
            f.push(vec![a, b, c]);
            f.push(vec![a, d, c]);
        }
    }
    let map = (0..mi).flat_map(|x| (0..ni).map(move |y| ((x, y), (x * ni + y) as usize))).collect();
    (space(m * n, &f), map)
}

/// Torus from an `m x n` grid.
pub fn torus_grid(m: usize, n: usize) -> SimplicialSpace {
    grid_surface(m, n, false).0
}

/// Klein bottle from a 4x4 grid with a glide identification, with its orientation character.
pub fn klein_bottle() -> SimplicialSpace {
    grid_surface(4, 4, true).0.with_orientation_character().unwrap()
}

/// The Klein bottle split along the circle `x = 1, 3` into two Moebius bands:
/// returns (Klein bottle, facets of the band around x = 0, facets of the band around x = 2).
pub fn klein_bottle_halves() -> (SimplicialSpace, Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let k = klein_bottle();
    let n = 4usize;
    let mut y0 = Vec::new();
    let mut y1 = Vec::new();
    for t in k.simplices(2) {
        let xs: Vec<usize> = t.iter().map(|v| v / n).collect();
        if xs.iter().all(|&x| x == 3 || x == 0 || x == 1) && xs.contains(&0) {
            y0.push(t.clone());
        } else {
            y1.push(t.clone());
        }
    }
    (k, y0, y1)
}

/// Five-vertex Moebius band with its boundary circle and orientation character.
pub fn mobius() -> SimplicialSpace {
    let f: Vec<Vec<usize>> = (0..5).map(|i| vec![i, (i + 1) % 5, (i + 2) % 5]).collect();
    let bd: Vec<Vec<usize>> = (0..5).map(|i| vec![i, (i + 2) % 5]).collect();
    space(5, &f).with_subcomplex(&bd).unwrap().with_orientation_character().unwrap()
}

/// Circle on 0,1,2 wedged with the tetrahedron boundary on 2,3,4,5.
pub fn s1_wedge_s2() -> SimplicialSpace {
    space(6, &[vec![0, 1], vec![1, 2], vec![0, 2], vec![2, 3, 4], vec![2, 3, 5], vec![2, 4, 5], vec![3, 4, 5]])
}

/// Annulus: 3-vertex circle times an interval, boundary the two end circles.
pub fn annulus() -> SimplicialSpace {
    ProductSpace::new(&circle(3), &interval_pair()).unwrap().space
}

/// `S^1 x S^2` as a product triangulation (12 vertices).
pub fn s1_x_s2() -> SimplicialSpace {
    ProductSpace::new(&circle(3), &sphere(2)).unwrap().space
}

/// `S^1 x [0, 2]` on the 3-vertex circle, both end circles as subcomplex.
pub fn long_annulus() -> SimplicialSpace {
    let p = path(2).with_subcomplex(&[vec![0], vec![2]]).unwrap();
    ProductSpace::new(&circle(3), &p).unwrap().space
}

/// The long annulus cut along its middle circle: (space, facets with `t <= 1`, facets with `t >= 1`).
pub fn long_annulus_halves() -> (SimplicialSpace, Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let k = long_annulus();
    let (lo, hi): (Vec<Vec<usize>>, Vec<Vec<usize>>) = k.simplices(2).iter().cloned().partition(|t| t.iter().all(|v| v % 3 <= 1));
    (k, lo, hi)
}

/// Degree one collapse of a closed `n`-manifold onto the boundary of the
/// `(n+1)`-simplex: the first top simplex goes onto a face, all other
/// vertices to the last vertex.
pub fn collapse_map(m: &SimplicialSpace) -> (SimplicialSpace, Vec<usize>) {
    let n = m.dim();
    let sigma = m.simplices(n)[0].clone();
    let f = (0..m.n_vertices()).map(|v| sigma.iter().position(|&s| s == v).unwrap_or(n + 1)).collect();
    (sphere(n), f)
}

/// Named closed manifolds and manifold pairs of the corpus.
pub fn manifolds() -> Vec<(&'static str, SimplicialSpace)> {
    vec![
        ("point", point()),
        ("circle", circle(3)),
        ("interval", interval_pair()),
        ("disk", disk()),
        ("sphere2", sphere(2)),
        ("torus", torus7()),
        ("rp2", rp2()),
        ("klein", klein_bottle()),
        ("mobius", mobius()),
        ("annulus", annulus()),
        ("sphere3", sphere(3)),
        ("s1xs2", s1_x_s2()),
    ]
}

/// All named corpus spaces, including non-manifolds.
pub fn spaces() -> Vec<(&'static str, SimplicialSpace)> {
    let mut v = manifolds();
    v.push(("s1_wedge_s2", s1_wedge_s2()));
    v.push(("simplex2", simplex2()));
    v.push(("rp2_untwisted", rp2_untwisted()));
    v
}

fn end_periodic(core: SimplicialSpace, ends: Vec<Vec<Vec<usize>>>) -> EndPeriodicComplex {
    EndPeriodicComplex::new(core, ends).expect("corpus end-periodic complex")
}

/// The real line: an edge with a collar at each endpoint.
pub fn line() -> EndPeriodicComplex {
    end_periodic(path(1), vec![vec![vec![0]], vec![vec![1]]])
}

/// The half line: an edge with a collar at vertex 1.
pub fn ray() -> EndPeriodicComplex {
    end_periodic(path(1), vec![vec![vec![1]]])
}

/// The plane: a cone on the 3-vertex circle with a collar along the circle.
pub fn plane() -> EndPeriodicComplex {
    let core = space(4, &[vec![0, 1, 3], vec![1, 2, 3], vec![0, 2, 3]]);
    end_periodic(core, vec![vec![vec![0, 1], vec![1, 2], vec![0, 2]]])
}

/// `S^1 x R`: the annulus with collars on both boundary circles.
pub fn cylinder() -> EndPeriodicComplex {
    let core = annulus().with_sub_replaced(&[]).unwrap();
    end_periodic(core, vec![vec![vec![0, 2], vec![2, 4], vec![0, 4]], vec![vec![1, 3], vec![3, 5], vec![1, 5]]])
}

/// Named end-periodic complexes.
pub fn end_periodic_spaces() -> BTreeMap<&'static str, EndPeriodicComplex> {
    BTreeMap::from([("line", line()), ("ray", ray()), ("plane", plane()), ("cylinder", cylinder())])
}
