//! Small exact test problems: grids, a square annulus, a solid torus, a
//! double well on an interval, and a few classical complexes.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::complex::{Simplex, SimplicialComplex, VertexId};
use crate::filtration::{Filtration, FiltrationError, NormKind, PLMap, RadiiSchedule};
use crate::Q;

fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

fn int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// A problem instance `(K, B, f, norm, radii)` with vertex positions.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub k: SimplicialComplex,
    pub b: SimplicialComplex,
    pub f: PLMap,
    pub norm: NormKind,
    /// The radius the fixture is mainly about.
    pub radius: Q,
    pub radii: RadiiSchedule,
    /// Geometric position of every vertex.
    pub positions: BTreeMap<VertexId, Vec<Q>>,
}

impl Fixture {
    /// Builds the filtration, with `B` or with `B = ∅`.
    pub fn filtration(&self, with_b: bool) -> Result<Filtration, FiltrationError> {
        let empty = SimplicialComplex::new();
        let b = if with_b { &self.b } else { &empty };
        Filtration::new(&self.k, b, &self.f, self.radii.clone(), self.norm)
    }
}

/// A triangulated rectangle grid. Vertex `(i, j)` has id `i·ys.len() + j`.
/// Each cell is split along the diagonal chosen by `main_diagonal(i, j)`
/// (lower-left to upper-right when true).
pub fn grid<F>(xs: &[Q], ys: &[Q], mut main_diagonal: F) -> (SimplicialComplex, BTreeMap<VertexId, Vec<Q>>)
where
    F: FnMut(usize, usize) -> bool,
{
    let ny = ys.len();
    let id = |i: usize, j: usize| (i * ny + j) as u32;
    let mut tris = Vec::new();
    for i in 0..xs.len() - 1 {
        for j in 0..ny - 1 {
            let (a, b, c, d) = (id(i, j), id(i + 1, j), id(i, j + 1), id(i + 1, j + 1));
            if main_diagonal(i, j) {
                tris.push(Simplex::from_ids(&[a, b, d]));
                tris.push(Simplex::from_ids(&[a, c, d]));
            } else {
                tris.push(Simplex::from_ids(&[a, b, c]));
                tris.push(Simplex::from_ids(&[b, c, d]));
            }
        }
    }
    let mut pos = BTreeMap::new();
    for (i, x) in xs.iter().enumerate() {
        for (j, y) in ys.iter().enumerate() {
            pos.insert(VertexId(id(i, j)), alloc::vec![x.clone(), y.clone()]);
        }
    }
    (SimplicialComplex::from_maximal(tris), pos)
}

fn map_from<F: Fn(&[Q]) -> Vec<Q>>(n: usize, pos: &BTreeMap<VertexId, Vec<Q>>, f: F) -> PLMap {
    PLMap::new(n, pos.iter().map(|(v, p)| (*v, f(p))).collect()).expect("fixture map")
}

/// `K = [-1,1]²` on a 3×3 grid, `f(x, y) = y`, `B` = the two vertical sides,
/// `r = 1/2`, sup norm.
pub fn band() -> Fixture {
    let coords = [int(-1), int(0), int(1)];
    let (k, pos) = grid(&coords, &coords, |_, _| true);
    let b = k.filter(|s| {
        let xs: Vec<&Q> = s.vertices().iter().map(|v| &pos[v][0]).collect();
        xs.iter().all(|x| **x == int(-1)) || xs.iter().all(|x| **x == int(1))
    });
    let f = map_from(1, &pos, |p| alloc::vec![p[1].clone()]);
    Fixture {
        name: "band",
        k,
        b,
        f,
        norm: NormKind::LInf,
        radius: q(1, 2),
        radii: RadiiSchedule::single(q(1, 2)).expect("radius"),
        positions: pos,
    }
}

/// `f = ‖·‖∞ − 2` on `[-h, h]²` with unit grid and diagonals along `|x| = |y|`,
/// so that `f` is exactly simplexwise linear. `r = 1`, `B = ∅`.
fn square_annulus_of(h: i64, name: &'static str) -> Fixture {
    let coords: Vec<Q> = (-h..=h).map(int).collect();
    let (k, pos) = grid(&coords, &coords, |i, j| {
        // Cell centre sign decides the diagonal.
        let cx = 2 * i as i64 + 1 - 2 * h;
        let cy = 2 * j as i64 + 1 - 2 * h;
        cx * cy > 0
    });
    let f = map_from(1, &pos, |p| alloc::vec![NormKind::LInf.norm(p) - int(2)]);
    Fixture {
        name,
        k,
        b: SimplicialComplex::new(),
        f,
        norm: NormKind::LInf,
        radius: int(1),
        radii: RadiiSchedule::single(int(1)).expect("radius"),
        positions: pos,
    }
}

/// `K = [-3,3]²`: `X = {1 ≤ ‖·‖∞ ≤ 3}`, `A` = both boundary squares.
pub fn square_annulus() -> Fixture {
    square_annulus_of(3, "square-annulus")
}

/// `K = [-2,2]²`: `X = {1 ≤ ‖·‖∞ ≤ 2}`, `A` = the inner square only.
pub fn square_annulus_small() -> Fixture {
    square_annulus_of(2, "square-annulus-small")
}

/// `S¹ × [-1,1]²` with the circle as a 3-cycle and the square as a 3×3 grid,
/// each cube cut into six simplices by the staircase rule. `f = (y1, y2)`,
/// `n = 2`, `r = 1/2`, `B = ∅`. Vertex `(c, i, j)` has id `9c + 3i + j`.
pub fn solid_torus() -> Fixture {
    let grid_coords = [int(-1), int(0), int(1)];
    let id = |c: usize, i: usize, j: usize| (9 * (c % 3) + 3 * i + j) as u32;
    let mut simplices = Vec::new();
    let perms: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    for c in 0..3 {
        for i in 0..2 {
            for j in 0..2 {
                for p in &perms {
                    let mut at = [c, i, j];
                    let mut vs = alloc::vec![id(at[0], at[1], at[2])];
                    for &axis in p {
                        at[axis] += 1;
                        vs.push(id(at[0], at[1], at[2]));
                    }
                    simplices.push(Simplex::from_ids(&vs));
                }
            }
        }
    }
    let mut pos = BTreeMap::new();
    for c in 0..3 {
        for i in 0..3 {
            for j in 0..3 {
                pos.insert(
                    VertexId(id(c, i, j)),
                    alloc::vec![int(c as i64), grid_coords[i].clone(), grid_coords[j].clone()],
                );
            }
        }
    }
    let f = map_from(2, &pos, |p| alloc::vec![p[1].clone(), p[2].clone()]);
    Fixture {
        name: "solid-torus",
        k: SimplicialComplex::from_maximal(simplices),
        b: SimplicialComplex::new(),
        f,
        norm: NormKind::LInf,
        radius: q(1, 2),
        radii: RadiiSchedule::single(q(1, 2)).expect("radius"),
        positions: pos,
    }
}

/// Path through `x = -3, -2, 0, 2, 3` with `f = -3/2, 0, 3/2, 0, -3/2`;
/// radii `3/2 > 1/2`.
pub fn double_well() -> Fixture {
    let xs = [-3, -2, 0, 2, 3];
    let fs = [q(-3, 2), int(0), q(3, 2), int(0), q(-3, 2)];
    let k = SimplicialComplex::from_maximal((0..4u32).map(|i| Simplex::from_ids(&[i, i + 1])));
    let pos: BTreeMap<VertexId, Vec<Q>> = xs
        .iter()
        .enumerate()
        .map(|(i, &x)| (VertexId(i as u32), alloc::vec![int(x)]))
        .collect();
    let f = PLMap::new(
        1,
        fs.iter().enumerate().map(|(i, y)| (VertexId(i as u32), alloc::vec![y.clone()])).collect(),
    )
    .expect("fixture map");
    Fixture {
        name: "double-well",
        k,
        b: SimplicialComplex::new(),
        f,
        norm: NormKind::LInf,
        radius: q(1, 2),
        radii: RadiiSchedule::new(alloc::vec![q(3, 2), q(1, 2)]).expect("radii"),
        positions: pos,
    }
}

/// Four triangles fanned around an off-centre vertex of `[-1,1]²`;
/// `f` is the identity chart (`n = m = 2`), `r = 1/2`, `B = ∅`. No vertex or
/// edge of the cut complex passes through the origin.
pub fn square_chart() -> Fixture {
    let pts = [
        alloc::vec![int(-1), int(-1)],
        alloc::vec![int(1), int(-1)],
        alloc::vec![int(1), int(1)],
        alloc::vec![int(-1), int(1)],
        alloc::vec![q(1, 3), q(1, 5)],
    ];
    let k = SimplicialComplex::from_maximal(
        [[0, 1, 4], [1, 2, 4], [2, 3, 4], [0, 3, 4]].iter().map(|s| Simplex::from_ids(s)),
    );
    let pos: BTreeMap<VertexId, Vec<Q>> = pts.iter().enumerate().map(|(i, p)| (VertexId(i as u32), p.clone())).collect();
    let f = map_from(2, &pos, |p| p.to_vec());
    Fixture {
        name: "square-chart",
        k,
        b: SimplicialComplex::new(),
        f,
        norm: NormKind::LInf,
        radius: q(1, 2),
        radii: RadiiSchedule::single(q(1, 2)).expect("radius"),
        positions: pos,
    }
}

/// The standard `m`-simplex on vertices `0..=m`.
pub fn standard_simplex(m: u32) -> SimplicialComplex {
    SimplicialComplex::from_maximal([Simplex::from_ids(&(0..=m).collect::<Vec<_>>())])
}

/// A map `Δ^m → R^m` with a single zero at the barycenter and none on the
/// boundary: `v0 ↦ (-1,…,-1)`, `vi ↦ (m+1)e_i − (1,…,1)`.
pub fn simplex_chart(m: u32) -> PLMap {
    let n = m as usize;
    let values = (0..=m)
        .map(|i| {
            let mut x = alloc::vec![int(-1); n];
            if i > 0 {
                x[i as usize - 1] += int(m as i64 + 1);
            }
            (VertexId(i), x)
        })
        .collect();
    PLMap::new(n, values).expect("chart")
}

/// The 6-vertex real projective plane.
pub fn projective_plane() -> SimplicialComplex {
    let tris: [[u32; 3]; 10] = [
        [1, 2, 4],
        [1, 2, 6],
        [1, 3, 5],
        [1, 3, 6],
        [1, 4, 5],
        [2, 3, 4],
        [2, 3, 5],
        [2, 5, 6],
        [3, 4, 6],
        [4, 5, 6],
    ];
    SimplicialComplex::from_maximal(tris.iter().map(|t| Simplex::from_ids(&[t[0] - 1, t[1] - 1, t[2] - 1])))
}
