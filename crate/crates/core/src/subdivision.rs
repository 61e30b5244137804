//! Face-compatible subdivision of a complex by an affine level set.
//!
//! Every simplex is retriangulated by pulling from its smallest vertex, and a
//! simplex's triangulation is built on top of the triangulations already
//! chosen for its facets. Since the choices depend only on vertex ids and on
//! which side of the level each vertex lies, two simplices sharing a face
//! always agree on that face.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::complex::{Simplex, SimplicialComplex, VertexId};
use crate::Q;

/// Barycentric coordinates of a target vertex with respect to source vertices.
pub type Barycentric = BTreeMap<VertexId, Q>;

/// A subdivision `target` of `source` with exact barycentric bookkeeping.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubdivisionRecord {
    pub source: SimplicialComplex,
    pub target: SimplicialComplex,
    /// Smallest source simplex containing each target simplex.
    pub carrier: BTreeMap<Simplex, Simplex>,
    /// Every target vertex as a convex combination of source vertices.
    pub vertex_coords: BTreeMap<VertexId, Barycentric>,
}

impl SubdivisionRecord {
    /// The trivial subdivision.
    pub fn identity(complex: &SimplicialComplex) -> Self {
        let vertex_coords = complex
            .vertices()
            .map(|v| (v, BTreeMap::from([(v, Q::one())])))
            .collect();
        let carrier = complex.all_simplices().map(|s| (s.clone(), s.clone())).collect();
        SubdivisionRecord {
            source: complex.clone(),
            target: complex.clone(),
            carrier,
            vertex_coords,
        }
    }

    /// Builds the record from target and coordinates, deriving carriers.
    pub fn from_parts(
        source: SimplicialComplex,
        target: SimplicialComplex,
        vertex_coords: BTreeMap<VertexId, Barycentric>,
    ) -> Self {
        let carrier = target
            .all_simplices()
            .map(|s| (s.clone(), support(&vertex_coords, s)))
            .collect();
        SubdivisionRecord {
            source,
            target,
            carrier,
            vertex_coords,
        }
    }

    /// `self` followed by `next` (which must subdivide `self.target`).
    pub fn compose(&self, next: &SubdivisionRecord) -> SubdivisionRecord {
        debug_assert_eq!(next.source, self.target);
        let vertex_coords: BTreeMap<VertexId, Barycentric> = next
            .vertex_coords
            .iter()
            .map(|(w, coords)| {
                let mut out: Barycentric = BTreeMap::new();
                for (u, a) in coords {
                    for (v, b) in &self.vertex_coords[u] {
                        *out.entry(*v).or_insert_with(Q::zero) += a * b;
                    }
                }
                out.retain(|_, x| !x.is_zero());
                (*w, out)
            })
            .collect();
        SubdivisionRecord::from_parts(self.source.clone(), next.target.clone(), vertex_coords)
    }

    pub fn carrier_of(&self, s: &Simplex) -> Option<&Simplex> {
        self.carrier.get(s)
    }

    /// Interpolates vertex values of the source to every target vertex.
    pub fn interpolate<T, F>(&self, mut value: F) -> BTreeMap<VertexId, Vec<Q>>
    where
        F: FnMut(VertexId) -> T,
        T: AsRef<[Q]>,
    {
        let mut cache: BTreeMap<VertexId, Vec<Q>> = BTreeMap::new();
        let mut out = BTreeMap::new();
        for (w, coords) in &self.vertex_coords {
            let mut acc: Option<Vec<Q>> = None;
            for (v, a) in coords {
                let val = cache.entry(*v).or_insert_with(|| value(*v).as_ref().to_vec());
                match acc.as_mut() {
                    None => acc = Some(val.iter().map(|x| x * a).collect()),
                    Some(s) => {
                        for (si, x) in s.iter_mut().zip(val.iter()) {
                            *si += x * a;
                        }
                    }
                }
            }
            out.insert(*w, acc.unwrap_or_default());
        }
        out
    }
}

fn support(coords: &BTreeMap<VertexId, Barycentric>, s: &Simplex) -> Simplex {
    let mut vs: BTreeSet<VertexId> = BTreeSet::new();
    for v in s.vertices() {
        vs.extend(coords[v].keys().copied());
    }
    Simplex::from_vec_unchecked(vs.into_iter().collect())
}

fn sign(x: &Q) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Cuts `complex` by the level set `{h = level}` of a function that is affine
/// on each simplex and given by its vertex values.
///
/// Vertices on the level are reused; each edge crossing it strictly gets one
/// new vertex, numbered after all existing ids in lexicographic edge order.
///
/// Panics if a vertex has no value in `h`.
pub fn cut_by_hyperplane(complex: &SimplicialComplex, h: &BTreeMap<VertexId, Q>, level: &Q) -> SubdivisionRecord {
    let side: BTreeMap<VertexId, i8> = complex
        .vertices()
        .map(|v| {
            let hv = h.get(&v).unwrap_or_else(|| panic!("no value for vertex {v}"));
            (v, sign(&(hv - level)))
        })
        .collect();

    let mut vertex_coords: BTreeMap<VertexId, Barycentric> = complex
        .vertices()
        .map(|v| (v, BTreeMap::from([(v, Q::one())])))
        .collect();
    let mut next_id = complex.max_vertex_id().map_or(0, |v| v.0 + 1);
    let mut edge_vertex: BTreeMap<Simplex, VertexId> = BTreeMap::new();
    for e in complex.simplices(1) {
        let (a, b) = (e.vertices()[0], e.vertices()[1]);
        if side[&a] * side[&b] != -1 {
            continue;
        }
        let (ha, hb) = (&h[&a], &h[&b]);
        let t = (level - ha) / (hb - ha);
        let w = VertexId(next_id);
        next_id += 1;
        vertex_coords.insert(w, BTreeMap::from([(a, Q::one() - &t), (b, t)]));
        edge_vertex.insert(e.clone(), w);
    }
    let new_side = |v: &VertexId| side.get(v).copied().unwrap_or(0);

    let mut tri: BTreeMap<Simplex, BTreeSet<Simplex>> = BTreeMap::new();
    let dim = complex.dim().unwrap_or(0);
    for d in 1..=dim {
        for sigma in complex.simplices(d) {
            let cut = sigma.vertices().iter().any(|v| side[v] < 0) && sigma.vertices().iter().any(|v| side[v] > 0);
            if !cut {
                continue;
            }
            let t = if d == 1 {
                let w = edge_vertex[sigma];
                let (a, b) = (sigma.vertices()[0], sigma.vertices()[1]);
                BTreeSet::from([
                    Simplex::vertex(a),
                    Simplex::vertex(b),
                    Simplex::vertex(w),
                    Simplex::from_vec_unchecked(alloc::vec![a, w]),
                    Simplex::from_vec_unchecked(alloc::vec![b, w]),
                ])
            } else {
                triangulate_cut(sigma, &tri, &vertex_coords, &new_side)
            };
            tri.insert(sigma.clone(), t);
        }
    }

    let mut target = SimplicialComplex::new();
    for s in complex.all_simplices() {
        match tri.get(s) {
            Some(t) => {
                for x in t {
                    target.insert_with_faces(x);
                }
            }
            None => target.insert_with_faces(s),
        }
    }
    SubdivisionRecord::from_parts(complex.clone(), target, vertex_coords)
}

fn triangulation_of(
    s: &Simplex,
    tri: &BTreeMap<Simplex, BTreeSet<Simplex>>,
) -> BTreeSet<Simplex> {
    match tri.get(s) {
        Some(t) => t.clone(),
        None => s.faces().into_iter().collect(),
    }
}

fn triangulate_cut(
    sigma: &Simplex,
    tri: &BTreeMap<Simplex, BTreeSet<Simplex>>,
    coords: &BTreeMap<VertexId, Barycentric>,
    side: &dyn Fn(&VertexId) -> i8,
) -> BTreeSet<Simplex> {
    let d = sigma.dim();
    let mut boundary: BTreeSet<Simplex> = BTreeSet::new();
    for (_, f) in sigma.facets() {
        boundary.extend(triangulation_of(&f, tri));
    }
    let spans = |s: &Simplex| support(coords, s) == *sigma;
    let on_plane = |s: &Simplex| s.vertices().iter().all(|v| side(v) == 0);

    // Cross-section: on-level part of the boundary, pulled from its least vertex.
    let section_boundary: Vec<Simplex> = boundary.iter().filter(|s| on_plane(s)).cloned().collect();
    let mut section: BTreeSet<Simplex> = section_boundary.iter().cloned().collect();
    if let Some(wc) = section_boundary.iter().map(|s| s.min_vertex()).min() {
        for tau in section_boundary.iter().filter(|s| s.dim() + 2 == d) {
            if tau.contains_vertex(wc) {
                continue;
            }
            let cone = tau.with_vertex(wc);
            if spans(&cone) {
                section.extend(cone.faces());
            }
        }
    }

    let mut out = boundary.clone();
    out.extend(section.iter().cloned());
    for half in [-1i8, 1] {
        let shell: BTreeSet<Simplex> = boundary
            .iter()
            .filter(|s| s.vertices().iter().all(|v| side(v) * half >= 0))
            .chain(section.iter())
            .cloned()
            .collect();
        let Some(w) = shell.iter().map(|s| s.min_vertex()).min() else {
            continue;
        };
        let w_on = side(&w) == 0;
        for rho in shell.iter().filter(|s| s.dim() + 1 == d) {
            if rho.contains_vertex(w) || (w_on && on_plane(rho)) {
                continue;
            }
            let cone = rho.with_vertex(w);
            if spans(&cone) {
                out.extend(cone.faces());
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use num_bigint::BigInt;

    fn q(n: i64) -> Q {
        Q::from_integer(BigInt::from(n))
    }

    fn values(v: &[i64]) -> BTreeMap<VertexId, Q> {
        v.iter().enumerate().map(|(i, &x)| (VertexId(i as u32), q(x))).collect()
    }

    #[test]
    fn edge_is_split_at_midpoint() {
        let c = SimplicialComplex::from_maximal([Simplex::from_ids(&[0, 1])]);
        let rec = cut_by_hyperplane(&c, &values(&[-1, 1]), &q(0));
        assert_eq!(rec.target.count(1), 2);
        let w = VertexId(2);
        assert_eq!(rec.vertex_coords[&w][&VertexId(0)], Q::new(1.into(), 2.into()));
        assert_eq!(rec.carrier[&Simplex::from_ids(&[0, 2])], Simplex::from_ids(&[0, 1]));
        assert!(rec.target.validate().is_ok());
    }

    #[test]
    fn untouched_triangle() {
        let c = SimplicialComplex::from_maximal([Simplex::from_ids(&[0, 1, 2])]);
        let rec = cut_by_hyperplane(&c, &values(&[1, 2, 3]), &q(0));
        assert_eq!(rec.target, c);
    }

    #[test]
    fn triangle_with_one_vertex_above() {
        let c = SimplicialComplex::from_maximal([Simplex::from_ids(&[0, 1, 2])]);
        let rec = cut_by_hyperplane(&c, &values(&[-1, -1, 1]), &q(0));
        // New vertices: 3 on [0,2], 4 on [1,2].
        let tris: Vec<Simplex> = rec.target.simplices(2).cloned().collect();
        assert_eq!(
            tris,
            vec![Simplex::from_ids(&[0, 1, 4]), Simplex::from_ids(&[0, 3, 4]), Simplex::from_ids(&[2, 3, 4])]
        );
        // The other diagonal [1,3] is not used: pulling from vertex 0 picks [0,4].
        assert!(!rec.target.contains(&Simplex::from_ids(&[1, 3])));
        assert_eq!(rec.target.euler_characteristic(), 1);
    }

    #[test]
    fn adjacent_triangles_agree_on_shared_edge() {
        let c = SimplicialComplex::from_maximal([Simplex::from_ids(&[0, 1, 2]), Simplex::from_ids(&[1, 2, 3])]);
        let rec = cut_by_hyperplane(&c, &values(&[-1, -1, 1, 1]), &q(0));
        assert!(rec.target.validate().is_ok());
        for t in [Simplex::from_ids(&[0, 1, 2]), Simplex::from_ids(&[1, 2, 3])] {
            let inside: Vec<&Simplex> = rec
                .target
                .simplices(1)
                .filter(|e| rec.carrier[*e] == Simplex::from_ids(&[1, 2]))
                .collect();
            assert_eq!(inside.len(), 2, "shared edge split once for {t}");
        }
        assert_eq!(rec.target.euler_characteristic(), 1);
    }

    #[test]
    fn composition_tracks_original_coordinates() {
        let c = SimplicialComplex::from_maximal([Simplex::from_ids(&[0, 1])]);
        let first = cut_by_hyperplane(&c, &values(&[0, 4]), &q(2));
        let h2 = first.interpolate(|v| vec![q(if v == VertexId(0) { 0 } else { 4 })]);
        let h2: BTreeMap<VertexId, Q> = h2.into_iter().map(|(k, v)| (k, v[0].clone())).collect();
        let second = cut_by_hyperplane(&first.target, &h2, &q(1));
        let both = first.compose(&second);
        let w = VertexId(3);
        assert_eq!(both.vertex_coords[&w][&VertexId(1)], Q::new(1.into(), 4.into()));
        assert_eq!(both.source, c);
        assert_eq!(both.target.count(1), 3);
    }
}
