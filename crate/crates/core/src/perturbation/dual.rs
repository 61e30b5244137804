use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use super::PerturbationError;
use crate::complex::{Simplex, SimplicialComplex, VertexId};
use crate::filtration::PLMap;
use crate::geometry::in_convex_hull;
use crate::subdivision::{Barycentric, SubdivisionRecord};
use crate::Q;

/// Derived subdivision of `X` relative to `A`, with the dual complex `Y`.
///
/// Every simplex of the subdivision has the form `α ∪ {b_σ0, …, b_σk}` where
/// `σ0 < … < σk` is a chain of simplices outside `A`, `b_σ` is the
/// barycenter of `σ`, and `α ∈ A` is a proper face of `σ0` (or empty). `Y`
/// consists of the simplices made of barycenters only.
#[derive(Clone, Debug)]
pub struct DualComplexResult {
    pub subdivision: SubdivisionRecord,
    pub a: SimplicialComplex,
    pub y: SimplicialComplex,
    /// Barycenter vertex of each simplex outside `A`.
    pub barycenters: BTreeMap<Simplex, VertexId>,
    /// Each top-dimensional simplex of `Y` mapped to its dual simplex of `X`.
    pub pairing: BTreeMap<Simplex, Simplex>,
    pub i: usize,
}

impl DualComplexResult {
    /// The `A`-part and `Y`-part of a subdivision simplex.
    pub fn split(&self, s: &Simplex) -> (Vec<VertexId>, Vec<VertexId>) {
        s.vertices().iter().partition(|v| self.a.contains(&Simplex::vertex(**v)))
    }
}

/// Builds the dual complex of `(X, A)` for `A ⊇ X^(i-1)`.
pub fn dual_complex(x: &SimplicialComplex, a: &SimplicialComplex, i: usize) -> Result<DualComplexResult, PerturbationError> {
    if !a.is_subcomplex_of(x) {
        return Err(PerturbationError::Precondition("A is not a subcomplex of X"));
    }
    if let Some(s) = x.skeleton(i as isize - 1).all_simplices().find(|s| !a.contains(s)) {
        return Err(PerturbationError::SkeletonNotInA(s.clone()));
    }
    let m = x.dim().unwrap_or(0);
    let outside: Vec<Simplex> = (0..=m).flat_map(|d| x.simplices(d).filter(|s| !a.contains(s)).cloned()).collect();

    let mut vertex_coords: BTreeMap<VertexId, Barycentric> = x
        .vertices()
        .map(|v| (v, BTreeMap::from([(v, Q::from_integer(BigInt::from(1)))])))
        .collect();
    let mut next = x.max_vertex_id().map_or(0, |v| v.0 + 1);
    let mut barycenters = BTreeMap::new();
    for s in &outside {
        if s.dim() == 0 {
            barycenters.insert(s.clone(), s.min_vertex());
            continue;
        }
        let w = VertexId(next);
        next += 1;
        let weight = Q::new(BigInt::from(1), BigInt::from(s.dim() + 1));
        vertex_coords.insert(w, s.vertices().iter().map(|v| (*v, weight.clone())).collect());
        barycenters.insert(s.clone(), w);
    }

    // Chains σ0 < … < σk of simplices outside A, grown from the top.
    let mut target = a.clone();
    let mut y = SimplicialComplex::new();
    let mut stack: Vec<Vec<Simplex>> = outside.iter().map(|s| alloc::vec![s.clone()]).collect();
    while let Some(chain) = stack.pop() {
        let bottom = &chain[0];
        let bary: Vec<VertexId> = chain.iter().map(|s| barycenters[s]).collect();
        let ys = Simplex::new(bary.clone()).expect("distinct barycenters");
        y.insert_with_faces(&ys);
        target.insert_with_faces(&ys);
        for alpha in bottom.faces() {
            if alpha.dim() < bottom.dim() && a.contains(&alpha) {
                let mut vs = alpha.vertices().to_vec();
                vs.extend(bary.iter().copied());
                target.insert_with_faces(&Simplex::new(vs).expect("disjoint join"));
            }
        }
        for (_, f) in bottom.facets() {
            if !a.contains(&f) {
                let mut longer = alloc::vec![f];
                longer.extend(chain.iter().cloned());
                stack.push(longer);
            }
        }
    }

    let top = m.saturating_sub(i);
    let pairing = y
        .simplices(top)
        .filter_map(|t| {
            let chain: Vec<&Simplex> = barycenters
                .iter()
                .filter(|(_, w)| t.contains_vertex(**w))
                .map(|(s, _)| s)
                .collect();
            let bottom = chain.iter().min_by_key(|s| s.dim())?;
            (bottom.dim() == i).then(|| (t.clone(), (*bottom).clone()))
        })
        .collect();

    Ok(DualComplexResult {
        subdivision: SubdivisionRecord::from_parts(x.clone(), target, vertex_coords),
        a: a.clone(),
        y,
        barycenters,
        pairing,
        i,
    })
}

/// `h * 0_Y`: `h` on the `A`-part vertices, zero on the barycenters.
///
/// `h` must be defined on the vertices of `A` and have no zero on `A`.
pub fn join_extension(dual: &DualComplexResult, h: &PLMap) -> Result<PLMap, PerturbationError> {
    for v in dual.a.vertices() {
        if h.get(v).is_none() {
            return Err(PerturbationError::MissingValue(v));
        }
    }
    let origin = alloc::vec![Q::zero(); h.n()];
    if let Some(s) = dual.a.all_simplices().find(|s| {
        let pts: Vec<Vec<Q>> = s.vertices().iter().map(|v| h.value(*v).to_vec()).collect();
        in_convex_hull(&pts, &origin)
    }) {
        return Err(PerturbationError::HasZero(s.clone()));
    }
    let target = &dual.subdivision.target;
    for s in target.all_simplices() {
        let (_, ys) = dual.split(s);
        let ys_ok = ys.iter().all(|v| dual.y.contains(&Simplex::vertex(*v)));
        if !ys_ok {
            return Err(PerturbationError::JoinViolation(s.clone()));
        }
    }
    let values = target
        .vertices()
        .map(|v| {
            let val = if dual.a.contains(&Simplex::vertex(v)) {
                h.value(v).to_vec()
            } else {
                origin.clone()
            };
            (v, val)
        })
        .collect();
    PLMap::new(h.n(), values).map_err(|_| PerturbationError::Precondition("h has the wrong arity"))
}

/// Checks the join structure simplex by simplex: for each top simplex `τ` of
/// `Y` dual to `σ`, `α ∪ τ` is a simplex for exactly the proper faces `α`
/// of `σ` that lie in `A`.
pub fn check_pairing(dual: &DualComplexResult) -> bool {
    let target = &dual.subdivision.target;
    dual.pairing.iter().all(|(tau, sigma)| {
        let faces: BTreeSet<Simplex> = sigma.faces().into_iter().filter(|f| f != sigma).collect();
        dual.a.all_simplices().all(|alpha| {
            let joined = alpha.join(tau);
            target.contains(&joined) == faces.contains(alpha)
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn full_simplex_rel_boundary() {
        for m in 1..=3u32 {
            let x = fixtures::standard_simplex(m);
            let a = x.skeleton(m as isize - 1);
            let d = dual_complex(&x, &a, m as usize).unwrap();
            assert_eq!(d.y.count(0), 1);
            assert_eq!(d.y.dim(), Some(0));
            let top = Simplex::from_ids(&(0..=m).collect::<Vec<_>>());
            let b = d.barycenters[&top];
            assert_eq!(d.pairing.get(&Simplex::vertex(b)), Some(&top));
            assert!(check_pairing(&d));
            assert!(d.subdivision.target.validate().is_ok());
            assert_eq!(d.subdivision.target.euler_characteristic(), 1);
        }
    }

    #[test]
    fn a_equal_to_x_gives_empty_y() {
        let x = fixtures::standard_simplex(2);
        let d = dual_complex(&x, &x, 2).unwrap();
        assert!(d.y.is_empty());
        assert_eq!(d.subdivision.target, x);
    }

    #[test]
    fn two_triangles() {
        let x = SimplicialComplex::from_maximal([Simplex::from_ids(&[0, 1, 2]), Simplex::from_ids(&[1, 2, 3])]);
        let a = x.skeleton(1);
        let d = dual_complex(&x, &a, 2).unwrap();
        assert_eq!(d.y.count(0), 2);
        assert_eq!(d.y.count(1), 0);
        assert_eq!(d.pairing.len(), 2);
        assert!(check_pairing(&d));
        assert_eq!(d.subdivision.target.count(2), 6);
    }

    #[test]
    fn skeleton_precondition() {
        let x = fixtures::standard_simplex(2);
        let a = x.skeleton(0);
        assert!(matches!(dual_complex(&x, &a, 2), Err(PerturbationError::SkeletonNotInA(_))));
        let d = dual_complex(&x, &a, 1).unwrap();
        assert_eq!(d.y.dim(), Some(1));
        assert!(check_pairing(&d));
    }

    #[test]
    fn join_extension_vanishes_on_y_only() {
        let x = fixtures::standard_simplex(2);
        let d = dual_complex(&x, &x.skeleton(1), 2).unwrap();
        let g = join_extension(&d, &fixtures::simplex_chart(2)).unwrap();
        let zero: Vec<VertexId> = g.values().iter().filter(|(_, v)| v.iter().all(Zero::is_zero)).map(|(k, _)| *k).collect();
        assert_eq!(zero, d.y.vertices().collect::<Vec<_>>());
    }
}
