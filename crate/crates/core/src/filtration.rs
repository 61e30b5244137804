//! Exact sublevel pairs `X = |f|⁻¹[0,r]`, `A = |f|⁻¹(r)` for a schedule of
//! radii, all living in one global subdivision `K*` of `K`.
//!
//! Only polyhedral norms are supported. The unit ball is written as
//! `{x : ℓ_j(x) ≤ 1 for all j}` for finitely many linear functionals `ℓ_j`
//! with `±1` coefficients; `K` is cut along `ℓ_j(f) = r` for every functional
//! and every radius. The ℓ₁ ball needs `2^n` functionals.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{Signed, Zero};

use crate::complex::{ComplexError, Simplex, SimplicialComplex, VertexId};
use crate::subdivision::{cut_by_hyperplane, SubdivisionRecord};
use crate::Q;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NormKind {
    LInf,
    L1,
}

impl NormKind {
    /// Coefficient vectors of the facet functionals of the unit ball in `R^n`.
    pub fn facets(self, n: usize) -> Vec<Vec<i8>> {
        match self {
            NormKind::LInf => (0..n)
                .flat_map(|i| {
                    [1i8, -1].into_iter().map(move |s| {
                        let mut v = alloc::vec![0i8; n];
                        v[i] = s;
                        v
                    })
                })
                .collect(),
            NormKind::L1 => (0..1u32 << n)
                .map(|mask| (0..n).map(|i| if mask & (1 << i) != 0 { -1 } else { 1 }).collect())
                .collect(),
        }
    }

    pub fn norm(self, x: &[Q]) -> Q {
        match self {
            NormKind::LInf => x.iter().map(|v| v.abs()).max().unwrap_or_else(Q::zero),
            NormKind::L1 => x.iter().map(|v| v.abs()).fold(Q::zero(), |a, b| a + b),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            NormKind::LInf => "linf",
            NormKind::L1 => "l1",
        }
    }
}

/// Evaluates `ℓ(x)` for a facet functional with `±1`/`0` coefficients.
pub fn apply_functional(l: &[i8], x: &[Q]) -> Q {
    let mut acc = Q::zero();
    for (c, v) in l.iter().zip(x) {
        match c {
            1 => acc += v,
            -1 => acc -= v,
            _ => {}
        }
    }
    acc
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FiltrationError {
    InvalidComplex(ComplexError),
    MissingValue(VertexId),
    WrongArity { vertex: VertexId, expected: usize, found: usize },
    /// `B` has a simplex that is not in `K`.
    NotASubcomplex(Simplex),
    EmptySchedule,
    NonPositiveRadius(Q),
    NotDecreasing,
    RadiusNotInSchedule(Q),
}

impl fmt::Display for FiltrationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiltrationError::InvalidComplex(e) => write!(f, "invalid complex: {e}"),
            FiltrationError::MissingValue(v) => write!(f, "no map value for vertex {v}"),
            FiltrationError::WrongArity { vertex, expected, found } => {
                write!(f, "vertex {vertex} has {found} coordinates, expected {expected}")
            }
            FiltrationError::NotASubcomplex(s) => write!(f, "simplex {s} of B is not in K"),
            FiltrationError::EmptySchedule => write!(f, "empty radius schedule"),
            FiltrationError::NonPositiveRadius(r) => write!(f, "radius {r} is not positive"),
            FiltrationError::NotDecreasing => write!(f, "radii must be strictly decreasing"),
            FiltrationError::RadiusNotInSchedule(r) => write!(f, "radius {r} is not in the schedule"),
        }
    }
}

/// A simplexwise linear map given by rational vertex values in `Q^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PLMap {
    n: usize,
    values: BTreeMap<VertexId, Vec<Q>>,
}

impl PLMap {
    pub fn new(n: usize, values: BTreeMap<VertexId, Vec<Q>>) -> Result<Self, FiltrationError> {
        for (v, x) in &values {
            if x.len() != n {
                return Err(FiltrationError::WrongArity {
                    vertex: *v,
                    expected: n,
                    found: x.len(),
                });
            }
        }
        Ok(PLMap { n, values })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Panics if `v` has no value.
    pub fn value(&self, v: VertexId) -> &[Q] {
        self.values
            .get(&v)
            .unwrap_or_else(|| panic!("no map value for vertex {v}"))
    }

    pub fn get(&self, v: VertexId) -> Option<&[Q]> {
        self.values.get(&v).map(|x| x.as_slice())
    }

    pub fn values(&self) -> &BTreeMap<VertexId, Vec<Q>> {
        &self.values
    }

    pub fn defined_on(&self, complex: &SimplicialComplex) -> Result<(), FiltrationError> {
        match complex.vertices().find(|v| !self.values.contains_key(v)) {
            Some(v) => Err(FiltrationError::MissingValue(v)),
            None => Ok(()),
        }
    }

    /// The same map on a subdivision, by affine interpolation.
    pub fn refine(&self, record: &SubdivisionRecord) -> PLMap {
        PLMap {
            n: self.n,
            values: record.interpolate(|v| self.value(v)),
        }
    }

    /// Coordinate `i` as a scalar vertex function.
    pub fn component(&self, i: usize) -> BTreeMap<VertexId, Q> {
        self.values.iter().map(|(v, x)| (*v, x[i].clone())).collect()
    }

    pub fn functional(&self, l: &[i8]) -> BTreeMap<VertexId, Q> {
        self.values.iter().map(|(v, x)| (*v, apply_functional(l, x))).collect()
    }

    /// Vertexwise maximum of `‖self − other‖` over the given vertices.
    pub fn distance_on<I>(&self, other: &PLMap, norm: NormKind, vertices: I) -> Q
    where
        I: IntoIterator<Item = VertexId>,
    {
        vertices
            .into_iter()
            .map(|v| {
                let d: Vec<Q> = self.value(v).iter().zip(other.value(v)).map(|(a, b)| a - b).collect();
                norm.norm(&d)
            })
            .max()
            .unwrap_or_else(Q::zero)
    }
}

/// Strictly decreasing positive radii `r1 > r2 > ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadiiSchedule(Vec<Q>);

impl RadiiSchedule {
    pub fn new(radii: Vec<Q>) -> Result<Self, FiltrationError> {
        if radii.is_empty() {
            return Err(FiltrationError::EmptySchedule);
        }
        if let Some(r) = radii.iter().find(|r| !r.is_positive()) {
            return Err(FiltrationError::NonPositiveRadius(r.clone()));
        }
        if radii.windows(2).any(|w| w[0] <= w[1]) {
            return Err(FiltrationError::NotDecreasing);
        }
        Ok(RadiiSchedule(radii))
    }

    /// Sorts into decreasing order; duplicates are rejected.
    pub fn from_unsorted(mut radii: Vec<Q>) -> Result<Self, FiltrationError> {
        radii.sort_by(|a, b| b.cmp(a));
        Self::new(radii)
    }

    pub fn single(r: Q) -> Result<Self, FiltrationError> {
        Self::new(alloc::vec![r])
    }

    pub fn radii(&self) -> &[Q] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn position(&self, r: &Q) -> Option<usize> {
        self.0.iter().position(|x| x == r)
    }
}

/// Cuts `K` along `ℓ_j(f) = r` for every radius and every facet functional.
pub fn build_global_subdivision(
    k: &SimplicialComplex,
    f: &PLMap,
    radii: &RadiiSchedule,
    norm: NormKind,
) -> SubdivisionRecord {
    let mut record = SubdivisionRecord::identity(k);
    let mut current = f.clone();
    for r in radii.radii() {
        for l in norm.facets(f.n()) {
            let h = current.functional(&l);
            let step = cut_by_hyperplane(&record.target, &h, r);
            if step.target == record.target {
                continue;
            }
            current = current.refine(&step);
            record = record.compose(&step);
        }
    }
    record
}

/// `X`, `A` and `X ∩ B` at one radius, as subcomplexes of `K*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SublevelPair {
    pub radius: Q,
    pub x: SimplicialComplex,
    pub a: SimplicialComplex,
    pub b_cap: SimplicialComplex,
}

impl SublevelPair {
    /// `A ∪ (X ∩ B)`.
    pub fn a_union_b(&self) -> SimplicialComplex {
        self.a.union(&self.b_cap)
    }
}

/// Everything needed to extract sublevel pairs for a schedule of radii.
#[derive(Clone, Debug)]
pub struct Filtration {
    pub norm: NormKind,
    pub radii: RadiiSchedule,
    /// `K → K*`.
    pub record: SubdivisionRecord,
    /// `f` interpolated to `K*`.
    pub f_star: PLMap,
    /// `B` refined to `K*`.
    pub b_star: SimplicialComplex,
    facets: Vec<Vec<i8>>,
}

impl Filtration {
    pub fn new(
        k: &SimplicialComplex,
        b: &SimplicialComplex,
        f: &PLMap,
        radii: RadiiSchedule,
        norm: NormKind,
    ) -> Result<Self, FiltrationError> {
        k.validate().map_err(FiltrationError::InvalidComplex)?;
        b.validate().map_err(FiltrationError::InvalidComplex)?;
        if let Some(s) = b.all_simplices().find(|s| !k.contains(s)) {
            return Err(FiltrationError::NotASubcomplex(s.clone()));
        }
        f.defined_on(k)?;
        let record = build_global_subdivision(k, f, &radii, norm);
        let f_star = f.refine(&record);
        let b_star = record.target.filter(|s| b.contains(&record.carrier[s]));
        Ok(Filtration {
            norm,
            facets: norm.facets(f.n()),
            radii,
            record,
            f_star,
            b_star,
        })
    }

    pub fn k_star(&self) -> &SimplicialComplex {
        &self.record.target
    }

    pub fn n(&self) -> usize {
        self.f_star.n()
    }

    fn vertex_norm(&self, v: VertexId) -> Q {
        self.norm.norm(self.f_star.value(v))
    }

    /// Simplices of `X(r)` on which some facet functional is `≥ level` at every vertex.
    fn outer_part(&self, x: &SimplicialComplex, level: &Q, exact: bool) -> SimplicialComplex {
        let values: Vec<BTreeMap<VertexId, Q>> = self.facets.iter().map(|l| self.f_star.functional(l)).collect();
        x.filter(|s| {
            values.iter().any(|h| {
                s.vertices().iter().all(|v| {
                    let t = &h[v];
                    if exact {
                        t == level
                    } else {
                        t >= level
                    }
                })
            })
        })
    }

    /// The sublevel pair at a scheduled radius.
    pub fn pair(&self, r: &Q) -> Result<SublevelPair, FiltrationError> {
        if self.radii.position(r).is_none() {
            return Err(FiltrationError::RadiusNotInSchedule(r.clone()));
        }
        let x = self
            .k_star()
            .filter(|s| s.vertices().iter().all(|v| self.vertex_norm(*v) <= *r));
        let a = self.outer_part(&x, r, true);
        let b_cap = self.b_star.intersection(&x);
        Ok(SublevelPair {
            radius: r.clone(),
            x,
            a,
            b_cap,
        })
    }

    /// `|f|⁻¹[r_{i+1}, r_i]` inside `X(r_i)`, for consecutive scheduled radii.
    pub fn collar(&self, i: usize) -> SimplicialComplex {
        let radii = self.radii.radii();
        let outer = &radii[i];
        let inner = &radii[i + 1];
        let x = self
            .k_star()
            .filter(|s| s.vertices().iter().all(|v| self.vertex_norm(*v) <= *outer));
        self.outer_part(&x, inner, false)
    }
}

/// The sublevel pair of a filtration at a scheduled radius.
pub fn sublevel_pair(filtration: &Filtration, r: &Q) -> Result<SublevelPair, FiltrationError> {
    filtration.pair(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::relative_homology;
    use crate::fixtures;
    use alloc::vec;
    use num_bigint::BigInt;
    use num_traits::One;

    fn q(n: i64, d: i64) -> Q {
        Q::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn l1_has_two_to_the_n_facets() {
        assert_eq!(NormKind::L1.facets(3).len(), 8);
        assert_eq!(NormKind::LInf.facets(3).len(), 6);
        assert_eq!(NormKind::L1.norm(&[q(-1, 2), q(1, 3)]), q(5, 6));
        assert_eq!(NormKind::LInf.norm(&[q(-1, 2), q(1, 3)]), q(1, 2));
    }

    #[test]
    fn schedule_validation() {
        assert!(RadiiSchedule::new(vec![q(1, 1), q(1, 2)]).is_ok());
        assert_eq!(RadiiSchedule::new(vec![q(1, 2), q(1, 1)]), Err(FiltrationError::NotDecreasing));
        assert_eq!(RadiiSchedule::new(vec![]), Err(FiltrationError::EmptySchedule));
        assert!(RadiiSchedule::from_unsorted(vec![q(1, 2), q(3, 2)]).is_ok());
        assert!(RadiiSchedule::from_unsorted(vec![q(1, 2), q(1, 2)]).is_err());
    }

    #[test]
    fn band_fixture_pair() {
        let fx = fixtures::band();
        let filt = fx.filtration(true).unwrap();
        let pair = filt.pair(&fx.radius).unwrap();
        assert!(pair.x.validate().is_ok());
        for v in pair.x.vertices() {
            assert!(filt.f_star.value(v)[0].abs() <= q(1, 2));
        }
        // A: the two horizontal lines y = ±1/2, each a path of 4 edges.
        assert_eq!(pair.a.count(1), 8);
        assert_eq!(pair.a.euler_characteristic(), 2);
        // X ∩ B: two vertical segments.
        assert_eq!(pair.b_cap.euler_characteristic(), 2);
        assert_eq!(pair.b_cap.dim(), Some(1));
        assert!(pair.a.is_subcomplex_of(&pair.x));
        let h1 = relative_homology(&pair.x, 1, &pair.b_cap);
        assert_eq!(h1.rank(), 1);
    }

    #[test]
    fn constant_map_far_from_zero_gives_empty_x() {
        let k = SimplicialComplex::from_maximal([Simplex::from_ids(&[0, 1, 2])]);
        let f = PLMap::new(1, (0..3).map(|i| (VertexId(i), vec![q(3, 1)])).collect()).unwrap();
        let filt = Filtration::new(&k, &SimplicialComplex::new(), &f, RadiiSchedule::single(Q::one()).unwrap(), NormKind::LInf)
            .unwrap();
        assert!(filt.pair(&Q::one()).unwrap().x.is_empty());
    }

    #[test]
    fn path_with_breakpoint_cut_points() {
        // Vertices at x = -2, 0, 2 with f = 1 - |x|.
        let k = SimplicialComplex::from_maximal([Simplex::from_ids(&[0, 1]), Simplex::from_ids(&[1, 2])]);
        let f = PLMap::new(
            1,
            [(0, -1), (1, 1), (2, -1)].iter().map(|&(v, y)| (VertexId(v), vec![q(y, 1)])).collect(),
        )
        .unwrap();
        let radii = RadiiSchedule::new(vec![Q::one(), q(1, 2)]).unwrap();
        let filt = Filtration::new(&k, &SimplicialComplex::new(), &f, radii, NormKind::LInf).unwrap();
        // r = 1 hits only existing vertices; r = 1/2 adds f = ±1/2 on both edges.
        assert_eq!(filt.k_star().count(0), 3 + 4);
        let pair = filt.pair(&q(1, 2)).unwrap();
        assert_eq!(pair.x.count(0), 4);
        assert_eq!(pair.a.count(0), 4);
        assert_eq!(pair.x.euler_characteristic(), 2);
        let full = filt.pair(&Q::one()).unwrap();
        assert_eq!(full.x, *filt.k_star());
        assert_eq!(full.a.count(0), 3);
        assert!(filt.pair(&q(1, 3)).is_err());
    }

    #[test]
    fn square_annulus_small_variant() {
        let fx = fixtures::square_annulus_small();
        let filt = fx.filtration(false).unwrap();
        let pair = filt.pair(&fx.radius).unwrap();
        let h1 = relative_homology(&pair.x, 1, &SimplicialComplex::new());
        assert_eq!(h1.rank(), 1);
        // Only the inner square has |f| = r.
        assert_eq!(pair.a.euler_characteristic(), 0);
        assert_eq!(relative_homology(&pair.a, 1, &SimplicialComplex::new()).rank(), 1);
    }

    #[test]
    fn monotone_in_radius() {
        let fx = fixtures::double_well();
        let filt = fx.filtration(false).unwrap();
        let radii = filt.radii.radii().to_vec();
        let big = filt.pair(&radii[0]).unwrap();
        let small = filt.pair(&radii[1]).unwrap();
        assert!(small.x.is_subcomplex_of(&big.x));
        for v in filt.k_star().vertices() {
            let on = filt.norm.norm(filt.f_star.value(v)) == radii[1];
            assert_eq!(small.a.contains(&Simplex::vertex(v)), on);
        }
    }
}
