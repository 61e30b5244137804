//! Abstract simplicial complexes and integer (co)chains.
//!
//! Vertices carry a global total order (their id). A simplex is stored as the
//! strictly increasing list of its vertex ids, which fixes its orientation:
//! `∂[v0..vk] = Σ (-1)^j [v0..v̂j..vk]`.

use alloc::collections::btree_map::Entry;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;
use core::marker::PhantomData;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::abelian::IntegerMatrix;

/// Vertex identifier; the numeric order is the global vertex order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An oriented simplex: a nonempty, strictly increasing list of vertices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Simplex(Vec<VertexId>);

/// Structural problems with simplices or complexes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComplexError {
    EmptySimplex,
    RepeatedVertex(VertexId),
    /// A simplex whose vertex list is not strictly increasing.
    Unsorted(Simplex),
    /// `face` is missing although `simplex` is present.
    MissingFace { simplex: Simplex, face: Simplex },
}

impl fmt::Display for ComplexError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComplexError::EmptySimplex => write!(f, "empty simplex"),
            ComplexError::RepeatedVertex(v) => write!(f, "vertex {v} repeated in simplex"),
            ComplexError::Unsorted(s) => write!(f, "simplex {s} is not strictly sorted"),
            ComplexError::MissingFace { simplex, face } => {
                write!(f, "face {face} of {simplex} is missing")
            }
        }
    }
}

impl Simplex {
    /// Sorts the vertices; rejects empty input and repeated vertices.
    pub fn new(mut vertices: Vec<VertexId>) -> Result<Self, ComplexError> {
        if vertices.is_empty() {
            return Err(ComplexError::EmptySimplex);
        }
        vertices.sort_unstable();
        for w in vertices.windows(2) {
            if w[0] == w[1] {
                return Err(ComplexError::RepeatedVertex(w[0]));
            }
        }
        Ok(Simplex(vertices))
    }

    /// Convenience constructor from raw ids.
    ///
    /// Panics on empty input or repeated ids.
    pub fn from_ids(ids: &[u32]) -> Self {
        Simplex::new(ids.iter().map(|&i| VertexId(i)).collect()).expect("invalid simplex")
    }

    /// Wraps a vertex list without checking it. [`SimplicialComplex::validate`]
    /// reports lists that are not strictly increasing.
    pub fn from_vec_unchecked(vertices: Vec<VertexId>) -> Self {
        Simplex(vertices)
    }

    pub fn vertex(v: VertexId) -> Self {
        Simplex(alloc::vec![v])
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn is_sorted_strict(&self) -> bool {
        !self.0.is_empty() && self.0.windows(2).all(|w| w[0] < w[1])
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn min_vertex(&self) -> VertexId {
        self.0[0]
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| other.contains_vertex(*v))
    }

    /// Codimension-one faces with their boundary signs, in the order `j = 0..=dim`.
    pub fn facets(&self) -> impl Iterator<Item = (i32, Simplex)> + '_ {
        let n = self.0.len();
        (0..if n > 1 { n } else { 0 }).map(move |j| {
            let mut v = self.0.clone();
            v.remove(j);
            (if j % 2 == 0 { 1 } else { -1 }, Simplex(v))
        })
    }

    /// All nonempty faces, including the simplex itself.
    pub fn faces(&self) -> Vec<Simplex> {
        let n = self.0.len();
        let mut out = Vec::with_capacity((1usize << n) - 1);
        for mask in 1u32..(1u32 << n) {
            let v: Vec<VertexId> = (0..n)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| self.0[i])
                .collect();
            out.push(Simplex(v));
        }
        out
    }

    /// Vertex-set union; both must be faces of a common simplex for the result
    /// to be meaningful.
    pub fn join(&self, other: &Simplex) -> Simplex {
        let mut v: Vec<VertexId> = self.0.iter().chain(other.0.iter()).copied().collect();
        v.sort_unstable();
        v.dedup();
        Simplex(v)
    }

    pub fn with_vertex(&self, w: VertexId) -> Simplex {
        let mut v = self.0.clone();
        match v.binary_search(&w) {
            Ok(_) => {}
            Err(pos) => v.insert(pos, w),
        }
        Simplex(v)
    }

    /// Front face `[v0..vp]`.
    pub fn front(&self, p: usize) -> Simplex {
        Simplex(self.0[..=p].to_vec())
    }

    /// Back face `[vp..vk]`.
    pub fn back(&self, p: usize) -> Simplex {
        Simplex(self.0[p..].to_vec())
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

/// A finite abstract simplicial complex, simplices grouped by dimension.
#[derive(Clone, Debug, Default)]
pub struct SimplicialComplex {
    by_dim: Vec<BTreeSet<Simplex>>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        let top = self.dim().max(other.dim()).map_or(0, |d| d + 1);
        (0..top).all(|k| self.by_dim.get(k).unwrap_or(&BTreeSet::new()) == other.by_dim.get(k).unwrap_or(&BTreeSet::new()))
    }
}

impl Eq for SimplicialComplex {}

/// A subcomplex is stored as a complex in its own right; its simplices are a
/// face-closed subset of the parent's.
pub type Subcomplex = SimplicialComplex;

impl SimplicialComplex {
    pub fn new() -> Self {
        Self::default()
    }

    /// The face closure of the given simplices.
    pub fn from_maximal<I: IntoIterator<Item = Simplex>>(simplices: I) -> Self {
        let mut c = Self::new();
        for s in simplices {
            c.insert_with_faces(&s);
        }
        c
    }

    /// Stores exactly the given simplices, without closing under faces.
    pub fn from_simplices_unchecked<I: IntoIterator<Item = Simplex>>(simplices: I) -> Self {
        let mut c = Self::new();
        for s in simplices {
            c.insert_raw(s);
        }
        c
    }

    fn insert_raw(&mut self, s: Simplex) -> bool {
        let d = s.0.len().saturating_sub(1);
        while self.by_dim.len() <= d {
            self.by_dim.push(BTreeSet::new());
        }
        self.by_dim[d].insert(s)
    }

    pub fn insert_with_faces(&mut self, s: &Simplex) {
        if self.contains(s) {
            return;
        }
        for f in s.faces() {
            self.insert_raw(f);
        }
    }

    /// Maximum simplex dimension, `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.by_dim.iter().rposition(|s| !s.is_empty())
    }

    pub fn is_empty(&self) -> bool {
        self.dim().is_none()
    }

    pub fn simplices(&self, k: usize) -> impl Iterator<Item = &Simplex> + '_ {
        self.by_dim.get(k).into_iter().flat_map(|s| s.iter())
    }

    pub fn all_simplices(&self) -> impl Iterator<Item = &Simplex> + '_ {
        self.by_dim.iter().flat_map(|s| s.iter())
    }

    pub fn count(&self, k: usize) -> usize {
        self.by_dim.get(k).map_or(0, |s| s.len())
    }

    pub fn len(&self) -> usize {
        self.by_dim.iter().map(|s| s.len()).sum()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.by_dim
            .get(s.0.len().saturating_sub(1))
            .is_some_and(|set| set.contains(s))
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.simplices(0).map(|s| s.0[0])
    }

    pub fn max_vertex_id(&self) -> Option<VertexId> {
        self.vertices().last()
    }

    /// Simplices that are not a proper face of another simplex.
    pub fn maximal_simplices(&self) -> Vec<Simplex> {
        let mut covered: BTreeSet<&Simplex> = BTreeSet::new();
        let mut out = Vec::new();
        for k in (0..self.by_dim.len()).rev() {
            for s in &self.by_dim[k] {
                if !covered.contains(s) {
                    out.push(s.clone());
                }
            }
            if k > 0 {
                for s in &self.by_dim[k] {
                    for (_, f) in s.facets() {
                        if let Some(found) = self.by_dim[k - 1].get(&f) {
                            covered.insert(found);
                        }
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// Checks sorted vertex lists and closure under faces; reports the first
    /// violation in (dimension, lexicographic) order.
    pub fn validate(&self) -> Result<(), ComplexError> {
        for (k, set) in self.by_dim.iter().enumerate() {
            for s in set {
                if s.0.is_empty() {
                    return Err(ComplexError::EmptySimplex);
                }
                if !s.is_sorted_strict() || s.dim() != k {
                    return Err(ComplexError::Unsorted(s.clone()));
                }
                for (_, f) in s.facets() {
                    if !self.contains(&f) {
                        return Err(ComplexError::MissingFace {
                            simplex: s.clone(),
                            face: f,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// All simplices of dimension at most `i`; `i = -1` gives the empty complex.
    pub fn skeleton(&self, i: isize) -> Subcomplex {
        let mut c = Self::new();
        if i >= 0 {
            for set in self.by_dim.iter().take(i as usize + 1) {
                c.by_dim.push(set.clone());
            }
        }
        c
    }

    /// The simplices satisfying `keep`. The predicate must be closed under
    /// taking faces for the result to be a subcomplex.
    pub fn filter<F: FnMut(&Simplex) -> bool>(&self, mut keep: F) -> Subcomplex {
        let mut c = Self::new();
        for s in self.all_simplices() {
            if keep(s) {
                c.insert_raw(s.clone());
            }
        }
        debug_assert!(c.validate().is_ok());
        c
    }

    pub fn union(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let mut c = self.clone();
        for s in other.all_simplices() {
            c.insert_raw(s.clone());
        }
        c
    }

    pub fn intersection(&self, other: &SimplicialComplex) -> SimplicialComplex {
        self.filter(|s| other.contains(s))
    }

    pub fn is_subcomplex_of(&self, parent: &SimplicialComplex) -> bool {
        self.all_simplices().all(|s| parent.contains(s))
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.by_dim
            .iter()
            .enumerate()
            .map(|(k, s)| if k % 2 == 0 { s.len() as i64 } else { -(s.len() as i64) })
            .sum()
    }

    /// The `k`-simplices not in `rel`, in lexicographic order: the basis of
    /// the relative chain group `C_k(self, rel)`.
    pub fn relative_cells(&self, k: usize, rel: &SimplicialComplex) -> Vec<Simplex> {
        self.simplices(k).filter(|s| !rel.contains(s)).cloned().collect()
    }
}

/// Matrix of `∂_k: C_k(complex, rel) -> C_{k-1}(complex, rel)` on the
/// lexicographically ordered relative bases. For `k = 0` the matrix has no rows.
pub fn boundary_matrix(complex: &SimplicialComplex, k: usize, rel: &SimplicialComplex) -> IntegerMatrix {
    let cols = complex.relative_cells(k, rel);
    if k == 0 {
        return IntegerMatrix::zeros(0, cols.len());
    }
    let rows = complex.relative_cells(k - 1, rel);
    boundary_matrix_between(&rows, &cols)
}

pub(crate) fn boundary_matrix_between(rows: &[Simplex], cols: &[Simplex]) -> IntegerMatrix {
    let index: BTreeMap<&Simplex, usize> = rows.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut m = IntegerMatrix::zeros(rows.len(), cols.len());
    for (j, s) in cols.iter().enumerate() {
        for (sign, f) in s.facets() {
            if let Some(&i) = index.get(&f) {
                m.set(i, j, BigInt::from(sign));
            }
        }
    }
    m
}

/// Marker for chains.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Homological;

/// Marker for cochains.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Cohomological;

/// A finitely supported integer combination of oriented `degree`-simplices.
#[derive(Debug, PartialEq, Eq)]
pub struct LinearCombination<K> {
    degree: usize,
    terms: BTreeMap<Simplex, BigInt>,
    _kind: PhantomData<K>,
}

impl<K> Clone for LinearCombination<K> {
    fn clone(&self) -> Self {
        LinearCombination {
            degree: self.degree,
            terms: self.terms.clone(),
            _kind: PhantomData,
        }
    }
}

pub type Chain = LinearCombination<Homological>;
pub type Cochain = LinearCombination<Cohomological>;

impl<K> LinearCombination<K> {
    pub fn zero(degree: usize) -> Self {
        LinearCombination {
            degree,
            terms: BTreeMap::new(),
            _kind: PhantomData,
        }
    }

    pub fn from_terms<I: IntoIterator<Item = (Simplex, BigInt)>>(degree: usize, terms: I) -> Self {
        let mut c = Self::zero(degree);
        for (s, v) in terms {
            c.add_term(s, v);
        }
        c
    }

    /// The elementary combination `1·s`.
    pub fn elementary(s: Simplex) -> Self {
        let d = s.dim();
        Self::from_terms(d, [(s, BigInt::one())])
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Adds `value·s`. Panics if `s` has the wrong dimension.
    pub fn add_term(&mut self, s: Simplex, value: BigInt) {
        assert_eq!(s.dim(), self.degree, "simplex {s} has wrong degree");
        if value.is_zero() {
            return;
        }
        match self.terms.entry(s) {
            Entry::Vacant(e) => {
                e.insert(value);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += value;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn get(&self, s: &Simplex) -> BigInt {
        self.terms.get(s).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Simplex, &BigInt)> + '_ {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = &Simplex> + '_ {
        self.terms.keys()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree);
        let mut c = self.clone();
        for (s, v) in &other.terms {
            c.add_term(s.clone(), v.clone());
        }
        c
    }

    pub fn scaled(&self, factor: &BigInt) -> Self {
        if factor.is_zero() {
            return Self::zero(self.degree);
        }
        Self {
            degree: self.degree,
            terms: self.terms.iter().map(|(s, v)| (s.clone(), v * factor)).collect(),
            _kind: PhantomData,
        }
    }

    /// Keeps only the terms on simplices satisfying `keep`.
    pub fn restrict<F: FnMut(&Simplex) -> bool>(&self, mut keep: F) -> Self {
        Self {
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .filter(|(s, _)| keep(s))
                .map(|(s, v)| (s.clone(), v.clone()))
                .collect(),
            _kind: PhantomData,
        }
    }

    /// True iff every term lives on a simplex of `complex`.
    pub fn supported_in(&self, complex: &SimplicialComplex) -> bool {
        self.terms.keys().all(|s| complex.contains(s))
    }

    /// Coefficient vector on an ordered cell basis; terms off the basis are dropped.
    pub fn to_vector(&self, cells: &[Simplex]) -> Vec<BigInt> {
        cells.iter().map(|s| self.get(s)).collect()
    }

    pub fn from_vector(degree: usize, cells: &[Simplex], values: &[BigInt]) -> Self {
        Self::from_terms(degree, cells.iter().cloned().zip(values.iter().cloned()))
    }
}

impl Chain {
    /// Simplicial boundary. The boundary of a 0-chain is the zero 0-chain
    /// (no augmentation).
    pub fn boundary(&self) -> Chain {
        if self.degree == 0 {
            return Chain::zero(0);
        }
        let mut out = Chain::zero(self.degree - 1);
        for (s, v) in &self.terms {
            for (sign, f) in s.facets() {
                out.add_term(f, v * sign);
            }
        }
        out
    }

    /// True iff `∂self` is supported in `rel`.
    pub fn is_relative_cycle(&self, rel: &SimplicialComplex) -> bool {
        self.boundary().supported_in(rel)
    }
}

impl Cochain {
    pub fn eval(&self, c: &Chain) -> BigInt {
        if c.degree() != self.degree {
            return BigInt::zero();
        }
        c.terms().map(|(s, v)| v * self.get(s)).sum()
    }

    pub fn eval_simplex(&self, s: &Simplex) -> BigInt {
        self.get(s)
    }

    /// `(δφ)(τ) = φ(∂τ)` on the `(degree+1)`-simplices of `complex`.
    pub fn coboundary(&self, complex: &SimplicialComplex) -> Cochain {
        let mut out = Cochain::zero(self.degree + 1);
        for t in complex.simplices(self.degree + 1) {
            let mut acc = BigInt::zero();
            for (sign, f) in t.facets() {
                if let Some(v) = self.terms.get(&f) {
                    acc += v * sign;
                }
            }
            out.add_term(t.clone(), acc);
        }
        out
    }
}
