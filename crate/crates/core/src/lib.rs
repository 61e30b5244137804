//! Exact, allocation-only computation of cap-image lower bounds on well groups.
//!
//! Given a finite simplicial complex `K`, a subcomplex `B`, and a simplexwise
//! linear map `f: K -> R^n` with rational vertex values, this crate builds the
//! sublevel pairs `X = |f|^{-1}[0, r]`, `A = |f|^{-1}(r)` exactly, computes the
//! first obstruction cocycle of `f` on `(X, A)`, and caps it against
//! `H_k(X, A ∪ B)` to obtain a computable subgroup of the `(k - n)`-th well
//! group inside `H_{k-n}(X, B)`. Everything runs over the integers and the
//! rationals; there is no floating point anywhere.
//!
//! Modules, bottom-up:
//!
//! * [`complex`] and [`subdivision`]: simplicial complexes, chains, boundary
//!   matrices, and face-compatible hyperplane cuts.
//! * [`abelian`]: Smith normal form, homology and cohomology presentations,
//!   subgroup presentations.
//! * [`filtration`]: one global subdivision of `K` on which every sublevel pair
//!   of a radius schedule is a subcomplex pair.
//! * [`obstruction`]: obstruction cocycle, simplicial cap product, cap images.
//! * [`welldiagram`]: the radius-indexed module of cap images and its events.
//! * [`perturbation`]: dual complexes, skeletal perturbations, extensions to
//!   perturbations, PL zero sets and the containment oracle.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![deny(rust_2018_idioms, unused_must_use)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod abelian;
pub mod complex;
pub mod fixtures;
pub mod filtration;
pub mod geometry;
pub mod obstruction;
pub mod perturbation;
pub mod subdivision;
pub mod welldiagram;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// Exact rational scalar used for all geometry.
pub type Q = BigRational;

pub use abelian::{
    relative_cohomology, relative_homology, smith_normal_form, subgroup_image, GroupPresentation,
    IntegerMatrix, SmithDecomposition, SubgroupPresentation,
};
pub use complex::{Chain, Cochain, Simplex, SimplicialComplex, Subcomplex, VertexId};
pub use filtration::{
    build_global_subdivision, sublevel_pair, Filtration, NormKind, PLMap, RadiiSchedule,
    SublevelPair,
};
pub use obstruction::{
    cap_chain, cap_image, is_cocycle, obstruction_class, obstruction_cocycle, CapImageReport,
    ObstructionCocycle,
};
pub use subdivision::{cut_by_hyperplane, SubdivisionRecord};
pub use welldiagram::{cap_module, extract_events, CapModule, WellDiagramEvent};
