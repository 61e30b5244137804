//! Constructive perturbations and the containment oracle.
//!
//! * [`dual_complex`] and [`join_extension`]: a subdivision `X′ ⊆ A * Y` and
//!   the map `h * 0_Y`, whose zero set is exactly `Y`.
//! * [`extension_to_perturbation`]: turns an extension `e` of `f|_A` into a
//!   strict `r`-perturbation `g` with the same zero set.
//! * [`zero_set`]: exact zero sets of simplexwise linear maps.
//! * [`sample_perturbations`] and [`containment_check`]: sampled
//!   perturbations and the check that the cap image lies in the image of the
//!   zero set's homology.

mod containment;
mod dual;
mod extension;
mod sampling;
mod zero_set;

use alloc::boxed::Box;
use alloc::string::String;
use core::fmt;

pub use containment::{containment_check, containment_check_with, Verdict};
pub use dual::{check_pairing, dual_complex, join_extension, DualComplexResult};
pub use extension::{extension_to_perturbation, skeletal_perturbation, SkeletalPerturbation};
pub use sampling::{sample_perturbations, PerturbationSample, Provenance, Strategy};
pub use zero_set::{zero_set, ZeroSet};

use crate::complex::{Simplex, VertexId};
use crate::obstruction::ObstructionError;
use crate::Q;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PerturbationError {
    Precondition(&'static str),
    /// A simplex of `X^(i-1)` that is missing from `A`.
    SkeletonNotInA(Simplex),
    MissingValue(VertexId),
    /// The given map vanishes somewhere on this simplex.
    HasZero(Simplex),
    /// The subdivision simplex does not split into an `A`-part and a `Y`-part.
    JoinViolation(Simplex),
    /// `e` differs from `f` at this vertex of `A`.
    NotAnExtension(VertexId),
    /// No collar width passed the exact check.
    NoCollar,
    /// The zero set is too big on this simplex.
    NonGeneric(Simplex),
    /// Certified distance exceeds the radius.
    BoundExceeded { bound: Box<Q>, radius: Box<Q> },
    Obstruction(ObstructionError),
    Inconsistent(String),
}

impl fmt::Display for PerturbationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PerturbationError::Precondition(s) => write!(f, "precondition violated: {s}"),
            PerturbationError::SkeletonNotInA(s) => write!(f, "simplex {s} of the skeleton is not in A"),
            PerturbationError::MissingValue(v) => write!(f, "no value for vertex {v}"),
            PerturbationError::HasZero(s) => write!(f, "map vanishes on simplex {s}"),
            PerturbationError::JoinViolation(s) => write!(f, "simplex {s} violates the join structure"),
            PerturbationError::NotAnExtension(v) => write!(f, "extension differs from f at vertex {v} of A"),
            PerturbationError::NoCollar => write!(f, "no admissible collar width found"),
            PerturbationError::NonGeneric(s) => write!(f, "non-generic zero set on simplex {s}"),
            PerturbationError::BoundExceeded { bound, radius } => {
                write!(f, "distance {bound} exceeds radius {radius}")
            }
            PerturbationError::Obstruction(e) => write!(f, "{e}"),
            PerturbationError::Inconsistent(s) => write!(f, "internal consistency failure: {s}"),
        }
    }
}

impl From<ObstructionError> for PerturbationError {
    fn from(e: ObstructionError) -> Self {
        PerturbationError::Obstruction(e)
    }
}
