use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{dual_complex, join_extension, DualComplexResult, PerturbationError, PerturbationSample, Provenance};
use crate::complex::{SimplicialComplex, VertexId};
use crate::filtration::{NormKind, PLMap, SublevelPair};
use crate::subdivision::{cut_by_hyperplane, SubdivisionRecord};
use crate::Q;

/// Number of halvings tried when searching for the collar width.
const COLLAR_STEPS: usize = 64;

fn check_extends(a: &SimplicialComplex, f: &PLMap, e: &PLMap) -> Result<(), PerturbationError> {
    for v in a.vertices() {
        match e.get(v) {
            None => return Err(PerturbationError::MissingValue(v)),
            Some(x) if x != f.value(v) => return Err(PerturbationError::NotAnExtension(v)),
            Some(_) => {}
        }
    }
    Ok(())
}

/// Cuts `x` along `ℓ_j(f) = level` for every facet functional.
fn cut_at(x: &SimplicialComplex, f: &PLMap, level: &Q, norm: NormKind) -> (SubdivisionRecord, PLMap) {
    let mut record = SubdivisionRecord::identity(x);
    let mut current = f.clone();
    for l in norm.facets(f.n()) {
        let step = cut_by_hyperplane(&record.target, &current.functional(&l), level);
        if step.target != record.target {
            current = current.refine(&step);
            record = record.compose(&step);
        }
    }
    (record, current)
}

fn difference_norm(a: &[Q], b: &[Q], norm: NormKind) -> Q {
    let d: Vec<Q> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    norm.norm(&d)
}

/// `g = χ·e` on a refinement of `x`, with `χ` constant on `|f| ≤ r − ε` and
/// `1` on the collar `|f| > r − ε`, where `‖e − f‖ < r/2`.
fn rescale(
    x: &SimplicialComplex,
    a: &SimplicialComplex,
    f: &PLMap,
    e: &PLMap,
    r: &Q,
    norm: NormKind,
) -> Result<PerturbationSample, PerturbationError> {
    check_extends(a, f, e)?;
    if let Some(v) = x.vertices().find(|v| e.get(*v).is_none() || f.get(*v).is_none()) {
        return Err(PerturbationError::MissingValue(v));
    }
    let two = Q::from_integer(BigInt::from(2));
    let half_r = r / &two;
    let mut eps = r / Q::from_integer(BigInt::from(4));
    for _ in 0..COLLAR_STEPS {
        let level = r - &eps;
        let (record, f_ref) = cut_at(x, f, &level, norm);
        let e_ref = e.refine(&record);
        let collar: Vec<VertexId> = record
            .target
            .vertices()
            .filter(|v| norm.norm(f_ref.value(*v)) >= level)
            .collect();
        let ok = collar
            .iter()
            .all(|v| difference_norm(e_ref.value(*v), f_ref.value(*v), norm) < half_r);
        if !ok {
            eps /= &two;
            continue;
        }
        let inner: Vec<VertexId> = record
            .target
            .vertices()
            .filter(|v| norm.norm(f_ref.value(*v)) <= level)
            .collect();
        let biggest = inner.iter().map(|v| norm.norm(e_ref.value(*v))).max().unwrap_or_else(Q::zero);
        let chi_inner = if biggest.is_zero() {
            Q::one()
        } else {
            &eps / (&two * biggest)
        };
        let values: BTreeMap<VertexId, Vec<Q>> = record
            .target
            .vertices()
            .map(|v| {
                let chi = if norm.norm(f_ref.value(v)) <= level { &chi_inner } else { &Q::one() };
                (v, e_ref.value(v).iter().map(|y| y * chi).collect())
            })
            .collect();
        let g = PLMap::new(f.n(), values).expect("arity");
        let bound = record
            .target
            .vertices()
            .map(|v| difference_norm(g.value(v), f_ref.value(v), norm))
            .max()
            .unwrap_or_else(Q::zero);
        if bound >= *r {
            return Err(PerturbationError::BoundExceeded { bound: Box::new(bound), radius: Box::new(r.clone()) });
        }
        return Ok(PerturbationSample {
            domain: record,
            g,
            bound,
            provenance: Provenance::Constructed,
        });
    }
    Err(PerturbationError::NoCollar)
}

/// A strict `r`-perturbation `g` with `g⁻¹(0) = e⁻¹(0)` from an extension
/// `e: X → R^n` of `f|_A`.
pub fn extension_to_perturbation(
    pair: &SublevelPair,
    f: &PLMap,
    e: &PLMap,
    norm: NormKind,
) -> Result<PerturbationSample, PerturbationError> {
    rescale(&pair.x, &pair.a, f, e, &pair.radius, norm)
}

/// The dual construction and the perturbation built from it.
#[derive(Clone, Debug)]
pub struct SkeletalPerturbation {
    pub dual: DualComplexResult,
    /// `h * 0_Y` on the dual subdivision.
    pub join: PLMap,
    /// The collar refinement of the dual subdivision used by the rescaling.
    pub rescaling: SubdivisionRecord,
    /// The rescaled strict perturbation; its domain starts at `X`.
    pub sample: PerturbationSample,
}

/// Extends `h` (given on `A ∪ X^(i-1)`, nowhere zero, equal to `f` on `A`)
/// by the join with `0_Y` and rescales the result into a strict
/// `r`-perturbation whose zero set is the dual complex `Y`.
pub fn skeletal_perturbation(
    pair: &SublevelPair,
    f: &PLMap,
    h: &PLMap,
    i: usize,
    norm: NormKind,
) -> Result<SkeletalPerturbation, PerturbationError> {
    if h.n() != f.n() {
        return Err(PerturbationError::Precondition("h and f have different targets"));
    }
    check_extends(&pair.a, f, h)?;
    let a_aug = pair.a.union(&pair.x.skeleton(i as isize - 1));
    let dual = dual_complex(&pair.x, &a_aug, i)?;
    let join = join_extension(&dual, h)?;
    let f_dual = f.refine(&dual.subdivision);
    let scaled = rescale(&dual.subdivision.target, &pair.a, &f_dual, &join, &pair.radius, norm)?;
    let sample = PerturbationSample {
        domain: dual.subdivision.compose(&scaled.domain),
        g: scaled.g,
        bound: scaled.bound,
        provenance: Provenance::Constructed,
    };
    Ok(SkeletalPerturbation { dual, join, rescaling: scaled.domain, sample })
}
