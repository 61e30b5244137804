use num_traits::Zero;

use super::PerturbationError;
use crate::complex::SimplicialComplex;
use crate::filtration::PLMap;
use crate::subdivision::{cut_by_hyperplane, SubdivisionRecord};
use crate::Q;

/// `g⁻¹(0)` as a subcomplex of a refinement of the domain.
#[derive(Clone, Debug)]
pub struct ZeroSet {
    /// Domain → refinement in which the zero set is a subcomplex.
    pub record: SubdivisionRecord,
    pub zero: SimplicialComplex,
    /// `g` interpolated to the refinement.
    pub g: PLMap,
}

/// Cuts the domain by `g_i = 0` for every component and collects the
/// simplices on which `g` vanishes at every vertex.
///
/// The zero set is rejected as non-generic when its dimension exceeds
/// `dim domain − n`.
pub fn zero_set(domain: &SimplicialComplex, g: &PLMap) -> Result<ZeroSet, PerturbationError> {
    if let Some(v) = domain.vertices().find(|v| g.get(*v).is_none()) {
        return Err(PerturbationError::MissingValue(v));
    }
    let zero_level = Q::zero();
    let mut record = SubdivisionRecord::identity(domain);
    let mut current = g.clone();
    for i in 0..g.n() {
        let step = cut_by_hyperplane(&record.target, &current.component(i), &zero_level);
        if step.target != record.target {
            current = current.refine(&step);
            record = record.compose(&step);
        }
    }
    let zero = record
        .target
        .filter(|s| s.vertices().iter().all(|v| current.value(*v).iter().all(Zero::is_zero)));
    let m = domain.dim().unwrap_or(0) as isize;
    let limit = m - g.n() as isize;
    if let Some(d) = zero.dim() {
        if d as isize > limit {
            let s = zero.simplices(d).next().expect("nonempty").clone();
            return Err(PerturbationError::NonGeneric(record.carrier[&s].clone()));
        }
    }
    Ok(ZeroSet { record, zero, g: current })
}
