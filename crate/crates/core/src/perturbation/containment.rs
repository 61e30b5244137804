use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::{zero_set, PerturbationError, PerturbationSample};
use crate::abelian::{relative_homology, subgroup_image};
use crate::complex::{Chain, Simplex, VertexId};
use crate::filtration::SublevelPair;
use crate::obstruction::{cap_image, CapImageReport, ObstructionCocycle};

/// Outcome of checking one sample.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Contained,
    /// The cap-image basis element with this index is not in the image of
    /// the zero set's homology; its ambient coordinates are attached.
    Violated { generator: usize, coordinates: Vec<BigInt> },
}

impl Verdict {
    pub fn is_contained(&self) -> bool {
        matches!(self, Verdict::Contained)
    }
}

/// Checks `z ⌢ H_k(X, A ∪ B) ⊆ Im(H_{k-n}(Z, Z ∩ B) → H_{k-n}(X, B))` for
/// the zero set `Z` of the sample.
pub fn containment_check(
    pair: &SublevelPair,
    z: &ObstructionCocycle,
    sample: &PerturbationSample,
    k: usize,
) -> Result<Verdict, PerturbationError> {
    let report = cap_image(pair, z, k)?;
    containment_check_with(pair, &report, sample)
}

/// As [`containment_check`], reusing a cap image computed earlier.
pub fn containment_check_with(
    pair: &SublevelPair,
    report: &CapImageReport,
    sample: &PerturbationSample,
) -> Result<Verdict, PerturbationError> {
    if sample.bound > pair.radius {
        return Err(PerturbationError::BoundExceeded {
            bound: Box::new(sample.bound.clone()),
            radius: Box::new(pair.radius.clone()),
        });
    }
    if sample.domain.source != pair.x {
        return Err(PerturbationError::Precondition("sample is not defined on X"));
    }
    let zs = zero_set(&sample.domain.target, &sample.g)?;
    let full = sample.domain.compose(&zs.record);
    let j = report.k - report.n;

    let zb = zs.zero.filter(|s| pair.b_cap.contains(&full.carrier[s]));
    let hz = relative_homology(&zs.zero, j, &zb);

    // Simplicial approximation of the inclusion: each vertex goes to the
    // least vertex of its carrier in X.
    let to_x: BTreeMap<VertexId, VertexId> = zs
        .zero
        .vertices()
        .map(|w| (w, full.carrier[&Simplex::vertex(w)].min_vertex()))
        .collect();
    let mut images = Vec::with_capacity(hz.num_generators());
    for cycle in hz.basis() {
        let pushed = push_forward(cycle, &to_x);
        let coords = report
            .ambient
            .coordinates(&pushed)
            .map_err(|e| PerturbationError::Inconsistent(format!("pushed zero-set cycle: {e}")))?;
        images.push(coords);
    }
    let image = subgroup_image(&report.ambient, &images);
    for (t, b) in report.subgroup.basis().iter().enumerate() {
        if !image.contains(b) {
            return Ok(Verdict::Violated {
                generator: t,
                coordinates: b.clone(),
            });
        }
    }
    Ok(Verdict::Contained)
}

fn push_forward(c: &Chain, map: &BTreeMap<VertexId, VertexId>) -> Chain {
    let mut out = Chain::zero(c.degree());
    for (s, coef) in c.terms() {
        let mut vs: Vec<VertexId> = s.vertices().iter().map(|v| map[v]).collect();
        // Sort with a parity count; repeated vertices collapse the simplex.
        let mut sign = 1i32;
        for a in 0..vs.len() {
            for b in 0..vs.len() - 1 - a {
                if vs[b] > vs[b + 1] {
                    vs.swap(b, b + 1);
                    sign = -sign;
                }
            }
        }
        if vs.windows(2).any(|w| w[0] == w[1]) {
            continue;
        }
        out.add_term(Simplex::from_vec_unchecked(vs), coef * sign);
    }
    out
}
