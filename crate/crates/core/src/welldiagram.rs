//! The radius-indexed module `V(r) = z ⌢ H_*(X(r), A(r) ∪ B) ⊆ H_{*-n}(X(r), B)`
//! with its maps between consecutive radii, and the rank-drop events.
//!
//! For `r_i > r_{i+1}` the map `ι: V(r_i) → V(r_{i+1})` is computed on the
//! subgroup basis of `V(r_i)`: the preimage cycle of a basis element is
//! restricted to `X(r_{i+1})` (everything cut away lies in
//! `|f|⁻¹[r_{i+1}, r_i] ∪ B`), capped with the obstruction cocycle at
//! `r_{i+1}`, and read off in the basis of `V(r_{i+1})`. The inclusion
//! `X(r_{i+1}) ⊆ X(r_i)` must send the result back to the original element;
//! this is checked for every generator.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::abelian::IntegerMatrix;
use crate::complex::SimplicialComplex;
use crate::filtration::{Filtration, FiltrationError, NormKind, PLMap, RadiiSchedule, SublevelPair};
use crate::obstruction::{cap_chain, cap_image, obstruction_cocycle, CapImageReport, ObstructionError};
use crate::Q;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WellDiagramError {
    Filtration(FiltrationError),
    Obstruction(ObstructionError),
    /// An internal check failed; the fields locate the generator.
    Inconsistent {
        radius_index: usize,
        degree: usize,
        generator: usize,
        what: &'static str,
    },
}

impl fmt::Display for WellDiagramError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WellDiagramError::Filtration(e) => write!(f, "{e}"),
            WellDiagramError::Obstruction(e) => write!(f, "{e}"),
            WellDiagramError::Inconsistent {
                radius_index,
                degree,
                generator,
                what,
            } => write!(
                f,
                "internal consistency failure at radius #{radius_index}, degree {degree}, generator {generator}: {what}"
            ),
        }
    }
}

impl From<FiltrationError> for WellDiagramError {
    fn from(e: FiltrationError) -> Self {
        WellDiagramError::Filtration(e)
    }
}

impl From<ObstructionError> for WellDiagramError {
    fn from(e: ObstructionError) -> Self {
        WellDiagramError::Obstruction(e)
    }
}

/// Cap images for every scheduled radius and degree, with connecting maps.
#[derive(Clone, Debug)]
pub struct CapModule {
    pub filtration: Filtration,
    pub pairs: Vec<SublevelPair>,
    /// Degrees `j` of `V_j(r) ⊆ H_j(X, B)`, i.e. `k − n`.
    pub degrees: Vec<usize>,
    /// `reports[i][d]` for radius `i` and degree `degrees[d]`.
    pub reports: Vec<Vec<CapImageReport>>,
    /// `maps[i][d]`: matrix of `ι: V(r_i) → V(r_{i+1})` (columns = sources).
    pub maps: Vec<Vec<IntegerMatrix>>,
    /// `returns[i][d]`: matrix of `i21 ∘ ι` on `V(r_i)`; the identity up to torsion.
    pub returns: Vec<Vec<IntegerMatrix>>,
}

impl CapModule {
    pub fn radii(&self) -> &RadiiSchedule {
        &self.filtration.radii
    }

    pub fn report(&self, radius_index: usize, degree: usize) -> Option<&CapImageReport> {
        let d = self.degrees.iter().position(|&j| j == degree)?;
        self.reports.get(radius_index).map(|r| &r[d])
    }
}

/// One change of the module between consecutive radii.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WellDiagramEvent {
    /// The larger of the two radii: the group is smaller from here on up.
    pub radius: Q,
    pub degree: usize,
    pub multiplicity: usize,
    /// `None` for a free-rank drop, `Some(t)` for lost `Z/t` summands.
    pub torsion: Option<BigInt>,
}

pub fn cap_module(
    k: &SimplicialComplex,
    b: &SimplicialComplex,
    f: &PLMap,
    radii: RadiiSchedule,
    norm: NormKind,
) -> Result<CapModule, WellDiagramError> {
    let filtration = Filtration::new(k, b, f, radii, norm)?;
    let n = filtration.n();
    let top = filtration.k_star().dim().unwrap_or(0);
    let degrees: Vec<usize> = if top >= n { (0..=top - n).collect() } else { Vec::new() };

    let mut pairs = Vec::new();
    let mut cocycles = Vec::new();
    let mut reports = Vec::new();
    for r in filtration.radii.radii() {
        let pair = filtration.pair(r)?;
        let z = obstruction_cocycle(&pair, &filtration.f_star)?;
        let per_degree = degrees
            .iter()
            .map(|&j| cap_image(&pair, &z, j + n))
            .collect::<Result<Vec<_>, _>>()?;
        pairs.push(pair);
        cocycles.push(z);
        reports.push(per_degree);
    }

    let mut maps = Vec::new();
    let mut returns = Vec::new();
    for i in 0..pairs.len().saturating_sub(1) {
        let mut m_i = Vec::new();
        let mut r_i = Vec::new();
        for (d, &j) in degrees.iter().enumerate() {
            let (from, to) = (&reports[i][d], &reports[i + 1][d]);
            let inner = &pairs[i + 1];
            let mut iota = IntegerMatrix::zeros(to.subgroup.iso_type().rank + to.subgroup.torsion().len(), from.witnesses.len());
            let mut back = IntegerMatrix::zeros(from.witnesses.len(), from.witnesses.len());
            for (t, beta) in from.preimages.iter().enumerate() {
                let fail = |what| WellDiagramError::Inconsistent {
                    radius_index: i,
                    degree: j,
                    generator: t,
                    what,
                };
                let restricted = beta.restrict(|s| inner.x.contains(s));
                if !restricted.is_relative_cycle(&inner.a_union_b()) {
                    return Err(fail("restricted preimage is not a relative cycle"));
                }
                let c = cap_chain(&cocycles[i + 1].cochain, &restricted)?;
                let amb = to.ambient.coordinates(&c).map_err(|_| fail("image is not a cycle mod B"))?;
                let sub = to
                    .subgroup
                    .coordinates_of(&amb)
                    .ok_or_else(|| fail("image is outside the next cap image"))?;
                // Order compatibility for torsion generators.
                if let Some(order) = from.subgroup.torsion().get(t.wrapping_sub(from.subgroup.rank())) {
                    let scaled: Vec<BigInt> = amb.iter().map(|x| x * order).collect();
                    let zero = to.ambient.reduce(scaled).iter().all(Zero::is_zero);
                    if !zero {
                        return Err(fail("torsion order not preserved"));
                    }
                }
                for (row, v) in sub.iter().enumerate() {
                    iota.set(row, t, v.clone());
                }
                let home = from.ambient.coordinates(&c).map_err(|_| fail("image is not a cycle in the outer pair"))?;
                let again = from
                    .subgroup
                    .coordinates_of(&home)
                    .ok_or_else(|| fail("inclusion leaves the cap image"))?;
                for (row, v) in again.iter().enumerate() {
                    let expect = if row == t { BigInt::one() } else { BigInt::zero() };
                    let ok = match from.subgroup.torsion().get(row.wrapping_sub(from.subgroup.rank())) {
                        Some(o) if row >= from.subgroup.rank() => (v - &expect).is_multiple_of(o),
                        _ => *v == expect,
                    };
                    if !ok {
                        return Err(fail("inclusion after iota is not the identity"));
                    }
                    back.set(row, t, v.clone());
                }
            }
            m_i.push(iota);
            r_i.push(back);
        }
        maps.push(m_i);
        returns.push(r_i);
    }

    Ok(CapModule {
        filtration,
        pairs,
        degrees,
        reports,
        maps,
        returns,
    })
}

/// Rank and torsion drops between consecutive radii, reported at the larger radius.
pub fn extract_events(module: &CapModule) -> Vec<WellDiagramEvent> {
    let radii = module.radii().radii();
    let mut events = Vec::new();
    for i in 0..module.reports.len().saturating_sub(1) {
        for (d, &degree) in module.degrees.iter().enumerate() {
            let big = module.reports[i][d].subgroup.iso_type();
            let small = module.reports[i + 1][d].subgroup.iso_type();
            if small.rank > big.rank {
                events.push(WellDiagramEvent {
                    radius: radii[i].clone(),
                    degree,
                    multiplicity: small.rank - big.rank,
                    torsion: None,
                });
            }
            let mut values: Vec<&BigInt> = small.torsion.iter().collect();
            values.sort();
            values.dedup();
            for t in values {
                let after = small.torsion.iter().filter(|x| *x == t).count();
                let before = big.torsion.iter().filter(|x| *x == t).count();
                if after > before {
                    events.push(WellDiagramEvent {
                        radius: radii[i].clone(),
                        degree,
                        multiplicity: after - before,
                        torsion: Some(t.clone()),
                    });
                }
            }
        }
    }
    events
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use alloc::vec;

    #[test]
    fn double_well_module() {
        let fx = fixtures::double_well();
        let m = cap_module(&fx.k, &fx.b, &fx.f, fx.radii.clone(), fx.norm).unwrap();
        assert_eq!(m.report(0, 0).unwrap().subgroup.rank(), 1);
        assert_eq!(m.report(1, 0).unwrap().subgroup.rank(), 2);
        assert_eq!(m.returns[0][0], IntegerMatrix::identity(1));
        let iota = &m.maps[0][0];
        assert_eq!((iota.rows(), iota.cols()), (2, 1));
        assert!(!iota.is_zero());
        let ev = extract_events(&m);
        assert_eq!(
            ev,
            vec![WellDiagramEvent {
                radius: fx.radii.radii()[0].clone(),
                degree: 0,
                multiplicity: 1,
                torsion: None
            }]
        );
    }

    #[test]
    fn single_radius_has_no_maps() {
        let fx = fixtures::band();
        let m = cap_module(&fx.k, &fx.b, &fx.f, fx.radii.clone(), fx.norm).unwrap();
        assert!(m.maps.is_empty());
        assert!(extract_events(&m).is_empty());
    }

    #[test]
    fn far_map_gives_trivial_module() {
        let fx = fixtures::double_well();
        let far = PLMap::new(1, fx.f.values().keys().map(|v| (*v, vec![Q::from_integer(9.into())])).collect()).unwrap();
        let m = cap_module(&fx.k, &fx.b, &far, fx.radii.clone(), fx.norm).unwrap();
        assert!(m.reports.iter().flatten().all(|r| r.subgroup.is_trivial()));
        assert!(extract_events(&m).is_empty());
    }
}
