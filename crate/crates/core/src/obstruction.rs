//! The obstruction cocycle of `f` on `(X, A)`, the simplicial cap product,
//! and cap images `z ⌢ H_k(X, A ∪ B) ⊆ H_{k-n}(X, B)`.
//!
//! The cocycle counts signed preimages of a regular value `p` close to the
//! origin: an `n`-simplex whose image contains `p` gets the orientation sign
//! of `f` on it. The cap product uses front-face evaluation and back-face
//! output, `φ ⌢ [v0..vk] = φ([v0..vn])·[vn..vk]`, so that
//! `∂(φ ⌢ c) = (-1)^n (φ ⌢ ∂c − δφ ⌢ c)`.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::abelian::{
    relative_cohomology, relative_homology, subgroup_image, CohomologyGroup, CoordinateError, HomologyGroup,
    SubgroupPresentation,
};
use crate::complex::{Chain, Cochain, Simplex, SimplicialComplex};
use crate::filtration::{PLMap, SublevelPair};
use crate::geometry::{in_convex_hull, orientation, strictly_inside};
use crate::Q;

/// How many candidate test points are tried before giving up.
pub const TEST_POINT_BUDGET: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ObstructionError {
    /// No candidate avoided the images of all `(n-1)`-simplices.
    NoAdmissibleTestPoint { tried: usize },
    /// The supplied test point lies on the image of this `(n-1)`-simplex.
    DegenerateTestPoint(Simplex),
    DegreeMismatch { cochain: usize, chain: usize },
    /// A capped cycle failed to be closed, or coordinates failed: an internal bug.
    Inconsistent(&'static str),
}

impl fmt::Display for ObstructionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ObstructionError::NoAdmissibleTestPoint { tried } => {
                write!(f, "no admissible test point among {tried} candidates")
            }
            ObstructionError::DegenerateTestPoint(s) => write!(f, "test point lies on the image of {s}"),
            ObstructionError::DegreeMismatch { cochain, chain } => {
                write!(f, "cannot cap a degree-{cochain} cochain with a degree-{chain} chain")
            }
            ObstructionError::Inconsistent(what) => write!(f, "internal consistency failure: {what}"),
        }
    }
}

impl From<CoordinateError> for ObstructionError {
    fn from(_: CoordinateError) -> Self {
        ObstructionError::Inconsistent("coordinates of a capped cycle")
    }
}

/// A relative cocycle `z ∈ Z^n(X, A)` together with the data that produced it.
#[derive(Clone, Debug)]
pub struct ObstructionCocycle {
    pub cochain: Cochain,
    pub n: usize,
    pub test_point: Vec<Q>,
    pub x: SimplicialComplex,
    pub a: SimplicialComplex,
}

impl ObstructionCocycle {
    /// The same base pair with a different cochain.
    pub fn with_cochain(&self, cochain: Cochain) -> Self {
        ObstructionCocycle {
            cochain,
            ..self.clone()
        }
    }
}

/// Candidate `j` is `r/2·(ε, ε², …, εⁿ)` with `ε` the reciprocal of the `j`-th prime.
pub fn candidate_test_point(n: usize, r: &Q, j: usize) -> Vec<Q> {
    let eps = Q::new(BigInt::one(), BigInt::from(nth_prime(j)));
    let half = r / Q::from_integer(BigInt::from(2));
    let mut out = Vec::with_capacity(n);
    let mut pow = eps.clone();
    for _ in 0..n {
        out.push(&half * &pow);
        pow *= &eps;
    }
    out
}

fn nth_prime(j: usize) -> u64 {
    let mut count = 0;
    let mut k = 1u64;
    loop {
        k += 1;
        if (2..k).take_while(|d| d * d <= k).all(|d| !k.is_multiple_of(d)) {
            if count == j {
                return k;
            }
            count += 1;
        }
    }
}

fn image(f: &PLMap, s: &Simplex) -> Vec<Vec<Q>> {
    s.vertices().iter().map(|v| f.value(*v).to_vec()).collect()
}

/// First `(n-1)`-simplex of `X` whose image contains `p`.
fn blocking_simplex(x: &SimplicialComplex, f: &PLMap, p: &[Q]) -> Option<Simplex> {
    let n = f.n();
    x.simplices(n - 1).find(|t| in_convex_hull(&image(f, t), p)).cloned()
}

/// The obstruction cocycle at the first admissible candidate test point.
pub fn obstruction_cocycle(pair: &SublevelPair, f: &PLMap) -> Result<ObstructionCocycle, ObstructionError> {
    for j in 0..TEST_POINT_BUDGET {
        let p = candidate_test_point(f.n(), &pair.radius, j);
        if blocking_simplex(&pair.x, f, &p).is_none() {
            return Ok(build(pair, f, p));
        }
    }
    Err(ObstructionError::NoAdmissibleTestPoint {
        tried: TEST_POINT_BUDGET,
    })
}

/// The obstruction cocycle at an explicit test point, which must avoid the
/// images of all `(n-1)`-simplices of `X`.
pub fn obstruction_cocycle_at(
    pair: &SublevelPair,
    f: &PLMap,
    p: Vec<Q>,
) -> Result<ObstructionCocycle, ObstructionError> {
    if let Some(t) = blocking_simplex(&pair.x, f, &p) {
        return Err(ObstructionError::DegenerateTestPoint(t));
    }
    Ok(build(pair, f, p))
}

fn build(pair: &SublevelPair, f: &PLMap, p: Vec<Q>) -> ObstructionCocycle {
    let n = f.n();
    let mut z = Cochain::zero(n);
    for s in pair.x.simplices(n) {
        if pair.a.contains(s) {
            continue;
        }
        let pts = image(f, s);
        if strictly_inside(&pts, &p) {
            z.add_term(s.clone(), BigInt::from(orientation(&pts)));
        }
    }
    ObstructionCocycle {
        cochain: z,
        n,
        test_point: p,
        x: pair.x.clone(),
        a: pair.a.clone(),
    }
}

/// `z` vanishes on `A` and `δz = 0` on `X`.
pub fn is_cocycle(z: &ObstructionCocycle) -> bool {
    z.cochain.support().all(|s| !z.a.contains(s) && z.x.contains(s)) && z.cochain.coboundary(&z.x).is_zero()
}

/// Coordinates of `[z]` in `H^n(X, A)`.
#[derive(Clone, Debug)]
pub struct ObstructionClass {
    pub group: CohomologyGroup,
    pub coordinates: Vec<BigInt>,
    pub is_trivial: bool,
}

pub fn obstruction_class(z: &ObstructionCocycle) -> Result<ObstructionClass, ObstructionError> {
    let group = relative_cohomology(&z.x, z.n, &z.a);
    let coordinates = group.coordinates(&z.cochain)?;
    let is_trivial = coordinates.iter().all(Zero::is_zero);
    Ok(ObstructionClass {
        group,
        coordinates,
        is_trivial,
    })
}

/// `φ ⌢ c` on chains, extended linearly.
pub fn cap_chain(phi: &Cochain, c: &Chain) -> Result<Chain, ObstructionError> {
    let n = phi.degree();
    let k = c.degree();
    if k < n {
        return Err(ObstructionError::DegreeMismatch { cochain: n, chain: k });
    }
    let mut out = Chain::zero(k - n);
    for (s, coef) in c.terms() {
        let v = phi.eval_simplex(&s.front(n));
        if !v.is_zero() {
            out.add_term(s.back(n), v * coef);
        }
    }
    Ok(out)
}

/// The cap image in one degree together with chain-level witnesses.
#[derive(Clone, Debug)]
pub struct CapImageReport {
    pub k: usize,
    pub n: usize,
    /// `H_k(X, A ∪ B)`.
    pub source: HomologyGroup,
    /// `H_{k-n}(X, B)`.
    pub ambient: HomologyGroup,
    pub subgroup: SubgroupPresentation,
    /// Ambient coordinates of `z ⌢ β` for each basis element `β` of the source.
    pub images: Vec<Vec<BigInt>>,
    /// A relative cycle mod `B` for each subgroup basis element.
    pub witnesses: Vec<Chain>,
    /// A relative cycle mod `A ∪ B` capping to each witness.
    pub preimages: Vec<Chain>,
}

/// `z ⌢ H_k(X, A ∪ B)` inside `H_{k-n}(X, B)`.
pub fn cap_image(pair: &SublevelPair, z: &ObstructionCocycle, k: usize) -> Result<CapImageReport, ObstructionError> {
    let n = z.n;
    if k < n {
        return Err(ObstructionError::DegreeMismatch { cochain: n, chain: k });
    }
    let rel = pair.a_union_b();
    let source = relative_homology(&pair.x, k, &rel);
    let ambient = relative_homology(&pair.x, k - n, &pair.b_cap);
    let mut capped = Vec::with_capacity(source.num_generators());
    let mut images = Vec::with_capacity(source.num_generators());
    for beta in source.basis() {
        let c = cap_chain(&z.cochain, beta)?;
        if !c.is_relative_cycle(&pair.b_cap) {
            return Err(ObstructionError::Inconsistent("capped cycle is not closed mod B"));
        }
        images.push(ambient.coordinates(&c)?);
        capped.push(c);
    }
    let subgroup = subgroup_image(&ambient, &images);
    let combine = |chains: &[Chain], combo: &[BigInt], degree: usize| {
        let mut acc = Chain::zero(degree);
        for (c, a) in chains.iter().zip(combo) {
            acc = acc.add(&c.scaled(a));
        }
        acc
    };
    let witnesses = subgroup
        .basis_combinations()
        .iter()
        .map(|combo| combine(&capped, combo, k - n))
        .collect();
    let preimages = subgroup
        .basis_combinations()
        .iter()
        .map(|combo| combine(source.basis(), combo, k))
        .collect();
    Ok(CapImageReport {
        k,
        n,
        source,
        ambient,
        subgroup,
        images,
        witnesses,
        preimages,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::VertexId;
    use crate::filtration::NormKind;
    use crate::fixtures;
    use alloc::collections::BTreeMap;
    use alloc::vec;

    fn q(n: i64, d: i64) -> Q {
        Q::new(BigInt::from(n), BigInt::from(d))
    }

    fn pair_of(x: SimplicialComplex, r: Q) -> SublevelPair {
        SublevelPair {
            radius: r,
            x,
            a: SimplicialComplex::new(),
            b_cap: SimplicialComplex::new(),
        }
    }

    #[test]
    fn sign_change_on_an_edge() {
        let x = SimplicialComplex::from_maximal([Simplex::from_ids(&[0, 1])]);
        let f = PLMap::new(1, BTreeMap::from([(VertexId(0), vec![q(-1, 1)]), (VertexId(1), vec![q(1, 1)])])).unwrap();
        let z = obstruction_cocycle(&pair_of(x.clone(), q(2, 1)), &f).unwrap();
        assert_eq!(z.cochain.get(&Simplex::from_ids(&[0, 1])), BigInt::one());
        let g = PLMap::new(1, BTreeMap::from([(VertexId(0), vec![q(1, 1)]), (VertexId(1), vec![q(2, 1)])])).unwrap();
        let z = obstruction_cocycle(&pair_of(x, q(2, 1)), &g).unwrap();
        assert!(z.cochain.is_zero());
    }

    #[test]
    fn triangle_degree_matches_winding() {
        let x = fixtures::standard_simplex(2);
        let f = fixtures::simplex_chart(2);
        let p = vec![q(1, 7), q(1, 11)];
        let z = obstruction_cocycle_at(&pair_of(x, q(4, 1)), &f, p.clone()).unwrap();
        assert_eq!(z.cochain.get(&Simplex::from_ids(&[0, 1, 2])), BigInt::one());
        assert_eq!(winding_number(&[vec![q(-1, 1), q(-1, 1)], vec![q(2, 1), q(-1, 1)], vec![q(-1, 1), q(2, 1)]], &p), 1);
    }

    /// Winding number of a closed polygon around `p`, by counting signed
    /// crossings of the ray `{p + t·e1}` after sampling each edge at 16 points.
    fn winding_number(poly: &[Vec<Q>], p: &[Q]) -> i32 {
        let mut samples = Vec::new();
        for i in 0..poly.len() {
            let (a, b) = (&poly[i], &poly[(i + 1) % poly.len()]);
            for s in 0..16 {
                let t = q(s, 16);
                samples.push(vec![&a[0] + (&b[0] - &a[0]) * &t, &a[1] + (&b[1] - &a[1]) * &t]);
            }
        }
        let mut w = 0;
        for i in 0..samples.len() {
            let (a, b) = (&samples[i], &samples[(i + 1) % samples.len()]);
            let (ay, by) = (&a[1] - &p[1], &b[1] - &p[1]);
            if (ay <= Q::zero()) != (by <= Q::zero()) {
                let t = -&ay / (&by - &ay);
                let x = &a[0] + (&b[0] - &a[0]) * t;
                if x > p[0] {
                    w += if by > ay { 1 } else { -1 };
                }
            }
        }
        w
    }

    #[test]
    fn cap_examples() {
        let mut phi = Cochain::zero(1);
        phi.add_term(Simplex::from_ids(&[0, 1]), BigInt::one());
        let c = Chain::elementary(Simplex::from_ids(&[0, 1, 2]));
        assert_eq!(cap_chain(&phi, &c).unwrap(), Chain::elementary(Simplex::from_ids(&[1, 2])));
        assert!(cap_chain(&Cochain::zero(1), &c).unwrap().is_zero());
        assert!(matches!(
            cap_chain(&Cochain::zero(2), &Chain::elementary(Simplex::from_ids(&[0]))),
            Err(ObstructionError::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn band_obstruction_is_nontrivial_and_caps_to_z() {
        let fx = fixtures::band();
        let filt = fx.filtration(true).unwrap();
        let pair = filt.pair(&fx.radius).unwrap();
        let z = obstruction_cocycle(&pair, &filt.f_star).unwrap();
        assert!(is_cocycle(&z));
        assert!(!obstruction_class(&z).unwrap().is_trivial);
        let rep = cap_image(&pair, &z, 2).unwrap();
        assert_eq!(rep.ambient.rank(), 1);
        assert_eq!(rep.subgroup.rank(), 1);
        assert!(rep.subgroup.contains(&[BigInt::one()]));

        let filt0 = fx.filtration(false).unwrap();
        let pair0 = filt0.pair(&fx.radius).unwrap();
        let z0 = obstruction_cocycle(&pair0, &filt0.f_star).unwrap();
        let rep0 = cap_image(&pair0, &z0, 2).unwrap();
        assert!(rep0.ambient.is_trivial());
        assert!(rep0.subgroup.is_trivial());
    }

    #[test]
    fn shifted_band_has_empty_x() {
        let fx = fixtures::band();
        let shifted = PLMap::new(1, fx.f.values().iter().map(|(v, x)| (*v, vec![&x[0] + q(5, 1)])).collect()).unwrap();
        let filt = crate::filtration::Filtration::new(&fx.k, &fx.b, &shifted, fx.radii.clone(), NormKind::LInf).unwrap();
        let pair = filt.pair(&fx.radius).unwrap();
        assert!(pair.x.is_empty());
        let z = obstruction_cocycle(&pair, &filt.f_star).unwrap();
        assert!(obstruction_class(&z).unwrap().is_trivial);
    }

    #[test]
    fn test_point_is_inside_ball() {
        for j in 0..5 {
            let p = candidate_test_point(3, &q(1, 2), j);
            assert!(NormKind::L1.norm(&p) < q(1, 2));
        }
        assert_eq!(nth_prime(0), 2);
        assert_eq!(nth_prime(4), 11);
    }

    #[test]
    fn zero_cochain_is_a_cocycle() {
        let x = fixtures::standard_simplex(2);
        let z = ObstructionCocycle {
            cochain: Cochain::zero(1),
            n: 1,
            test_point: vec![q(1, 4)],
            x,
            a: SimplicialComplex::new(),
        };
        assert!(is_cocycle(&z));
        let mut bad = Cochain::zero(1);
        bad.add_term(Simplex::from_ids(&[0, 1]), BigInt::one());
        assert!(!is_cocycle(&z.with_cochain(bad)));
    }
}
