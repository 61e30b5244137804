use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::{Rng, RngCore};

use super::zero_set;
use crate::complex::{SimplicialComplex, VertexId};
use crate::filtration::{NormKind, PLMap};
use crate::subdivision::SubdivisionRecord;
use crate::Q;

/// Where a perturbation came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Random,
    /// Random direction with offset norm exactly `r` at every vertex.
    Extremal,
    /// Constant shift by `-r·e1`.
    Adversarial,
    User,
    /// Built by one of the constructive procedures.
    Constructed,
}

impl Provenance {
    pub fn name(self) -> &'static str {
        match self {
            Provenance::Random => "random",
            Provenance::Extremal => "extremal",
            Provenance::Adversarial => "adversarial",
            Provenance::User => "user",
            Provenance::Constructed => "constructed",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Random,
    Extremal,
    Adversarial,
}

/// A simplexwise linear `g` on a subdivision of `X` with a certified distance to `f`.
#[derive(Clone, Debug)]
pub struct PerturbationSample {
    /// `X` → the complex on which `g` is simplexwise linear.
    pub domain: SubdivisionRecord,
    pub g: PLMap,
    /// `max ‖g − f‖`, attained at a vertex of the domain.
    pub bound: Q,
    pub provenance: Provenance,
}

impl PerturbationSample {
    /// `g = f + offset` vertexwise on the complex of `f`.
    pub fn from_offsets(
        x: &SimplicialComplex,
        f: &PLMap,
        offsets: &BTreeMap<VertexId, Vec<Q>>,
        norm: NormKind,
        provenance: Provenance,
    ) -> Self {
        let values = x
            .vertices()
            .map(|v| {
                let o = &offsets[&v];
                (v, f.value(v).iter().zip(o).map(|(a, b)| a + b).collect())
            })
            .collect();
        let g = PLMap::new(f.n(), values).expect("offsets have the map's arity");
        let bound = x
            .vertices()
            .map(|v| norm.norm(&offsets[&v]))
            .max()
            .unwrap_or_else(Q::zero);
        PerturbationSample {
            domain: SubdivisionRecord::identity(x),
            g,
            bound,
            provenance,
        }
    }
}

/// Maximum number of redraws for a non-generic random sample.
pub const REDRAW_CAP: usize = 16;

const DENOMINATOR: i64 = 64;

fn random_vector<R: RngCore + ?Sized>(n: usize, rng: &mut R) -> Vec<Q> {
    (0..n)
        .map(|_| Q::new(BigInt::from(rng.gen_range(-DENOMINATOR..=DENOMINATOR)), BigInt::from(DENOMINATOR)))
        .collect()
}

fn scale(v: &[Q], s: &Q) -> Vec<Q> {
    v.iter().map(|x| x * s).collect()
}

fn draw<R: RngCore + ?Sized>(
    x: &SimplicialComplex,
    n: usize,
    r: &Q,
    norm: NormKind,
    strategy: Strategy,
    rng: &mut R,
) -> BTreeMap<VertexId, Vec<Q>> {
    x.vertices()
        .map(|v| {
            let o = match strategy {
                Strategy::Random => {
                    let u = random_vector(n, rng);
                    let len = norm.norm(&u);
                    if len > Q::from_integer(BigInt::from(1)) {
                        scale(&u, &(r / len))
                    } else {
                        scale(&u, r)
                    }
                }
                Strategy::Extremal => loop {
                    let u = random_vector(n, rng);
                    let len = norm.norm(&u);
                    if len.is_positive() {
                        break scale(&u, &(r / len));
                    }
                },
                Strategy::Adversarial => {
                    let mut u = alloc::vec![Q::zero(); n];
                    u[0] = -r.clone();
                    u
                }
            };
            (v, o)
        })
        .collect()
}

/// `count` perturbations of `f` on `x` with vertex offsets of norm at most `r`.
///
/// Random draws with a non-generic zero set are redrawn up to
/// [`REDRAW_CAP`] times; the last draw is kept either way.
pub fn sample_perturbations<R: RngCore + ?Sized>(
    x: &SimplicialComplex,
    f: &PLMap,
    r: &Q,
    norm: NormKind,
    count: usize,
    strategy: Strategy,
    rng: &mut R,
) -> Vec<PerturbationSample> {
    let provenance = match strategy {
        Strategy::Random => Provenance::Random,
        Strategy::Extremal => Provenance::Extremal,
        Strategy::Adversarial => Provenance::Adversarial,
    };
    (0..count)
        .map(|_| {
            let mut sample = None;
            for _ in 0..REDRAW_CAP {
                let offsets = draw(x, f.n(), r, norm, strategy, rng);
                let s = PerturbationSample::from_offsets(x, f, &offsets, norm, provenance);
                let generic = zero_set(x, &s.g).is_ok();
                sample = Some(s);
                if generic || strategy == Strategy::Adversarial {
                    break;
                }
            }
            sample.expect("at least one draw")
        })
        .collect()
}
