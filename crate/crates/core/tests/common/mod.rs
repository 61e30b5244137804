//! Random generators and independent oracles shared by the property suites
//! and the acceptance runner.
#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::Rng;
use wellcap_core::abelian::smith_normal_form;
use wellcap_core::complex::boundary_matrix;
use wellcap_core::geometry::{affine_dimension, determinant};
use wellcap_core::obstruction::cap_chain;
use wellcap_core::{Chain, Cochain, IntegerMatrix, Simplex, SimplicialComplex, SubdivisionRecord, VertexId, Q};

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// A random complex on 4..=7 vertices with up to five maximal simplices of
/// dimension at most 3.
pub fn random_complex<R: Rng>(rng: &mut R) -> SimplicialComplex {
    let nv: u32 = rng.gen_range(4..=7);
    let count = rng.gen_range(1..=5);
    let mut tops = Vec::new();
    for _ in 0..count {
        let dim = rng.gen_range(1..=3usize);
        let mut vs: Vec<u32> = (0..nv).collect();
        for i in 0..vs.len() {
            let j = rng.gen_range(i..vs.len());
            vs.swap(i, j);
        }
        vs.truncate(dim + 1);
        tops.push(Simplex::from_ids(&vs));
    }
    SimplicialComplex::from_maximal(tops)
}

/// A random subcomplex: the closure of a random subset of simplices.
pub fn random_subcomplex<R: Rng>(rng: &mut R, c: &SimplicialComplex) -> SimplicialComplex {
    SimplicialComplex::from_maximal(c.all_simplices().filter(|_| rng.gen_bool(0.2)).cloned())
}

/// Random small rational values, with zeros reasonably likely.
pub fn random_values<R: Rng>(rng: &mut R, c: &SimplicialComplex) -> BTreeMap<VertexId, Q> {
    c.vertices().map(|v| (v, q(rng.gen_range(-3..=3), rng.gen_range(1..=2)))).collect()
}

/// Affine functions given on the original vertices, interpolated to the refinement.
pub fn interpolate(record: &SubdivisionRecord, values: &BTreeMap<VertexId, Q>) -> BTreeMap<VertexId, Q> {
    record
        .interpolate(|v| vec![values[&v].clone()])
        .into_iter()
        .map(|(k, v)| (k, v[0].clone()))
        .collect()
}

/// Checks the subdivision geometrically through barycentric coordinates:
/// every target simplex is nondegenerate inside its carrier, and for every
/// source simplex the volumes of the target simplices of full dimension
/// carried by it sum to its volume.
pub fn subdivision_is_geometric(record: &SubdivisionRecord) -> Result<(), String> {
    let coords = |w: VertexId, sigma: &Simplex| -> Vec<Q> {
        sigma
            .vertices()
            .iter()
            .map(|v| record.vertex_coords[&w].get(v).cloned().unwrap_or_else(Q::zero))
            .collect()
    };
    let mut volume: BTreeMap<&Simplex, Q> = BTreeMap::new();
    for s in record.target.all_simplices() {
        let sigma = &record.carrier[s];
        let pts: Vec<Vec<Q>> = s.vertices().iter().map(|w| coords(*w, sigma)).collect();
        if affine_dimension(&pts) != s.dim() as isize {
            return Err(format!("degenerate target simplex {s} in {sigma}"));
        }
        if s.dim() == sigma.dim() {
            let det = determinant(&pts);
            *volume.entry(sigma).or_insert_with(Q::zero) += det.abs();
        }
    }
    for sigma in record.source.all_simplices() {
        let v = volume.get(sigma).cloned().unwrap_or_else(Q::zero);
        if v != q(1, 1) {
            return Err(format!("source simplex {sigma} covered with volume {v}"));
        }
    }
    Ok(())
}

/// Every target simplex carried by a face of `sigma` lies in a subdivided
/// ball: the induced triangulation of `sigma` has Euler characteristic 1.
pub fn faces_are_balls(record: &SubdivisionRecord) -> bool {
    record.source.all_simplices().all(|sigma| {
        let induced = record.target.filter(|s| record.carrier[s].is_face_of(sigma));
        induced.validate().is_ok() && induced.euler_characteristic() == 1
    })
}

/// `∂_{k-1} ∘ ∂_k = 0` for every `k`, relative to `rel`.
pub fn boundary_squares_to_zero(c: &SimplicialComplex, rel: &SimplicialComplex) -> bool {
    let top = c.dim().unwrap_or(0);
    (2..=top).all(|k| boundary_matrix(c, k - 1, rel).mul(&boundary_matrix(c, k, rel)).is_zero())
}

fn gcd_all(values: impl IntoIterator<Item = BigInt>) -> BigInt {
    values.into_iter().fold(BigInt::zero(), |a, b| a.gcd(&b))
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).filter(|i| m & (1 << i) != 0).collect())
        .collect()
}

/// Determinantal divisors `D_k = gcd of all k×k minors`.
pub fn determinantal_divisors(a: &IntegerMatrix) -> Vec<BigInt> {
    let mut out = Vec::new();
    for k in 1..=a.rows().min(a.cols()) {
        let mut minors = Vec::new();
        for rs in subsets(a.rows(), k) {
            for cs in subsets(a.cols(), k) {
                let rows: Vec<Vec<BigInt>> = rs.iter().map(|&i| cs.iter().map(|&j| a.get(i, j).clone()).collect()).collect();
                minors.push(IntegerMatrix::from_rows(&rows).determinant());
            }
        }
        let g = gcd_all(minors);
        if g.is_zero() {
            break;
        }
        out.push(g);
    }
    out
}

/// SNF against the minors oracle, plus `U·A·V = D` and unimodularity.
pub fn snf_matches_minors(a: &IntegerMatrix) -> Result<(), String> {
    let s = smith_normal_form(a);
    if s.u.mul(a).mul(&s.v) != s.d {
        return Err("U·A·V != D".into());
    }
    if s.u.determinant().abs() != BigInt::from(1) || s.v.determinant().abs() != BigInt::from(1) {
        return Err("U or V not unimodular".into());
    }
    let f = s.invariant_factors();
    let divisors = determinantal_divisors(a);
    if divisors.len() != f.len() {
        return Err(format!("rank {} vs oracle {}", f.len(), divisors.len()));
    }
    let mut prod = BigInt::from(1);
    for (k, d) in f.iter().enumerate() {
        if k > 0 && !d.is_multiple_of(&f[k - 1]) {
            return Err("divisibility chain broken".into());
        }
        prod *= d;
        if prod != divisors[k] {
            return Err(format!("d1..d{} = {prod}, oracle {}", k + 1, divisors[k]));
        }
    }
    Ok(())
}

pub fn random_matrix<R: Rng>(rng: &mut R) -> IntegerMatrix {
    let r = rng.gen_range(1..=4usize);
    let c = rng.gen_range(1..=4usize);
    let rows: Vec<Vec<i64>> = (0..r).map(|_| (0..c).map(|_| rng.gen_range(-3..=3)).collect()).collect();
    IntegerMatrix::from_rows(&rows)
}

pub fn random_cochain<R: Rng>(rng: &mut R, c: &SimplicialComplex, n: usize) -> Cochain {
    Cochain::from_terms(n, c.simplices(n).map(|s| (s.clone(), BigInt::from(rng.gen_range(-2..=2)))))
}

pub fn random_chain<R: Rng>(rng: &mut R, c: &SimplicialComplex, k: usize) -> Chain {
    Chain::from_terms(k, c.simplices(k).map(|s| (s.clone(), BigInt::from(rng.gen_range(-2..=2)))))
}

/// `∂(φ ⌢ c) = (-1)^n (φ ⌢ ∂c − δφ ⌢ c)`.
pub fn leibniz_holds(complex: &SimplicialComplex, phi: &Cochain, c: &Chain) -> bool {
    let n = phi.degree();
    let lhs = cap_chain(phi, c).unwrap().boundary();
    let a = cap_chain(phi, &c.boundary()).unwrap();
    let b = cap_chain(&phi.coboundary(complex), c).unwrap();
    let mut rhs = a.add(&b.scaled(&BigInt::from(-1)));
    if n % 2 == 1 {
        rhs = rhs.scaled(&BigInt::from(-1));
    }
    lhs == rhs
}

/// A random complex with some simplex of dimension at least `n + 1`, and a
/// random `(φ, c)` of degrees `n` and `k > n`.
pub fn random_cap_case<R: Rng>(rng: &mut R) -> (SimplicialComplex, Cochain, Chain) {
    loop {
        let c = random_complex(rng);
        let top = c.dim().unwrap_or(0);
        if top == 0 {
            continue;
        }
        let n = rng.gen_range(0..top);
        let k = rng.gen_range(n + 1..=top);
        let phi = random_cochain(rng, &c, n);
        let chain = random_chain(rng, &c, k);
        return (c, phi, chain);
    }
}
