use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{smith_normal_form, IntegerMatrix, SmithDecomposition};
use crate::complex::{
    boundary_matrix, Cohomological, Homological, LinearCombination, Simplex, SimplicialComplex,
};

/// Isomorphism type `Z^rank ⊕ Z/t1 ⊕ ... ⊕ Z/tq` with `t1 | ... | tq`, all `ti ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct IsoType {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl IsoType {
    pub fn free(rank: usize) -> Self {
        IsoType {
            rank,
            torsion: Vec::new(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    /// `dim (G ⊗ Z/p)` for a prime `p`.
    pub fn rank_mod_p(&self, p: u32) -> usize {
        let p = BigInt::from(p);
        self.rank + self.torsion.iter().filter(|t| t.is_multiple_of(&p)).count()
    }
}

impl fmt::Display for IsoType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(alloc::format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(alloc::format!("Z/{t}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Failures of coordinate extraction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoordinateError {
    WrongDegree { expected: usize, found: usize },
    /// The input is not a (relative) cycle or cocycle.
    NotClosed,
    WrongLength { expected: usize, found: usize },
}

impl fmt::Display for CoordinateError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoordinateError::WrongDegree { expected, found } => {
                write!(f, "expected degree {expected}, found {found}")
            }
            CoordinateError::NotClosed => write!(f, "input is not closed"),
            CoordinateError::WrongLength { expected, found } => {
                write!(f, "expected {expected} coordinates, found {found}")
            }
        }
    }
}

/// A (co)homology group `ker d_out / im d_in` on an ordered cell basis.
///
/// Coordinates list the free part first, then one entry per torsion factor
/// reduced to `0..t`.
#[derive(Clone, Debug)]
pub struct GroupPresentation<K> {
    degree: usize,
    iso: IsoType,
    cells: Vec<Simplex>,
    basis: Vec<LinearCombination<K>>,
    d_out: IntegerMatrix,
    /// Rows map a closed vector to the raw quotient coordinates.
    coord_map: IntegerMatrix,
    /// Row of `coord_map` for each output slot, free slots first.
    slots: Vec<usize>,
}

pub type HomologyGroup = GroupPresentation<Homological>;
pub type CohomologyGroup = GroupPresentation<Cohomological>;

impl<K: Clone> GroupPresentation<K> {
    /// Presentation of `ker d_out / im d_in` where the middle group has the
    /// basis `cells`.
    pub fn from_differentials(
        degree: usize,
        cells: Vec<Simplex>,
        d_out: IntegerMatrix,
        d_in: &IntegerMatrix,
    ) -> Self {
        let n = cells.len();
        assert_eq!(d_out.cols(), n);
        assert_eq!(d_in.rows(), n);
        let outer = smith_normal_form(&d_out);
        let r = outer.rank;
        // Kernel basis: trailing columns of V.
        let kernel = outer.v.col_range(r, n);
        let m = outer.v_inv.row_range(r, n).mul(d_in);
        let inner: SmithDecomposition = smith_normal_form(&m);
        let coord_map = inner.u.mul(&outer.v_inv.row_range(r, n));
        let gens = kernel.mul(&inner.u_inv);

        let mut slots = Vec::new();
        let mut torsion = Vec::new();
        for i in inner.rank..(n - r) {
            slots.push(i);
        }
        let rank = slots.len();
        for i in 0..inner.rank {
            let t = inner.d.get(i, i);
            if !t.is_one() {
                slots.push(i);
                torsion.push(t.clone());
            }
        }
        let basis = slots
            .iter()
            .map(|&i| LinearCombination::from_vector(degree, &cells, &gens.column(i)))
            .collect();
        GroupPresentation {
            degree,
            iso: IsoType { rank, torsion },
            cells,
            basis,
            d_out,
            coord_map,
            slots,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn iso_type(&self) -> &IsoType {
        &self.iso
    }

    pub fn rank(&self) -> usize {
        self.iso.rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.iso.torsion
    }

    /// Number of coordinates (free plus torsion).
    pub fn num_generators(&self) -> usize {
        self.slots.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.slots.is_empty()
    }

    /// Representatives of the generators, in coordinate order.
    pub fn basis(&self) -> &[LinearCombination<K>] {
        &self.basis
    }

    pub fn cells(&self) -> &[Simplex] {
        &self.cells
    }

    /// Order of the `i`-th generator; `None` when it is free.
    pub fn generator_order(&self, i: usize) -> Option<&BigInt> {
        i.checked_sub(self.iso.rank).map(|j| &self.iso.torsion[j])
    }

    /// Class coordinates of a closed vector on the cell basis.
    pub fn coordinates_of_vector(&self, x: &[BigInt]) -> Result<Vec<BigInt>, CoordinateError> {
        if x.len() != self.cells.len() {
            return Err(CoordinateError::WrongLength {
                expected: self.cells.len(),
                found: x.len(),
            });
        }
        if !self.d_out.mul_vec(x).iter().all(Zero::is_zero) {
            return Err(CoordinateError::NotClosed);
        }
        let raw = self.coord_map.mul_vec(x);
        Ok(self.reduce(self.slots.iter().map(|&i| raw[i].clone()).collect()))
    }

    /// Class coordinates of a (relative) cycle or cocycle. Terms on cells
    /// outside the basis (for instance on the relative subcomplex) are ignored.
    pub fn coordinates(&self, c: &LinearCombination<K>) -> Result<Vec<BigInt>, CoordinateError> {
        if c.degree() != self.degree {
            return Err(CoordinateError::WrongDegree {
                expected: self.degree,
                found: c.degree(),
            });
        }
        self.coordinates_of_vector(&c.to_vector(&self.cells))
    }

    /// Reduces torsion coordinates into `0..t`.
    pub fn reduce(&self, mut coords: Vec<BigInt>) -> Vec<BigInt> {
        for (j, t) in self.iso.torsion.iter().enumerate() {
            let v = &mut coords[self.iso.rank + j];
            *v = v.mod_floor(t);
        }
        coords
    }

    /// A representative of the class with the given coordinates.
    pub fn representative(&self, coords: &[BigInt]) -> LinearCombination<K> {
        let mut c = LinearCombination::zero(self.degree);
        for (b, x) in self.basis.iter().zip(coords) {
            c = c.add(&b.scaled(x));
        }
        c
    }
}

/// `H_k(complex, rel; Z)`.
pub fn relative_homology(complex: &SimplicialComplex, k: usize, rel: &SimplicialComplex) -> HomologyGroup {
    let cells = complex.relative_cells(k, rel);
    let d_out = boundary_matrix(complex, k, rel);
    let d_in = boundary_matrix(complex, k + 1, rel);
    GroupPresentation::from_differentials(k, cells, d_out, &d_in)
}

/// `H^n(complex, rel; Z)`, with coboundary the transpose of the boundary.
pub fn relative_cohomology(complex: &SimplicialComplex, n: usize, rel: &SimplicialComplex) -> CohomologyGroup {
    let cells = complex.relative_cells(n, rel);
    let d_out = boundary_matrix(complex, n + 1, rel).transpose();
    let d_in = if n == 0 {
        IntegerMatrix::zeros(cells.len(), 0)
    } else {
        boundary_matrix(complex, n, rel).transpose()
    };
    GroupPresentation::from_differentials(n, cells, d_out, &d_in)
}

/// The subgroup of an ambient group generated by coordinate vectors.
#[derive(Clone, Debug)]
pub struct SubgroupPresentation {
    ambient: IsoType,
    generators: Vec<Vec<BigInt>>,
    iso: IsoType,
    /// Ambient coordinates of each subgroup basis element.
    basis: Vec<Vec<BigInt>>,
    /// Each basis element as an integer combination of `generators`.
    combinations: Vec<Vec<BigInt>>,
    // Membership data: `u·x` must be divisible by `d` in the first `d.len()`
    // slots and vanish after; `p` maps the quotient to basis coordinates.
    u: IntegerMatrix,
    d: Vec<BigInt>,
    p: IntegerMatrix,
    slots: Vec<usize>,
}

/// The subgroup generated by `gens` (coordinate vectors) inside `ambient`.
pub fn subgroup_image<K: Clone>(ambient: &GroupPresentation<K>, gens: &[Vec<BigInt>]) -> SubgroupPresentation {
    SubgroupPresentation::generated(ambient.iso_type().clone(), gens)
}

impl SubgroupPresentation {
    pub fn generated(ambient: IsoType, gens: &[Vec<BigInt>]) -> Self {
        let free = ambient.rank;
        let dim = free + ambient.torsion.len();
        for g in gens {
            assert_eq!(g.len(), dim, "generator has wrong length");
        }
        let g_mat = IntegerMatrix::from_columns(dim, gens);
        let relations: Vec<Vec<BigInt>> = ambient
            .torsion
            .iter()
            .enumerate()
            .map(|(j, t)| {
                let mut v = alloc::vec![BigInt::zero(); dim];
                v[free + j] = t.clone();
                v
            })
            .collect();
        let r_mat = IntegerMatrix::from_columns(dim, &relations);
        let full = g_mat.hconcat(&r_mat);
        let outer = smith_normal_form(&full);
        let s = outer.rank;
        let d: Vec<BigInt> = outer.invariant_factors();

        // Relations in the basis b_j = d_j·U⁻¹e_j of the generated lattice.
        let ur = outer.u.mul(&r_mat);
        let mut c = IntegerMatrix::zeros(s, relations.len());
        for j in 0..s {
            for l in 0..relations.len() {
                c.set(j, l, ur.get(j, l) / &d[j]);
            }
        }
        let inner = smith_normal_form(&c);

        let mut slots: Vec<usize> = (inner.rank..s).collect();
        let rank = slots.len();
        let mut torsion = Vec::new();
        for i in 0..inner.rank {
            let t = inner.d.get(i, i);
            if !t.is_one() {
                slots.push(i);
                torsion.push(t.clone());
            }
        }

        // Lattice basis in terms of the columns of [G | R], then re-based by P⁻¹.
        let coeffs = outer.v.col_range(0, s).mul(&inner.u_inv);
        let lattice = full.mul(&coeffs);
        let amb_reduce = |mut v: Vec<BigInt>| {
            for (j, t) in ambient.torsion.iter().enumerate() {
                v[free + j] = v[free + j].mod_floor(t);
            }
            v
        };
        let basis = slots.iter().map(|&i| amb_reduce(lattice.column(i))).collect();
        let combinations = slots
            .iter()
            .map(|&i| coeffs.column(i)[..gens.len()].to_vec())
            .collect();

        SubgroupPresentation {
            ambient,
            generators: gens.to_vec(),
            iso: IsoType { rank, torsion },
            basis,
            combinations,
            u: outer.u,
            d,
            p: inner.u,
            slots,
        }
    }

    pub fn ambient(&self) -> &IsoType {
        &self.ambient
    }

    pub fn generators(&self) -> &[Vec<BigInt>] {
        &self.generators
    }

    pub fn iso_type(&self) -> &IsoType {
        &self.iso
    }

    pub fn rank(&self) -> usize {
        self.iso.rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.iso.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.slots.is_empty()
    }

    /// Ambient coordinates of the canonical subgroup basis (free part first).
    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    /// Each subgroup basis element as a combination of the generators.
    pub fn basis_combinations(&self) -> &[Vec<BigInt>] {
        &self.combinations
    }

    /// Coordinates of an ambient element in the subgroup basis, or `None` if
    /// it is not in the subgroup.
    pub fn coordinates_of(&self, x: &[BigInt]) -> Option<Vec<BigInt>> {
        let free = self.ambient.rank;
        if x.len() != free + self.ambient.torsion.len() {
            return None;
        }
        let ux = self.u.mul_vec(x);
        let s = self.d.len();
        if ux[s..].iter().any(|v| !v.is_zero()) {
            return None;
        }
        let mut c = Vec::with_capacity(s);
        for j in 0..s {
            let (q, r) = ux[j].div_rem(&self.d[j]);
            if !r.is_zero() {
                return None;
            }
            c.push(q);
        }
        let pc = self.p.mul_vec(&c);
        let mut out: Vec<BigInt> = self.slots.iter().map(|&i| pc[i].clone()).collect();
        for (j, t) in self.iso.torsion.iter().enumerate() {
            let v = &mut out[self.iso.rank + j];
            *v = v.mod_floor(t);
        }
        Some(out)
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        self.coordinates_of(x).is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use alloc::vec;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn triangle() -> SimplicialComplex {
        SimplicialComplex::from_maximal([Simplex::from_ids(&[0, 1, 2])])
    }

    fn assert_left_inverse<K: Clone>(g: &GroupPresentation<K>) {
        for (i, b) in g.basis().iter().enumerate() {
            let mut e = vec![BigInt::zero(); g.num_generators()];
            e[i] = BigInt::one();
            assert_eq!(g.coordinates(b).unwrap(), e);
        }
    }

    #[test]
    fn circle_homology_and_cohomology() {
        let circle = triangle().skeleton(1);
        let h1 = relative_homology(&circle, 1, &SimplicialComplex::new());
        assert_eq!(h1.iso_type(), &IsoType::free(1));
        assert_left_inverse(&h1);
        let h0 = relative_homology(&circle, 0, &SimplicialComplex::new());
        assert_eq!(h0.iso_type(), &IsoType::free(1));
        let c1 = relative_cohomology(&circle, 1, &SimplicialComplex::new());
        assert_eq!(c1.iso_type(), &IsoType::free(1));
        assert_left_inverse(&c1);
    }

    #[test]
    fn disk_relative_boundary() {
        let disk = triangle();
        let rim = disk.skeleton(1);
        let h2 = relative_cohomology(&disk, 2, &rim);
        assert_eq!(h2.iso_type(), &IsoType::free(1));
        assert_eq!(relative_homology(&disk, 2, &rim).rank(), 1);
        assert!(relative_homology(&disk, 1, &rim).is_trivial());
    }

    #[test]
    fn projective_plane_torsion() {
        let rp2 = fixtures::projective_plane();
        let h1 = relative_homology(&rp2, 1, &SimplicialComplex::new());
        assert_eq!(h1.rank(), 0);
        assert_eq!(h1.torsion(), &[BigInt::from(2)]);
        assert_left_inverse(&h1);
        assert!(relative_homology(&rp2, 2, &SimplicialComplex::new()).is_trivial());
        let h2 = relative_cohomology(&rp2, 2, &SimplicialComplex::new());
        assert_eq!(h2.torsion(), &[BigInt::from(2)]);
        assert_eq!(h1.iso_type().rank_mod_p(2), 1);
        assert_eq!(h1.iso_type().rank_mod_p(3), 0);
    }

    #[test]
    fn relative_cycle_terms_on_rel_are_ignored() {
        let disk = triangle();
        let rim = disk.skeleton(1);
        let h2 = relative_homology(&disk, 2, &rim);
        let c = LinearCombination::elementary(Simplex::from_ids(&[0, 1, 2]));
        assert_eq!(h2.coordinates(&c).unwrap().len(), 1);
        let h1 = relative_homology(&disk, 1, &SimplicialComplex::new());
        let edge = LinearCombination::elementary(Simplex::from_ids(&[0, 1]));
        assert_eq!(h1.coordinates(&edge), Err(CoordinateError::NotClosed));
    }

    #[test]
    fn subgroup_of_integers() {
        let s = SubgroupPresentation::generated(IsoType::free(1), &[big(&[2])]);
        assert_eq!(s.iso_type(), &IsoType::free(1));
        assert!(s.contains(&big(&[4])));
        assert!(!s.contains(&big(&[3])));
        let c = s.coordinates_of(&big(&[-6])).unwrap();
        assert_eq!(num_traits::Signed::abs(&c[0]), BigInt::from(3));
    }

    #[test]
    fn subgroup_of_z4_matches_enumeration() {
        let amb = IsoType {
            rank: 0,
            torsion: vec![BigInt::from(4)],
        };
        let s = SubgroupPresentation::generated(amb, &[big(&[2])]);
        assert_eq!(s.torsion(), &[BigInt::from(2)]);
        // Enumerate multiples of 2 in Z/4.
        let members: Vec<i64> = (0..4).filter(|k| (0..4).any(|m| (2 * m) % 4 == *k)).collect();
        for x in 0..4 {
            assert_eq!(s.contains(&big(&[x])), members.contains(&x));
        }
    }

    #[test]
    fn empty_generators_give_trivial_group() {
        let s = SubgroupPresentation::generated(IsoType::free(2), &[]);
        assert!(s.is_trivial());
        assert!(s.contains(&big(&[0, 0])));
        assert!(!s.contains(&big(&[1, 0])));
    }

    #[test]
    fn full_generating_set_recovers_ambient() {
        let amb = IsoType {
            rank: 1,
            torsion: vec![BigInt::from(2), BigInt::from(6)],
        };
        let gens = vec![big(&[1, 0, 0]), big(&[0, 1, 0]), big(&[0, 0, 1])];
        let s = SubgroupPresentation::generated(amb.clone(), &gens);
        assert_eq!(s.iso_type(), &amb);
        for (b, combo) in s.basis().iter().zip(s.basis_combinations()) {
            let mut v = vec![BigInt::zero(); 3];
            for (g, c) in gens.iter().zip(combo) {
                for i in 0..3 {
                    v[i] += &g[i] * c;
                }
            }
            v[1] = v[1].mod_floor(&BigInt::from(2));
            v[2] = v[2].mod_floor(&BigInt::from(6));
            assert_eq!(&v, b);
        }
    }
}
