//! Exact rational linear algebra for small dense systems.

use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::Q;

/// Row-reduces `m` in place and returns the pivot columns.
fn row_reduce(m: &mut [Vec<Q>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Q::one() / &m[r][c];
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let sub = &m[r][j] * &f;
                    m[i][j] -= sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Determinant of a square matrix given by rows.
pub fn determinant(rows: &[Vec<Q>]) -> Q {
    let n = rows.len();
    let mut m: Vec<Vec<Q>> = rows.to_vec();
    let mut det = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= &m[c][c];
        for i in c + 1..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] / &m[c][c];
            for j in c..n {
                let sub = &m[c][j] * &f;
                m[i][j] -= sub;
            }
        }
    }
    det
}

/// Sign of `det(p1 - p0, ..., pn - p0)` for `n + 1` points in `Q^n`.
pub fn orientation(points: &[Vec<Q>]) -> i32 {
    let rows: Vec<Vec<Q>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(&points[0]).map(|(a, b)| a - b).collect())
        .collect();
    let d = determinant(&rows);
    if d.is_positive() {
        1
    } else if d.is_negative() {
        -1
    } else {
        0
    }
}

/// Dimension of the affine hull of the points, `-1` when empty.
pub fn affine_dimension(points: &[Vec<Q>]) -> isize {
    if points.is_empty() {
        return -1;
    }
    let mut m: Vec<Vec<Q>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(&points[0]).map(|(a, b)| a - b).collect())
        .collect();
    row_reduce(&mut m).len() as isize
}

/// Barycentric coordinates of `p` with respect to affinely independent
/// points, or `None` when `p` is off their affine hull.
pub fn barycentric(points: &[Vec<Q>], p: &[Q]) -> Option<Vec<Q>> {
    let k = points.len();
    let n = p.len();
    // Unknowns λ_0..λ_{k-1}: Σ λ_i = 1 and Σ λ_i P_i = p.
    let mut m: Vec<Vec<Q>> = Vec::with_capacity(n + 1);
    let mut first = alloc::vec![Q::one(); k];
    first.push(Q::one());
    m.push(first);
    for d in 0..n {
        let mut row: Vec<Q> = points.iter().map(|q| q[d].clone()).collect();
        row.push(p[d].clone());
        m.push(row);
    }
    let pivots = row_reduce(&mut m);
    if pivots.contains(&k) || pivots.len() < k {
        return None;
    }
    Some((0..k).map(|i| m[i][k].clone()).collect())
}

/// Whether `p` lies in the convex hull of `points` (closed).
pub fn in_convex_hull(points: &[Vec<Q>], p: &[Q]) -> bool {
    if points.is_empty() {
        return false;
    }
    if affine_dimension(points) + 1 == points.len() as isize {
        return barycentric(points, p).is_some_and(|l| l.iter().all(|x| !x.is_negative()));
    }
    // Carathéodory: some affinely independent subset already contains p.
    (0..points.len()).any(|skip| {
        let sub: Vec<Vec<Q>> = points
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != skip)
            .map(|(_, q)| q.clone())
            .collect();
        in_convex_hull(&sub, p)
    })
}

/// Whether `p` lies in the relative interior of a full-dimensional simplex
/// given by `n + 1` points in `Q^n`.
pub fn strictly_inside(points: &[Vec<Q>], p: &[Q]) -> bool {
    barycentric(points, p).is_some_and(|l| l.iter().all(|x| x.is_positive()))
}
