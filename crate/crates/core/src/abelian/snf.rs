use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntegerMatrix;

/// `U·A·V = D` with `U`, `V` unimodular and `D` diagonal, `d1 | d2 | ... | d_rank > 0`.
///
/// The inverses of `U` and `V` are tracked alongside, since every consumer
/// needs them and recovering them afterwards is expensive.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntegerMatrix,
    pub u_inv: IntegerMatrix,
    pub v: IntegerMatrix,
    pub v_inv: IntegerMatrix,
    pub d: IntegerMatrix,
    pub rank: usize,
}

impl SmithDecomposition {
    /// The nonzero diagonal entries, in order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d.get(i, i).clone()).collect()
    }
}

struct Work {
    d: IntegerMatrix,
    u: IntegerMatrix,
    u_inv: IntegerMatrix,
    v: IntegerMatrix,
    v_inv: IntegerMatrix,
}

impl Work {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        self.v.swap_cols(a, b);
        self.v_inv.swap_rows(a, b);
    }

    /// `row[i] += q·row[t]`.
    fn add_row(&mut self, i: usize, t: usize, q: &BigInt) {
        self.d.add_row_multiple(i, t, q);
        self.u.add_row_multiple(i, t, q);
        self.u_inv.add_col_multiple(t, i, &-q);
    }

    /// `col[j] += q·col[t]`.
    fn add_col(&mut self, j: usize, t: usize, q: &BigInt) {
        self.d.add_col_multiple(j, t, q);
        self.v.add_col_multiple(j, t, q);
        self.v_inv.add_row_multiple(t, j, &-q);
    }

    fn negate_row(&mut self, i: usize) {
        self.d.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }
}

/// Smith normal form with smallest-absolute-value pivoting.
pub fn smith_normal_form(a: &IntegerMatrix) -> SmithDecomposition {
    let (m, n) = (a.rows(), a.cols());
    let mut w = Work {
        d: a.clone(),
        u: IntegerMatrix::identity(m),
        u_inv: IntegerMatrix::identity(m),
        v: IntegerMatrix::identity(n),
        v_inv: IntegerMatrix::identity(n),
    };
    let mut rank = 0;
    for t in 0..m.min(n) {
        let Some((pi, pj)) = smallest_entry(&w.d, t, t) else {
            break;
        };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            let mut moved = false;
            // Clear column t below the pivot.
            for i in t + 1..m {
                if w.d.get(i, t).is_zero() {
                    continue;
                }
                let q = w.d.get(i, t).div_floor(w.d.get(t, t));
                w.add_row(i, t, &-q);
                if !w.d.get(i, t).is_zero() {
                    moved = true;
                }
            }
            if moved {
                let i = smallest_in_column(&w.d, t);
                w.swap_rows(t, i);
                continue;
            }
            // Clear row t right of the pivot.
            for j in t + 1..n {
                if w.d.get(t, j).is_zero() {
                    continue;
                }
                let q = w.d.get(t, j).div_floor(w.d.get(t, t));
                w.add_col(j, t, &-q);
                if !w.d.get(t, j).is_zero() {
                    moved = true;
                }
            }
            if moved {
                let j = smallest_in_row(&w.d, t);
                w.swap_cols(t, j);
                continue;
            }
            // Enforce divisibility of the remaining block.
            let p = w.d.get(t, t).clone();
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !w.d.get(i, j).is_multiple_of(&p)));
            match bad {
                Some(i) => w.add_row(t, i, &BigInt::from(1)),
                None => break,
            }
        }
        if w.d.get(t, t).is_negative() {
            w.negate_row(t);
        }
        rank += 1;
    }
    SmithDecomposition {
        u: w.u,
        u_inv: w.u_inv,
        v: w.v,
        v_inv: w.v_inv,
        d: w.d,
        rank,
    }
}

fn smallest_entry(d: &IntegerMatrix, r0: usize, c0: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in r0..d.rows() {
        for j in c0..d.cols() {
            let v = d.get(i, j);
            if v.is_zero() {
                continue;
            }
            let a = v.abs();
            if best.as_ref().is_none_or(|(_, _, b)| a < *b) {
                best = Some((i, j, a));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

fn smallest_in_column(d: &IntegerMatrix, t: usize) -> usize {
    (t..d.rows())
        .filter(|&i| !d.get(i, t).is_zero())
        .min_by_key(|&i| d.get(i, t).abs())
        .unwrap_or(t)
}

fn smallest_in_row(d: &IntegerMatrix, t: usize) -> usize {
    (t..d.cols())
        .filter(|&j| !d.get(t, j).is_zero())
        .min_by_key(|&j| d.get(t, j).abs())
        .unwrap_or(t)
}
