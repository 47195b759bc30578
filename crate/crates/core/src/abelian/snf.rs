//! Smith normal form of integer matrices with tracked unimodular transforms.
//!
//! `U * M * V = D` with `D` diagonal, nonnegative, and divisibility-chained
//! (`d1 | d2 | ...`). The inverses of `U` and `V` are accumulated alongside,
//! so the recomposition `Uinv * D * Vinv = M` holds exactly without any
//! matrix inversion step.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::matrix::IntMatrix;

#[derive(Debug, Clone)]
pub struct Snf {
    d: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Snf {
    pub fn matrix(&self) -> &IntMatrix {
        &self.d
    }

    pub fn u(&self) -> &IntMatrix {
        &self.u
    }

    pub fn u_inv(&self) -> &IntMatrix {
        &self.u_inv
    }

    pub fn v(&self) -> &IntMatrix {
        &self.v
    }

    pub fn v_inv(&self) -> &IntMatrix {
        &self.v_inv
    }

    /// The full diagonal (length `min(rows, cols)`), zeros at the end.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.d.nrows().min(self.d.ncols());
        (0..n).map(|i| self.d[(i, i)].clone()).collect()
    }

    /// Nonzero diagonal entries.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.diagonal().into_iter().filter(|d| !d.is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

struct Calc {
    m: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Calc {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.m.swap_rows(a, b);
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.m.swap_cols(a, b);
        self.v.swap_cols(a, b);
        self.v_inv.swap_rows(a, b);
    }

    /// row[t] += f * row[s]; inverse transform: col[s] -= f * col[t].
    fn add_row(&mut self, t: usize, s: usize, f: &BigInt) {
        self.m.add_row_multiple(t, s, f);
        self.u.add_row_multiple(t, s, f);
        self.u_inv.add_col_multiple(s, t, &-f.clone());
    }

    fn add_col(&mut self, t: usize, s: usize, f: &BigInt) {
        self.m.add_col_multiple(t, s, f);
        self.v.add_col_multiple(t, s, f);
        self.v_inv.add_row_multiple(s, t, &-f.clone());
    }

    fn negate_row(&mut self, i: usize) {
        self.m.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    /// Smallest nonzero |entry| in the submatrix at (k.., k..).
    fn pivot(&self, k: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in k..self.m.nrows() {
            for j in k..self.m.ncols() {
                if self.m[(i, j)].is_zero() {
                    continue;
                }
                match best {
                    Some(b) if self.m[b].abs() <= self.m[(i, j)].abs() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }

    fn clear_position(&mut self, k: usize) {
        loop {
            let mut dirty = false;
            for i in k + 1..self.m.nrows() {
                if !self.m[(i, k)].is_zero() {
                    let q = -(&self.m[(i, k)] / &self.m[(k, k)]);
                    self.add_row(i, k, &q);
                    if !self.m[(i, k)].is_zero() {
                        // remainder smaller than pivot: promote it
                        self.swap_rows(k, i);
                        dirty = true;
                    }
                }
            }
            for j in k + 1..self.m.ncols() {
                if !self.m[(k, j)].is_zero() {
                    let q = -(&self.m[(k, j)] / &self.m[(k, k)]);
                    self.add_col(j, k, &q);
                    if !self.m[(k, j)].is_zero() {
                        self.swap_cols(k, j);
                        dirty = true;
                    }
                }
            }
            if !dirty
                && (k + 1..self.m.nrows()).all(|i| self.m[(i, k)].is_zero())
                && (k + 1..self.m.ncols()).all(|j| self.m[(k, j)].is_zero())
            {
                return;
            }
        }
    }
}

/// Compute the Smith normal form with all four transforms.
pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    let (rows, cols) = (m.nrows(), m.ncols());
    let mut c = Calc {
        m: m.clone(),
        u: IntMatrix::identity(rows),
        u_inv: IntMatrix::identity(rows),
        v: IntMatrix::identity(cols),
        v_inv: IntMatrix::identity(cols),
    };
    let n = rows.min(cols);

    for k in 0..n {
        let Some((pi, pj)) = c.pivot(k) else { break };
        c.swap_rows(k, pi);
        c.swap_cols(k, pj);
        c.clear_position(k);
        // Enforce the divisibility chain: if the pivot misses an entry of
        // the remaining submatrix, fold that row in and re-clear.
        'chain: loop {
            for i in k + 1..rows {
                for j in k + 1..cols {
                    if !(&c.m[(i, j)] % &c.m[(k, k)]).is_zero() {
                        let one = BigInt::from(1);
                        c.add_row(k, i, &one);
                        c.clear_position(k);
                        continue 'chain;
                    }
                }
            }
            break;
        }
        if c.m[(k, k)].is_negative() {
            c.negate_row(k);
        }
    }

    debug_assert!((1..n).all(|i| {
        c.m[(i, i)].is_zero()
            || (!c.m[(i - 1, i - 1)].is_zero() && (&c.m[(i, i)] % &c.m[(i - 1, i - 1)]).is_zero())
    }));
    Snf { d: c.m, u: c.u, u_inv: c.u_inv, v: c.v, v_inv: c.v_inv }
}
