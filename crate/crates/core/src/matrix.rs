//! Dense integer matrices over `BigInt`.
//!
//! Shared by unitriangular group arithmetic and Smith normal form. Row-major
//! storage; all arithmetic is exact.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let t = a * &rhs[(k, j)];
                    out[(i, j)] += t;
                }
            }
        }
        out
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[target] += factor * row[source]
    pub fn add_row_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        for j in 0..self.cols {
            let t = factor * &self[(source, j)];
            self[(target, j)] += t;
        }
    }

    /// col[target] += factor * col[source]
    pub fn add_col_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        for i in 0..self.rows {
            let t = factor * &self[(i, source)];
            self[(i, target)] += t;
        }
    }

    pub fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self[(i, j)].clone();
            self[(i, j)] = v;
        }
    }

    pub fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -self[(i, j)].clone();
            self[(i, j)] = v;
        }
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j { self[(i, j)].is_one() } else { self[(i, j)].is_zero() }
                })
            })
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "det of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !m[(i, k)].is_zero()) {
                    Some(i) => {
                        m.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = &m[(k, k)] * &m[(i, j)] - &m[(i, k)] * &m[(k, j)];
                    m[(i, j)] = &t / &prev;
                }
            }
            prev = m[(k, k)].clone();
        }
        sign * m[(n - 1, n - 1)].clone()
    }

    /// Inverse of a unimodular matrix (|det| = 1) via adjugate-free
    /// Gauss-Jordan over the integers; panics if the matrix is not unimodular.
    pub fn unimodular_inverse(&self) -> IntMatrix {
        assert!(self.det().abs().is_one(), "matrix is not unimodular");
        let n = self.rows;
        let mut m = self.clone();
        let mut inv = IntMatrix::identity(n);
        // Integer row reduction: a unimodular matrix reduces to the identity
        // using gcd steps (every pivot column has gcd 1).
        for k in 0..n {
            // Make the pivot positive and minimal by gcd row combinations.
            loop {
                let mut pivot_row = None;
                for i in k..n {
                    if !m[(i, k)].is_zero()
                        && pivot_row.is_none_or(|p: usize| m[(i, k)].abs() < m[(p, k)].abs())
                    {
                        pivot_row = Some(i);
                    }
                }
                let p = pivot_row.expect("unimodular matrix has full rank");
                m.swap_rows(k, p);
                inv.swap_rows(k, p);
                let mut done = true;
                for i in k + 1..n {
                    if !m[(i, k)].is_zero() {
                        let q = -(&m[(i, k)] / &m[(k, k)]);
                        m.add_row_multiple(i, k, &q);
                        inv.add_row_multiple(i, k, &q);
                        if !m[(i, k)].is_zero() {
                            done = false;
                        }
                    }
                }
                if done {
                    break;
                }
            }
            if m[(k, k)].is_negative() {
                m.negate_row(k);
                inv.negate_row(k);
            }
        }
        // Back-substitute above the diagonal (all pivots are 1 here).
        for k in (0..n).rev() {
            debug_assert!(m[(k, k)].is_one());
            for i in 0..k {
                if !m[(i, k)].is_zero() {
                    let q = -m[(i, k)].clone();
                    m.add_row_multiple(i, k, &q);
                    inv.add_row_multiple(i, k, &q);
                }
            }
        }
        debug_assert!(m.is_identity());
        inv
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}
