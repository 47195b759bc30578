//! Upper unitriangular integer matrix groups.
//!
//! Generated by `g(i,j) = I + E(i,j)` for `1 <= i < j <= n`. Entries use
//! arbitrary-precision integers: they grow polynomially with word length and
//! a fixed width would silently corrupt ball enumerations.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::matrix::IntMatrix;

/// Is `m` an `n x n` upper unitriangular matrix?
pub fn is_unitriangular(m: &IntMatrix, n: usize) -> bool {
    if m.nrows() != n || m.ncols() != n {
        return false;
    }
    for i in 0..n {
        for j in 0..=i {
            let want_one = i == j;
            let e = &m[(i, j)];
            if want_one && !e.is_one() {
                return false;
            }
            if !want_one && !e.is_zero() {
                return false;
            }
        }
    }
    true
}

/// The generator `g(i,j) = I + E(i,j)`, 1-based, requires `i < j <= n`.
pub fn generator(n: usize, i: usize, j: usize) -> IntMatrix {
    assert!(1 <= i && i < j && j <= n, "generator indices out of range");
    generator_power(n, i, j, 1)
}

/// `g(i,j)^e = I + e * E(i,j)` (since `E(i,j)^2 = 0`).
pub fn generator_power(n: usize, i: usize, j: usize, e: i64) -> IntMatrix {
    assert!(1 <= i && i < j && j <= n);
    let mut m = IntMatrix::identity(n);
    m[(i - 1, j - 1)] = BigInt::from(e);
    m
}

/// Inverse of a unitriangular matrix by back-substitution; exact, and the
/// result is again unitriangular.
pub fn inverse(m: &IntMatrix) -> IntMatrix {
    let n = m.nrows();
    let mut inv = IntMatrix::identity(n);
    // Solve M * inv = I column by column; M is unitriangular so the
    // back-substitution is integral.
    for col in 0..n {
        for i in (0..n).rev() {
            let mut s = if i == col { BigInt::one() } else { BigInt::zero() };
            for k in i + 1..n {
                s -= &m[(i, k)] * &inv[(k, col)];
            }
            inv[(i, col)] = s;
        }
    }
    inv
}

/// Exponents of the unique column-by-column normal form
///
/// ```text
/// A = (g(1,n)^a(1,n) ... g(n-1,n)^a(n-1,n)) (g(1,n-1)^a(1,n-1) ...) ... g(1,2)^a(1,2)
/// ```
///
/// In this ordering every cross term vanishes, so the exponent of `g(i,j)`
/// is exactly the matrix entry `a(i,j)`; the round trip through the product
/// formula is checked in tests against an independent multiply.
pub fn normal_form_exponents(m: &IntMatrix) -> Vec<((usize, usize), BigInt)> {
    let n = m.nrows();
    let mut out = Vec::new();
    for j in (2..=n).rev() {
        for i in 1..j {
            out.push(((i, j), m[(i - 1, j - 1)].clone()));
        }
    }
    out
}

/// All ordered generator index pairs `(i, j)` with `i < j`, lexicographic.
pub fn generator_indices(n: usize) -> Vec<(usize, usize)> {
    let mut v = Vec::new();
    for i in 1..n {
        for j in i + 1..=n {
            v.push((i, j));
        }
    }
    v
}
