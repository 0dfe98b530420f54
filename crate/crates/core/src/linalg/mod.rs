//! Exact linear algebra over the rationals.
//!
//! Matrices are dense and act on column vectors: column `j` of a matrix is the
//! image of the `j`-th basis vector. Subspaces are stored by a canonical basis
//! (reduced row-echelon form), so two subspaces are equal exactly when their
//! stored bases are equal entry-wise, which lets them serve as hash keys.

mod matrix;
mod subspace;

pub use matrix::Matrix;
pub use subspace::Subspace;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

/// Arbitrary precision rational number, always kept in lowest terms.
pub type Rational = BigRational;

/// A coordinate vector.
pub type Vector = Vec<Rational>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
}

pub type Result<T> = std::result::Result<T, LinalgError>;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Serializes as `num/den`, including integers (`3/1`).
pub fn fmt_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses the `num/den` form written by [`fmt_rational`]; a bare integer is
/// accepted too.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

pub fn zero_vector(dim: usize) -> Vector {
    vec![Rational::zero(); dim]
}

pub fn unit_vector(dim: usize, index: usize) -> Vector {
    let mut v = zero_vector(dim);
    v[index] = Rational::one();
    v
}

pub fn int_vector(entries: &[i64]) -> Vector {
    entries.iter().map(|&e| int(e)).collect()
}

pub fn is_zero_vector(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

pub fn add_vectors(a: &[Rational], b: &[Rational]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vectors(a: &[Rational], b: &[Rational]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_vector(c: &Rational, v: &[Rational]) -> Vector {
    v.iter().map(|x| c * x).collect()
}

pub fn fmt_vector(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(fmt_rational).collect();
    format!("[{}]", parts.join(", "))
}

/// Reduced row-echelon form in place. Returns the pivot columns.
pub(crate) fn rref_rows(rows: &mut Vec<Vector>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(found) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, found);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &factor * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Basis of `{x : A x = 0}` for `A` given by rows of length `cols`.
pub fn kernel(rows: &[Vector], cols: usize) -> Vec<Vector> {
    let mut reduced: Vec<Vector> = rows.to_vec();
    let pivots = rref_rows(&mut reduced, cols);
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = zero_vector(cols);
        v[free] = Rational::one();
        for (row, &pc) in reduced.iter().zip(&pivots) {
            v[pc] = -row[free].clone();
        }
        basis.push(v);
    }
    basis
}

pub fn rank(rows: &[Vector], cols: usize) -> usize {
    let mut reduced: Vec<Vector> = rows.to_vec();
    rref_rows(&mut reduced, cols).len()
}
