use std::fmt;
use std::ops::{Index, IndexMut};

use num_traits::{One, Signed, Zero};

use super::{fmt_rational, int, rref_rows, LinalgError, Rational, Result, Vector};

/// Dense row-major matrix over the rationals.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(LinalgError::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// Builds a matrix from its rows; all rows must share one length.
    pub fn from_rows(rows: &[Vector]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(LinalgError::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend(r.iter().cloned());
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Builds a `dim x columns.len()` matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(dim: usize, columns: &[Vector]) -> Result<Self> {
        let mut m = Self::zeros(dim, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != dim {
                return Err(LinalgError::DimensionMismatch {
                    expected: dim,
                    found: c.len(),
                });
            }
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        Ok(m)
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let rows: Vec<Vector> = rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
        Self::from_rows(&rows)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Matrix times column vector.
    pub fn apply(&self, v: &[Rational]) -> Result<Vector> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    /// Row vector times matrix (`w^T M`), i.e. the pullback of a functional.
    pub fn pull_back(&self, w: &[Rational]) -> Result<Vector> {
        if w.len() != self.rows {
            return Err(LinalgError::DimensionMismatch {
                expected: self.rows,
                found: w.len(),
            });
        }
        let mut out = vec![Rational::zero(); self.cols];
        for (i, wi) in w.iter().enumerate() {
            if wi.is_zero() {
                continue;
            }
            for (o, a) in out.iter_mut().zip(self.row(i)) {
                if !a.is_zero() {
                    *o += wi * a;
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &Matrix, f: impl Fn(&Rational, &Rational) -> Rational) -> Result<Matrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinalgError::DimensionMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.rows)
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.row_vectors();
        rref_rows(&mut rows, self.cols).len()
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    /// Exact determinant by Gaussian elimination.
    pub fn determinant(&self) -> Result<Rational> {
        self.require_square()?;
        let n = self.rows;
        let mut a = self.row_vectors();
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
                return Ok(Rational::zero());
            };
            if p != c {
                a.swap(p, c);
                det = -det;
            }
            let pivot = a[c][c].clone();
            det *= &pivot;
            let (upper, lower) = a.split_at_mut(c + 1);
            let pivot_row = &upper[c];
            for row in lower {
                if row[c].is_zero() {
                    continue;
                }
                let factor = &row[c] / &pivot;
                for (x, y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                    *x -= &factor * y;
                }
            }
        }
        Ok(det)
    }

    /// Exact inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Matrix> {
        self.require_square()?;
        let n = self.rows;
        let mut aug: Vec<Vector> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
                r
            })
            .collect();
        let pivots = rref_rows(&mut aug, 2 * n);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(LinalgError::Singular);
        }
        let rows: Vec<Vector> = aug.into_iter().map(|r| r[n..].to_vec()).collect();
        Matrix::from_rows(&rows)
    }

    /// Exact `k`-th power by binary exponentiation; negative `k` inverts first.
    pub fn power(&self, k: i64) -> Result<Matrix> {
        self.require_square()?;
        let mut base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Matrix::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// True when every entry is an integer.
    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.is_integer())
    }

    pub fn max_abs_entry(&self) -> Rational {
        self.data.iter().map(|x| x.abs()).max().unwrap_or_else(Rational::zero)
    }

    /// Rows of `num/den` strings, the serialization used in reports.
    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(fmt_rational).collect())
            .collect()
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Rational;

    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .to_string_rows()
            .into_iter()
            .map(|r| format!("[{}]", r.join(", ")))
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int_vector, ratio};

    fn m(rows: &[Vec<i64>]) -> Matrix {
        Matrix::from_i64_rows(rows).unwrap()
    }

    #[test]
    fn new_checks_entry_count() {
        assert!(Matrix::new(2, 2, vec![int(1); 3]).is_err());
    }

    #[test]
    fn determinant_small() {
        assert_eq!(m(&[vec![2, 1], vec![1, 1]]).determinant().unwrap(), int(1));
        assert_eq!(m(&[vec![0, 1], vec![1, 0]]).determinant().unwrap(), int(-1));
        assert_eq!(m(&[vec![1, 2], vec![2, 4]]).determinant().unwrap(), int(0));
        let a = m(&[vec![1, 2, 3], vec![0, 1, 4], vec![5, 6, 0]]);
        assert_eq!(a.determinant().unwrap(), int(1));
    }

    #[test]
    fn inverse_and_powers() {
        let a = m(&[vec![1, 2, 3], vec![0, 1, 4], vec![5, 6, 0]]);
        let inv = a.inverse().unwrap();
        assert!(inv.mul(&a).unwrap().is_identity());
        assert!(a.power(0).unwrap().is_identity());
        assert!(a.power(-1).unwrap().mul(&a).unwrap().is_identity());
        assert_eq!(a.power(3).unwrap(), a.mul(&a).unwrap().mul(&a).unwrap());
        assert_eq!(a.power(-2).unwrap(), inv.mul(&inv).unwrap());
    }

    #[test]
    fn singular_inverse_fails() {
        let a = m(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(a.inverse(), Err(LinalgError::Singular));
        assert_eq!(a.power(-1), Err(LinalgError::Singular));
    }

    #[test]
    fn non_square_rejected() {
        let a = m(&[vec![1, 2, 3]]);
        assert!(matches!(a.determinant(), Err(LinalgError::NotSquare { .. })));
        assert!(a.power(2).is_err());
    }

    #[test]
    fn apply_and_pull_back() {
        let a = m(&[vec![1, 2], vec![3, 4]]);
        assert_eq!(a.apply(&int_vector(&[1, 1])).unwrap(), int_vector(&[3, 7]));
        assert_eq!(a.pull_back(&int_vector(&[1, 1])).unwrap(), int_vector(&[4, 6]));
        assert!(a.apply(&int_vector(&[1])).is_err());
    }

    #[test]
    fn rational_inverse() {
        let a = m(&[vec![2, 0], vec![0, 3]]);
        let inv = a.inverse().unwrap();
        assert_eq!(inv[(0, 0)], ratio(1, 2));
        assert_eq!(inv[(1, 1)], ratio(1, 3));
    }
}
