use std::fmt;

use num_traits::Zero;

use super::{kernel, rref_rows, zero_vector, LinalgError, Matrix, Rational, Result, Vector};

/// A linear subspace of `Q^n`, stored by its reduced row-echelon basis.
///
/// Equality and hashing are structural on the canonical basis, which makes
/// equality of values coincide with equality of the spanned sets.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vector>,
}

impl Subspace {
    /// Canonical subspace spanned by `vectors` inside `Q^ambient_dim`.
    pub fn span(vectors: &[Vector], ambient_dim: usize) -> Result<Self> {
        for v in vectors {
            if v.len() != ambient_dim {
                return Err(LinalgError::DimensionMismatch {
                    expected: ambient_dim,
                    found: v.len(),
                });
            }
        }
        let mut rows = vectors.to_vec();
        rref_rows(&mut rows, ambient_dim);
        Ok(Self {
            ambient_dim,
            basis: rows,
        })
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        let basis = (0..ambient_dim).map(|i| super::unit_vector(ambient_dim, i)).collect();
        Self { ambient_dim, basis }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    /// The basis as a `dim x ambient_dim` matrix.
    pub fn basis_matrix(&self) -> Matrix {
        if self.basis.is_empty() {
            return Matrix::zeros(0, self.ambient_dim);
        }
        Matrix::from_rows(&self.basis).expect("basis rows share the ambient length")
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len == self.ambient_dim {
            Ok(())
        } else {
            Err(LinalgError::DimensionMismatch {
                expected: self.ambient_dim,
                found: len,
            })
        }
    }

    /// Whether `v` lies in the subspace.
    pub fn contains(&self, v: &[Rational]) -> Result<bool> {
        self.check_len(v.len())?;
        // Reduce v against the echelon basis; pivots are the leading ones.
        let mut r = v.to_vec();
        for b in &self.basis {
            let pivot = b.iter().position(|x| !x.is_zero()).unwrap();
            if r[pivot].is_zero() {
                continue;
            }
            let c = r[pivot].clone();
            for (x, y) in r.iter_mut().zip(b) {
                *x -= &c * y;
            }
        }
        Ok(super::is_zero_vector(&r))
    }

    pub fn contains_subspace(&self, other: &Subspace) -> Result<bool> {
        self.check_len(other.ambient_dim)?;
        for v in &other.basis {
            if !self.contains(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_len(other.ambient_dim)?;
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Subspace::span(&vs, self.ambient_dim)
    }

    /// Intersection via the kernel of the stacked bases: `sum a_i u_i = sum b_j w_j`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_len(other.ambient_dim)?;
        let k1 = self.dim();
        let k2 = other.dim();
        if k1 == 0 || k2 == 0 {
            return Ok(Subspace::zero(self.ambient_dim));
        }
        // Columns are the stacked basis vectors; rows index coordinates.
        let rows: Vec<Vector> = (0..self.ambient_dim)
            .map(|c| {
                self.basis
                    .iter()
                    .map(|u| u[c].clone())
                    .chain(other.basis.iter().map(|w| -w[c].clone()))
                    .collect()
            })
            .collect();
        let vectors: Vec<Vector> = kernel(&rows, k1 + k2)
            .into_iter()
            .map(|coeffs| {
                let mut v = zero_vector(self.ambient_dim);
                for (a, u) in coeffs[..k1].iter().zip(&self.basis) {
                    for (x, y) in v.iter_mut().zip(u) {
                        *x += a * y;
                    }
                }
                v
            })
            .collect();
        Subspace::span(&vectors, self.ambient_dim)
    }

    /// Image under a square invertible matrix.
    pub fn image(&self, m: &Matrix) -> Result<Subspace> {
        if !m.is_square() {
            return Err(LinalgError::NotSquare {
                rows: m.rows(),
                cols: m.cols(),
            });
        }
        self.check_len(m.rows())?;
        if m.determinant()?.is_zero() {
            return Err(LinalgError::Singular);
        }
        self.image_unchecked(m)
    }

    /// Image under a matrix the caller knows to be invertible; only a
    /// dimension drop on this subspace is detected.
    pub fn image_unchecked(&self, m: &Matrix) -> Result<Subspace> {
        self.check_len(m.cols())?;
        let images: Vec<Vector> = self.basis.iter().map(|v| m.apply(v)).collect::<Result<_>>()?;
        let s = Subspace::span(&images, self.ambient_dim)?;
        if s.dim() != self.dim() {
            return Err(LinalgError::Singular);
        }
        Ok(s)
    }

    /// Whether `m` maps the subspace into itself.
    pub fn is_invariant_under(&self, m: &Matrix) -> Result<bool> {
        self.check_len(m.cols())?;
        for v in &self.basis {
            if !self.contains(&m.apply(v)?)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in Q^{}) {{", self.dim(), self.ambient_dim)?;
        for b in &self.basis {
            let row: Vec<String> = b.iter().map(ToString::to_string).collect();
            write!(f, " [{}]", row.join(", "))?;
        }
        write!(f, " }}")
    }
}
