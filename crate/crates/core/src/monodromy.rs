//! Picard-Lefschetz operators, the pairing with the vanishing cycle, and
//! evaluation of words in a finitely generated matrix group.

use thiserror::Error;

use crate::homology::{HomologyModel, ModelError};
use crate::linalg::{dot, LinalgError, Matrix, Rational, Vector};

/// `v -> v + iota(v) gamma`, i.e. `v - (v . gamma) gamma` with `v . gamma = -gamma . v`.
pub fn picard_lefschetz_matrix(iota: &[Rational], gamma_index: usize) -> Matrix {
    let n = iota.len();
    let mut m = Matrix::identity(n);
    for (j, x) in iota.iter().enumerate() {
        m[(gamma_index, j)] += x;
    }
    m
}

/// The monodromy around the center, built from the model's intersection data.
pub fn picard_lefschetz(model: &HomologyModel) -> Result<Matrix, ModelError> {
    Ok(picard_lefschetz_matrix(model.iota()?, model.gamma_index))
}

/// `gamma . v` for `v` in free-basis coordinates.
pub fn pair_with_gamma(model: &HomologyModel, v: &[Rational]) -> Result<Rational, ModelError> {
    let iota = model.iota()?;
    if v.len() != iota.len() {
        return Err(LinalgError::DimensionMismatch {
            expected: iota.len(),
            found: v.len(),
        }
        .into());
    }
    Ok(dot(iota, v))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("group needs at least one generator")]
    Empty,
    #[error("generator {index} ({label}) is not invertible or has the wrong shape")]
    BadGenerator { index: usize, label: String },
    #[error("generator index {0} out of range")]
    IndexOutOfRange(usize),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// One letter of a word: a generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Letter {
    Gen(usize),
    Inv(usize),
}

/// Generators of a matrix group together with their exact inverses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonodromyGroupSpec {
    generators: Vec<Matrix>,
    inverses: Vec<Matrix>,
    labels: Vec<String>,
}

impl MonodromyGroupSpec {
    pub fn new(generators: Vec<Matrix>, labels: Vec<String>) -> Result<Self, GroupError> {
        let Some(first) = generators.first() else {
            return Err(GroupError::Empty);
        };
        let size = first.rows();
        let mut inverses = Vec::with_capacity(generators.len());
        for (index, g) in generators.iter().enumerate() {
            let label = labels.get(index).cloned().unwrap_or_else(|| format!("g{index}"));
            if !g.is_square() || g.rows() != size {
                return Err(GroupError::BadGenerator { index, label });
            }
            match g.inverse() {
                Ok(inv) => inverses.push(inv),
                Err(_) => return Err(GroupError::BadGenerator { index, label }),
            }
        }
        let labels = (0..generators.len())
            .map(|i| labels.get(i).cloned().unwrap_or_else(|| format!("g{i}")))
            .collect();
        Ok(Self {
            generators,
            inverses,
            labels,
        })
    }

    /// `{mon0, monc}` of a model; `monc` falls back to Picard-Lefschetz.
    pub fn from_model(model: &HomologyModel) -> Result<Self, ModelError> {
        let monc = model.monc_or_picard_lefschetz()?;
        Self::new(vec![model.mon0.clone(), monc], vec!["mon0".into(), "monc".into()])
            .map_err(|e| ModelError::InvalidParameter(e.to_string()))
    }

    pub fn size(&self) -> usize {
        self.generators[0].rows()
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn generator(&self, i: usize) -> &Matrix {
        &self.generators[i]
    }

    pub fn inverse(&self, i: usize) -> &Matrix {
        &self.inverses[i]
    }

    pub fn letter_matrix(&self, letter: Letter) -> Result<&Matrix, GroupError> {
        match letter {
            Letter::Gen(i) => self.generators.get(i),
            Letter::Inv(i) => self.inverses.get(i),
        }
        .ok_or(match letter {
            Letter::Gen(i) | Letter::Inv(i) => GroupError::IndexOutOfRange(i),
        })
    }

    /// Generators and inverses interleaved in label order: `g0, g0^-1, g1, ...`.
    pub fn letters(&self) -> impl Iterator<Item = (Letter, &Matrix)> {
        (0..self.generators.len()).flat_map(move |i| {
            [
                (Letter::Gen(i), &self.generators[i]),
                (Letter::Inv(i), &self.inverses[i]),
            ]
        })
    }
}

/// Applies a word to `v`, rightmost letter first.
pub fn act(spec: &MonodromyGroupSpec, word: &[Letter], v: &[Rational]) -> Result<Vector, GroupError> {
    if v.len() != spec.size() {
        return Err(LinalgError::DimensionMismatch {
            expected: spec.size(),
            found: v.len(),
        }
        .into());
    }
    let mut out = v.to_vec();
    for &letter in word.iter().rev() {
        out = spec.letter_matrix(letter)?.apply(&out)?;
    }
    Ok(out)
}
