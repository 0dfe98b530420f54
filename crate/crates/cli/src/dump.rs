//! Lossless serialized form of a homology model, used by `model --dump` and
//! the optional on-disk model cache.

use monodromy_core::homology::{Family, FamilyParams, HomologyModel};
use monodromy_core::linalg::{fmt_rational, parse_rational, Vector};
use monodromy_core::{Matrix, Rational};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelDump {
    pub family: String,
    pub p: u32,
    pub q: u32,
    pub m: i64,
    pub n: i64,
    pub generator_names: Vec<String>,
    pub relations: Vec<Vec<i64>>,
    pub eliminated: Vec<usize>,
    pub basis_names: Vec<String>,
    pub gamma_index: usize,
    /// `rank x generators`, row-major.
    pub quotient: Vec<Vec<String>>,
    pub generator_mon0: Vec<Vec<String>>,
    pub generator_iota: Option<Vec<String>>,
    pub iota: Option<Vec<String>>,
    pub mon0: Vec<Vec<String>>,
    pub monc: Option<Vec<Vec<String>>>,
    pub critical_value_c: Option<String>,
}

fn vector_strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(fmt_rational).collect()
}

fn matrix_strings(m: &Matrix) -> Vec<Vec<String>> {
    m.row_vectors().iter().map(|r| vector_strings(r)).collect()
}

fn parse_vector(v: &[String]) -> Result<Vector, String> {
    v.iter()
        .map(|s| parse_rational(s).ok_or_else(|| format!("bad rational `{s}`")))
        .collect()
}

fn parse_matrix(rows: &[Vec<String>], nrows: usize, ncols: usize) -> Result<Matrix, String> {
    if rows.len() != nrows || rows.iter().any(|r| r.len() != ncols) {
        return Err(format!("expected a {nrows}x{ncols} matrix"));
    }
    let mut data = Vec::with_capacity(nrows * ncols);
    for r in rows {
        data.extend(parse_vector(r)?);
    }
    Matrix::new(nrows, ncols, data).map_err(|e| e.to_string())
}

impl ModelDump {
    pub fn from_model(model: &HomologyModel) -> Self {
        let params = &model.params;
        Self {
            family: params.family.name().into(),
            p: params.p,
            q: params.q,
            m: params.m,
            n: params.n,
            generator_names: model.generator_names.clone(),
            relations: model.relations.clone(),
            eliminated: model.eliminated.clone(),
            basis_names: model.basis_names.clone(),
            gamma_index: model.gamma_index,
            quotient: matrix_strings(&model.quotient),
            generator_mon0: matrix_strings(&model.generator_mon0),
            generator_iota: model.generator_iota.as_deref().map(vector_strings),
            iota: model.iota.as_deref().map(vector_strings),
            mon0: matrix_strings(&model.mon0),
            monc: model.monc.as_ref().map(matrix_strings),
            critical_value_c: model.critical_value_c.as_ref().map(fmt_rational),
        }
    }

    pub fn to_model(&self) -> Result<HomologyModel, String> {
        let family: Family = self
            .family
            .parse()
            .map_err(|e: monodromy_core::homology::ModelError| e.to_string())?;
        let rank = self.basis_names.len();
        let ngen = self.generator_names.len();
        let vector = |v: &Option<Vec<String>>, len: usize| -> Result<Option<Vector>, String> {
            v.as_ref()
                .map(|v| {
                    let v = parse_vector(v)?;
                    if v.len() == len {
                        Ok(v)
                    } else {
                        Err(format!("expected a vector of length {len}"))
                    }
                })
                .transpose()
        };
        if self.gamma_index >= rank {
            return Err("gamma index out of range".into());
        }
        Ok(HomologyModel {
            params: FamilyParams {
                family,
                p: self.p,
                q: self.q,
                m: self.m,
                n: self.n,
            },
            generator_names: self.generator_names.clone(),
            relations: self.relations.clone(),
            eliminated: self.eliminated.clone(),
            basis_names: self.basis_names.clone(),
            quotient: parse_matrix(&self.quotient, rank, ngen)?,
            generator_mon0: parse_matrix(&self.generator_mon0, ngen, ngen)?,
            generator_iota: vector(&self.generator_iota, ngen)?,
            iota: vector(&self.iota, rank)?,
            mon0: parse_matrix(&self.mon0, rank, rank)?,
            monc: self.monc.as_ref().map(|m| parse_matrix(m, rank, rank)).transpose()?,
            critical_value_c: self
                .critical_value_c
                .as_ref()
                .map(|s| parse_rational(s).ok_or_else(|| format!("bad rational `{s}`")))
                .transpose()?,
            gamma_index: self.gamma_index,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use monodromy_core::build;

    #[test]
    fn round_trip_every_family() {
        for family in [Family::Toy, Family::Parabolic, Family::LotkaVolterra] {
            let model = build(family, 3, 2).unwrap();
            let dump = ModelDump::from_model(&model);
            let json = serde_json::to_string(&dump).unwrap();
            let back: ModelDump = serde_json::from_str(&json).unwrap();
            assert_eq!(back.to_model().unwrap(), model);
        }
    }

    #[test]
    fn malformed_dumps_are_rejected() {
        let model = build(Family::Parabolic, 2, 3).unwrap();
        let mut dump = ModelDump::from_model(&model);
        dump.mon0[0][0] = "x".into();
        assert!(dump.to_model().is_err());
        let mut dump = ModelDump::from_model(&model);
        dump.mon0.pop();
        assert!(dump.to_model().is_err());
    }
}
