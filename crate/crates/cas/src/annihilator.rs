//! Monic annihilating operators from bordered Wronskians.

use std::fmt;

use crate::symbolic::SymbolicElement;
use crate::wronskian::{determinant_cofactor, wronskian_matrix};
use crate::CasError;

/// `y^(d) + c_{d-1} y^(d-1) + ... + c_0 y`.
///
/// When the division by the base Wronskian could not be carried out, the
/// coefficients are numerators over the common `denominator` and the operator
/// is `denominator * y^(d) + sum numerator_i * y^(i)` up to that factor.
#[derive(Clone, PartialEq, Eq)]
pub struct DiffOperator {
    /// Highest order first: `c_{d-1}, ..., c_0`.
    coefficients: Vec<SymbolicElement>,
    denominator: Option<SymbolicElement>,
}

impl DiffOperator {
    pub fn new(coefficients: Vec<SymbolicElement>) -> Self {
        assert!(!coefficients.is_empty(), "operator order must be at least 1");
        Self {
            coefficients,
            denominator: None,
        }
    }

    pub fn order(&self) -> usize {
        self.coefficients.len()
    }

    /// Coefficients of `y^(d-1), ..., y`.
    pub fn coefficients(&self) -> &[SymbolicElement] {
        &self.coefficients
    }

    /// Coefficient of `y^(i)` for `i < order`.
    pub fn coefficient(&self, i: usize) -> &SymbolicElement {
        &self.coefficients[self.order() - 1 - i]
    }

    pub fn denominator(&self) -> Option<&SymbolicElement> {
        self.denominator.as_ref()
    }

    pub fn is_reduced(&self) -> bool {
        self.denominator.is_none()
    }

    pub fn all_rational(&self) -> bool {
        self.is_reduced() && self.coefficients.iter().all(SymbolicElement::is_rational)
    }
}

fn fmt_derivative(k: usize) -> String {
    match k {
        0 => "y".into(),
        1 => "y'".into(),
        2 => "y''".into(),
        _ => format!("y^({k})"),
    }
}

impl fmt::Display for DiffOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.order();
        match &self.denominator {
            None => f.write_str(&fmt_derivative(d))?,
            Some(w) => write!(f, "({w})*{}", fmt_derivative(d))?,
        }
        for (k, c) in self.coefficients.iter().enumerate() {
            if !c.is_zero() {
                write!(f, " + ({c})*{}", fmt_derivative(d - 1 - k))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for DiffOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DiffOperator({self})")
    }
}

/// The monic operator of order `d = basis.len()` whose solution space is the
/// span of `basis`, read off the bordered Wronskian `W(y, y_0, ..., y_{d-1})`
/// expanded along its `y` column and divided by `W(y_0, ..., y_{d-1})`.
pub fn minimal_annihilator(basis: &[SymbolicElement]) -> Result<DiffOperator, CasError> {
    if basis.is_empty() {
        return Err(CasError::EmptyBasis);
    }
    let d = basis.len();
    let w = determinant_cofactor(&wronskian_matrix(basis));
    if w.is_zero() {
        return Err(CasError::DependentBasis);
    }
    // Rows 0..=d of derivatives of the basis; row i removed gives the cofactor of y^(i).
    let mut rows = wronskian_matrix(basis);
    rows.push(rows[d - 1].iter().map(SymbolicElement::derive).collect());
    let numerators: Vec<SymbolicElement> = (0..d)
        .rev()
        .map(|i| {
            let minor: Vec<Vec<SymbolicElement>> = rows
                .iter()
                .enumerate()
                .filter(|&(r, _)| r != i)
                .map(|(_, row)| row.clone())
                .collect();
            let m = determinant_cofactor(&minor);
            if (i + d).is_multiple_of(2) {
                m
            } else {
                -m
            }
        })
        .collect();
    let quotients: Option<Vec<SymbolicElement>> = numerators.iter().map(|n| n.div_exact(&w)).collect();
    Ok(match quotients {
        Some(coefficients) => DiffOperator {
            coefficients,
            denominator: None,
        },
        None => DiffOperator {
            coefficients: numerators,
            denominator: Some(w),
        },
    })
}

/// `L(e)`; for an unreduced operator the denominator is cleared, so the
/// result is zero exactly when `L(e)` is.
pub fn apply_operator(op: &DiffOperator, e: &SymbolicElement) -> SymbolicElement {
    let d = op.order();
    let mut derivatives = vec![e.clone()];
    for _ in 0..d {
        let next = derivatives.last().unwrap().derive();
        derivatives.push(next);
    }
    let mut out = match &op.denominator {
        None => derivatives[d].clone(),
        Some(w) => w * &derivatives[d],
    };
    for (i, di) in derivatives.iter().enumerate().take(d) {
        out = &out + &(op.coefficient(i) * di);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse;

    fn e(s: &str) -> SymbolicElement {
        parse(s).unwrap()
    }

    #[test]
    fn constants() {
        let op = minimal_annihilator(&[e("1")]).unwrap();
        assert_eq!(op.order(), 1);
        assert_eq!(op.coefficients(), &[SymbolicElement::zero()]);
        assert!(apply_operator(&op, &e("5")).is_zero());
        assert!(!apply_operator(&op, &e("t")).is_zero());
        assert_eq!(op.to_string(), "y'");
    }

    #[test]
    fn square_root() {
        let op = minimal_annihilator(&[e("(t)^(1/2)")]).unwrap();
        assert_eq!(op.coefficients(), &[e("-1/2/t")]);
        assert!(op.all_rational());
        assert!(apply_operator(&op, &e("(t)^(1/2)")).is_zero());
        assert_eq!(op.to_string(), "y' + (-1/2/(t))*y");
    }

    #[test]
    fn logarithm_and_constant() {
        let op = minimal_annihilator(&[e("log(t)"), e("1")]).unwrap();
        assert_eq!(op.order(), 2);
        assert_eq!(op.coefficients(), &[e("1/t"), e("0")]);
        assert!(op.all_rational());
        assert!(apply_operator(&op, &e("log(t)")).is_zero());
        assert!(apply_operator(&op, &e("1")).is_zero());
        assert_eq!(op.to_string(), "y'' + (1/(t))*y'");
    }

    #[test]
    fn polynomials() {
        let op = minimal_annihilator(&[e("1"), e("t"), e("t^2")]).unwrap();
        assert_eq!(op.coefficients(), &[e("0"), e("0"), e("0")]);
        let op = minimal_annihilator(&[e("t"), e("t^2")]).unwrap();
        assert_eq!(op.coefficients(), &[e("-2/t"), e("2/t^2")]);
    }

    #[test]
    fn dependent_and_empty() {
        assert_eq!(minimal_annihilator(&[e("t"), e("t")]), Err(CasError::DependentBasis));
        assert_eq!(minimal_annihilator(&[e("t"), e("2*t")]), Err(CasError::DependentBasis));
        assert_eq!(minimal_annihilator(&[]), Err(CasError::EmptyBasis));
    }

    #[test]
    fn unreduced_operators_still_annihilate() {
        let basis = [e("(t)^(1/2)+(t-1)^(1/2)"), e("1")];
        let op = minimal_annihilator(&basis).unwrap();
        for b in &basis {
            assert!(apply_operator(&op, b).is_zero());
        }
    }
}
