//! Determinants over the symbolic ring and Wronskians of element lists.

use crate::symbolic::SymbolicElement;

pub type SymbolicMatrix = Vec<Vec<SymbolicElement>>;

/// Rows are the derivatives of orders `0..s` of the `s` elements.
pub fn wronskian_matrix(elements: &[SymbolicElement]) -> SymbolicMatrix {
    let s = elements.len();
    let mut rows = vec![elements.to_vec()];
    for _ in 1..s {
        let next = rows.last().unwrap().iter().map(SymbolicElement::derive).collect();
        rows.push(next);
    }
    rows
}

/// Laplace expansion along the first row. The empty matrix has determinant 1.
pub fn determinant_cofactor(m: &[Vec<SymbolicElement>]) -> SymbolicElement {
    let cols: Vec<usize> = (0..m.len()).collect();
    expand(m, 0, &cols)
}

fn expand(m: &[Vec<SymbolicElement>], row: usize, cols: &[usize]) -> SymbolicElement {
    if cols.is_empty() {
        return SymbolicElement::one();
    }
    if cols.len() == 1 {
        return m[row][cols[0]].clone();
    }
    let mut acc = SymbolicElement::zero();
    for (k, &c) in cols.iter().enumerate() {
        let entry = &m[row][c];
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = entry * &expand(m, row + 1, &rest);
        acc = if k % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// Fraction-free (Bareiss) elimination. `None` when an intermediate division
/// is not resolved by [`SymbolicElement::div_exact`].
pub fn determinant_bareiss(m: &[Vec<SymbolicElement>]) -> Option<SymbolicElement> {
    let n = m.len();
    if n == 0 {
        return Some(SymbolicElement::one());
    }
    let mut a: SymbolicMatrix = m.to_vec();
    let mut prev = SymbolicElement::one();
    let mut negate = false;
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return Some(SymbolicElement::zero());
            };
            a.swap(k, swap);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let cross = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = cross.div_exact(&prev)?;
            }
            a[i][k] = SymbolicElement::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Some(if negate { -det } else { det })
}

/// `W(y_1, ..., y_s)` by cofactor expansion.
pub fn wronskian(elements: &[SymbolicElement]) -> SymbolicElement {
    determinant_cofactor(&wronskian_matrix(elements))
}

/// `W(y_1, ..., y_s)` by fraction-free elimination.
pub fn wronskian_bareiss(elements: &[SymbolicElement]) -> Option<SymbolicElement> {
    determinant_bareiss(&wronskian_matrix(elements))
}
