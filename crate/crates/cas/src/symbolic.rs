//! Finite sums `sum r_m(t) * m` of monomials with rational-function coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::monomial::{log_key_cmp, log_key_div, LogKey, Monomial};
use crate::poly::Polynomial;
use crate::ratfun::RationalFunction;
use crate::Rational;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SymbolicElement {
    terms: BTreeMap<Monomial, RationalFunction>,
}

impl SymbolicElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::rational(RationalFunction::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::rational(RationalFunction::constant(c))
    }

    pub fn rational(r: RationalFunction) -> Self {
        Self::term(Monomial::one(), r)
    }

    pub fn polynomial(p: Polynomial) -> Self {
        Self::rational(p.into())
    }

    pub fn t() -> Self {
        Self::polynomial(Polynomial::t())
    }

    pub fn term(m: Monomial, r: RationalFunction) -> Self {
        let mut out = Self::zero();
        out.add_term(m, r);
        out
    }

    /// `(t - c)^a` for any rational `a`.
    pub fn radical(c: &Rational, a: &Rational) -> Self {
        let (m, carry) = Monomial::radical(c, a);
        Self::term(m, carry)
    }

    /// `log(t - c)^k`.
    pub fn log(c: &Rational, k: u32) -> Self {
        Self::term(Monomial::log(c, k), RationalFunction::one())
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, RationalFunction> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Only the trivial monomial occurs.
    pub fn is_rational(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn is_log_free(&self) -> bool {
        self.terms.keys().all(|m| !m.has_logs())
    }

    pub fn as_rational_function(&self) -> Option<RationalFunction> {
        match self.terms.len() {
            0 => Some(RationalFunction::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: Monomial, r: RationalFunction) {
        if r.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                *x = &*x + &r;
                if x.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, r);
            }
        }
    }

    pub fn scale(&self, r: &RationalFunction) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * r)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn derive(&self) -> Self {
        let mut out = Self::zero();
        for (m, r) in &self.terms {
            out.add_term(m.clone(), r.derivative());
            for (dm, w) in m.derive() {
                out.add_term(dm, r * &w);
            }
        }
        out
    }

    /// `derive` applied `k` times.
    pub fn derive_n(&self, k: usize) -> Self {
        (0..k).fold(self.clone(), |e, _| e.derive())
    }

    /// Multiplicative inverse of a single log-free term.
    pub fn inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, r) = self.terms.iter().next()?;
        let (inv, carry) = m.inverse()?;
        Some(Self::term(inv, &r.recip()? * &carry))
    }

    /// Terms grouped by their log exponents; each group is log-free.
    fn log_groups(&self) -> Vec<(LogKey, SymbolicElement)> {
        let mut groups: Vec<(LogKey, SymbolicElement)> = Vec::new();
        for (m, r) in &self.terms {
            let key = m.logs().clone();
            let entry = match groups.iter_mut().find(|(k, _)| *k == key) {
                Some(e) => e,
                None => {
                    groups.push((key, SymbolicElement::zero()));
                    groups.last_mut().unwrap()
                }
            };
            entry.1.add_term(m.radical_part(), r.clone());
        }
        groups
    }

    fn leading_log_group(&self) -> Option<(LogKey, SymbolicElement)> {
        self.log_groups().into_iter().max_by(|a, b| log_key_cmp(&a.0, &b.0))
    }

    /// `self / divisor` when the quotient exists in the ring and can be found
    /// by dividing log layers, leading term first, with a single-term leading
    /// radical coefficient in the divisor. `None` otherwise, including for a
    /// zero divisor or a nonzero remainder.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if let Some(inv) = divisor.inverse() {
            return Some(self * &inv);
        }
        let (dkey, dlead) = divisor.leading_log_group()?;
        let dinv = dlead.inverse()?;
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((key, lead)) = rem.leading_log_group() {
            let qkey = log_key_div(&key, &dkey)?;
            let step = &(&lead * &dinv) * &Self::term(Monomial::from_log_key(qkey), RationalFunction::one());
            rem = &rem - &(&step * divisor);
            quot = &quot + &step;
        }
        Some(quot)
    }
}

impl Add for &SymbolicElement {
    type Output = SymbolicElement;

    fn add(self, rhs: &SymbolicElement) -> SymbolicElement {
        let mut out = self.clone();
        for (m, r) in &rhs.terms {
            out.add_term(m.clone(), r.clone());
        }
        out
    }
}

impl Sub for &SymbolicElement {
    type Output = SymbolicElement;

    fn sub(self, rhs: &SymbolicElement) -> SymbolicElement {
        let mut out = self.clone();
        for (m, r) in &rhs.terms {
            out.add_term(m.clone(), -r);
        }
        out
    }
}

impl Mul for &SymbolicElement {
    type Output = SymbolicElement;

    fn mul(self, rhs: &SymbolicElement) -> SymbolicElement {
        let mut out = SymbolicElement::zero();
        for (ma, ra) in &self.terms {
            for (mb, rb) in &rhs.terms {
                let (m, carry) = ma.mul(mb);
                out.add_term(m, &(ra * rb) * &carry);
            }
        }
        out
    }
}

impl Neg for &SymbolicElement {
    type Output = SymbolicElement;

    fn neg(self) -> SymbolicElement {
        SymbolicElement {
            terms: self.terms.iter().map(|(m, r)| (m.clone(), -r)).collect(),
        }
    }
}

crate::forward_binops!(SymbolicElement);

impl From<RationalFunction> for SymbolicElement {
    fn from(r: RationalFunction) -> Self {
        Self::rational(r)
    }
}

/// One term in the input grammar: coefficient, then `*monomial`.
fn fmt_term(m: &Monomial, r: &RationalFunction) -> String {
    if m.is_one() {
        return r.to_string();
    }
    if r.is_one() {
        return m.to_string();
    }
    if (-r).is_one() {
        return format!("-{m}");
    }
    let num_terms = r
        .numerator()
        .coeffs()
        .iter()
        .filter(|c| !num_traits::Zero::is_zero(*c))
        .count();
    if r.is_polynomial() && num_terms > 1 {
        format!("({r})*{m}")
    } else {
        format!("{r}*{m}")
    }
}

/// Renders in the input grammar so that `parse(e.to_string()) == e`.
impl fmt::Display for SymbolicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, r)) in self.terms.iter().enumerate() {
            let s = fmt_term(m, r);
            if i > 0 && !s.starts_with('-') {
                f.write_str("+")?;
            }
            f.write_str(&s)?;
        }
        Ok(())
    }
}

impl fmt::Debug for SymbolicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymbolicElement({self})")
    }
}
