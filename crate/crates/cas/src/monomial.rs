//! Products of radicals `(t - c)^a`, `0 < a < 1`, and log powers `log(t - c)^k`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::poly::Polynomial;
use crate::ratfun::RationalFunction;
use crate::Rational;

/// Exponents of the log layer, keyed by center.
pub type LogKey = BTreeMap<Rational, u32>;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial {
    radicals: BTreeMap<Rational, Rational>,
    logs: LogKey,
}

/// Splits `a` into `(k, a - k)` with `k = floor(a)`.
fn split_exponent(a: &Rational) -> (i64, Rational) {
    let k = a.floor();
    let frac = a - &k;
    let k = k.to_integer().to_i64().expect("exponent fits in i64");
    (k, frac)
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    /// `(t - c)^a` as a normalized monomial times an integer-power carry.
    pub fn radical(c: &Rational, a: &Rational) -> (Self, RationalFunction) {
        let (k, frac) = split_exponent(a);
        let mut m = Self::one();
        if !frac.is_zero() {
            m.radicals.insert(c.clone(), frac);
        }
        (m, RationalFunction::linear_power(c, k))
    }

    /// `log(t - c)^k`.
    pub fn log(c: &Rational, k: u32) -> Self {
        let mut m = Self::one();
        if k > 0 {
            m.logs.insert(c.clone(), k);
        }
        m
    }

    pub fn from_log_key(logs: LogKey) -> Self {
        Self {
            radicals: BTreeMap::new(),
            logs: logs.into_iter().filter(|(_, k)| *k > 0).collect(),
        }
    }

    pub fn radicals(&self) -> &BTreeMap<Rational, Rational> {
        &self.radicals
    }

    pub fn logs(&self) -> &LogKey {
        &self.logs
    }

    pub fn is_one(&self) -> bool {
        self.radicals.is_empty() && self.logs.is_empty()
    }

    pub fn has_logs(&self) -> bool {
        !self.logs.is_empty()
    }

    pub fn log_degree(&self) -> u32 {
        self.logs.values().sum()
    }

    /// The radical factor alone.
    pub fn radical_part(&self) -> Self {
        Self {
            radicals: self.radicals.clone(),
            logs: LogKey::new(),
        }
    }

    /// Product with the integer carry produced by exponents reaching 1.
    pub fn mul(&self, other: &Self) -> (Self, RationalFunction) {
        let mut out = self.clone();
        let mut carry = RationalFunction::one();
        for (c, a) in &other.radicals {
            let sum = out.radicals.get(c).map_or_else(|| a.clone(), |b| a + b);
            let (k, frac) = split_exponent(&sum);
            if frac.is_zero() {
                out.radicals.remove(c);
            } else {
                out.radicals.insert(c.clone(), frac);
            }
            if k != 0 {
                carry = &carry * &RationalFunction::linear_power(c, k);
            }
        }
        for (c, k) in &other.logs {
            *out.logs.entry(c.clone()).or_insert(0) += k;
        }
        (out, carry)
    }

    /// Inverse of the radical part, `None` when logs are present.
    pub fn inverse(&self) -> Option<(Self, RationalFunction)> {
        if self.has_logs() {
            return None;
        }
        let mut out = Self::one();
        let mut carry = RationalFunction::one();
        for (c, a) in &self.radicals {
            out.radicals.insert(c.clone(), Rational::one() - a);
            carry = &carry * &RationalFunction::linear_power(c, -1);
        }
        Some((out, carry))
    }

    /// `d/dt` as a list of `(monomial, coefficient)` terms.
    pub fn derive(&self) -> Vec<(Self, RationalFunction)> {
        let mut out = Vec::new();
        let shift = |c: &Rational, w: Rational| RationalFunction::linear_power(c, -1).scale(&w);
        for (c, a) in &self.radicals {
            out.push((self.clone(), shift(c, a.clone())));
        }
        for (c, &k) in &self.logs {
            let mut m = self.clone();
            if k == 1 {
                m.logs.remove(c);
            } else {
                m.logs.insert(c.clone(), k - 1);
            }
            out.push((m, shift(c, Rational::from_integer(k.into()))));
        }
        out
    }
}

/// Graded lexicographic order on log exponents, smaller centers first.
pub fn log_key_cmp(a: &LogKey, b: &LogKey) -> Ordering {
    let da: u32 = a.values().sum();
    let db: u32 = b.values().sum();
    da.cmp(&db).then_with(|| {
        let centers: std::collections::BTreeSet<&Rational> = a.keys().chain(b.keys()).collect();
        for c in centers {
            let x = a.get(c).copied().unwrap_or(0);
            let y = b.get(c).copied().unwrap_or(0);
            if x != y {
                return x.cmp(&y);
            }
        }
        Ordering::Equal
    })
}

/// `a - b` on log exponents when every exponent of `b` fits under `a`.
pub fn log_key_div(a: &LogKey, b: &LogKey) -> Option<LogKey> {
    let mut out = a.clone();
    for (c, k) in b {
        let x = out.get_mut(c)?;
        *x = x.checked_sub(*k)?;
        if *x == 0 {
            out.remove(c);
        }
    }
    Some(out)
}

pub(crate) fn fmt_linear(c: &Rational) -> String {
    Polynomial::linear(c).to_string()
}

pub(crate) fn fmt_exponent(a: &Rational) -> String {
    if a.is_integer() && !a.is_negative() {
        a.to_string()
    } else {
        format!("({a})")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut parts = Vec::new();
        for (c, a) in &self.radicals {
            parts.push(format!("({})^{}", fmt_linear(c), fmt_exponent(a)));
        }
        for (c, k) in &self.logs {
            let base = format!("log({})", fmt_linear(c));
            parts.push(if *k == 1 { base } else { format!("{base}^{k}") });
        }
        f.write_str(&parts.join("*"))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Monomial({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio;

    #[test]
    fn radical_normalization_carries_integer_part() {
        let (m, carry) = Monomial::radical(&ratio(1, 1), &ratio(5, 3));
        assert_eq!(m.radicals().get(&ratio(1, 1)), Some(&ratio(2, 3)));
        assert_eq!(carry, RationalFunction::linear_power(&ratio(1, 1), 1));
        let (m, carry) = Monomial::radical(&ratio(0, 1), &ratio(-1, 2));
        assert_eq!(m.radicals().get(&ratio(0, 1)), Some(&ratio(1, 2)));
        assert_eq!(carry, RationalFunction::linear_power(&ratio(0, 1), -1));
        let (m, carry) = Monomial::radical(&ratio(0, 1), &ratio(2, 1));
        assert!(m.is_one());
        assert_eq!(carry, RationalFunction::linear_power(&ratio(0, 1), 2));
    }

    #[test]
    fn product_of_square_roots() {
        let (r, _) = Monomial::radical(&ratio(0, 1), &ratio(1, 2));
        let (m, carry) = r.mul(&r);
        assert!(m.is_one());
        assert_eq!(carry, RationalFunction::polynomial(Polynomial::t()));
        let (inv, c) = r.inverse().unwrap();
        let (m, carry) = r.mul(&inv);
        assert!(m.is_one());
        assert!((&carry * &c).is_one());
        assert!(Monomial::log(&ratio(0, 1), 1).inverse().is_none());
    }

    #[test]
    fn log_orders() {
        let key = |pairs: &[(i64, u32)]| -> LogKey { pairs.iter().map(|&(c, k)| (ratio(c, 1), k)).collect() };
        assert_eq!(log_key_cmp(&key(&[(0, 2)]), &key(&[(1, 1)])), Ordering::Greater);
        assert_eq!(log_key_cmp(&key(&[(0, 1)]), &key(&[(1, 1)])), Ordering::Greater);
        assert_eq!(log_key_cmp(&key(&[]), &key(&[])), Ordering::Equal);
        assert_eq!(
            log_key_div(&key(&[(0, 2), (1, 1)]), &key(&[(0, 1)])),
            Some(key(&[(0, 1), (1, 1)]))
        );
        assert_eq!(log_key_div(&key(&[(0, 1)]), &key(&[(1, 1)])), None);
    }

    #[test]
    fn display() {
        let (r, _) = Monomial::radical(&ratio(1, 1), &ratio(1, 3));
        let (m, _) = r.mul(&Monomial::log(&ratio(-2, 1), 2));
        assert_eq!(m.to_string(), "(t-1)^(1/3)*log(t+2)^2");
        assert_eq!(Monomial::log(&ratio(0, 1), 1).to_string(), "log(t)");
    }
}
