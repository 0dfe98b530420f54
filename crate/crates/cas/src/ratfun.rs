//! Reduced quotients of polynomials, the base field `Q(t)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::poly::Polynomial;
use crate::Rational;

/// `numerator / denominator` with a monic denominator and coprime parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    /// Reduces `num / den`; `None` when `den` is zero.
    pub fn new(num: Polynomial, den: Polynomial) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(Self::zero());
        }
        let g = num.gcd(&den);
        let (num, _) = num.div_rem(&g);
        let (den, _) = den.div_rem(&g);
        let lead = den.leading().recip();
        Some(Self {
            num: num.scale(&lead),
            den: den.scale(&lead),
        })
    }

    pub fn zero() -> Self {
        Self {
            num: Polynomial::zero(),
            den: Polynomial::one(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::polynomial(Polynomial::constant(c))
    }

    pub fn polynomial(p: Polynomial) -> Self {
        Self {
            num: p,
            den: Polynomial::one(),
        }
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The value when the function is a constant.
    pub fn as_constant(&self) -> Option<Rational> {
        (self.den.is_one() && self.num.is_constant()).then(|| self.num.coeff(0))
    }

    pub fn recip(&self) -> Option<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &Self) -> Option<Self> {
        Some(self * &rhs.recip()?)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        Self {
            num: self.num.pow(k),
            den: self.den.pow(k),
        }
    }

    /// `(t - c)^k` for any integer `k`.
    pub fn linear_power(c: &Rational, k: i64) -> Self {
        let p = Polynomial::linear_power(c, k.unsigned_abs() as u32);
        if k >= 0 {
            Self::polynomial(p)
        } else {
            Self {
                num: Polynomial::one(),
                den: p,
            }
        }
    }

    /// Quotient rule.
    pub fn derivative(&self) -> Self {
        let num = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::new(num, &self.den * &self.den).expect("denominator is nonzero")
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;

    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return RationalFunction::new(&self.num + &rhs.num, self.den.clone()).unwrap();
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RationalFunction::new(num, &self.den * &rhs.den).unwrap()
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;

    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;

    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den).unwrap()
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;

    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

crate::forward_binops!(RationalFunction);

impl From<Polynomial> for RationalFunction {
    fn from(p: Polynomial) -> Self {
        Self::polynomial(p)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = self.num.to_string();
        let bare = self.num.coeffs().iter().filter(|c| !c.is_zero()).count() <= 1;
        if self.den.is_one() {
            return f.write_str(&num);
        }
        if bare {
            write!(f, "{num}/({})", self.den)
        } else {
            write!(f, "({num})/({})", self.den)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio;

    fn poly(cs: &[i64]) -> Polynomial {
        Polynomial::new(cs.iter().map(|&c| ratio(c, 1)).collect())
    }

    fn rf(n: &[i64], d: &[i64]) -> RationalFunction {
        RationalFunction::new(poly(n), poly(d)).unwrap()
    }

    #[test]
    fn normalization() {
        let r = rf(&[-2, 0, 2], &[2, 2]);
        assert_eq!(r.numerator(), &poly(&[-1, 1]));
        assert!(r.is_polynomial());
        let s = rf(&[3], &[0, 2]);
        assert_eq!(s.numerator(), &Polynomial::new(vec![ratio(3, 2)]));
        assert_eq!(s.denominator(), &Polynomial::t());
        assert_eq!(rf(&[], &[5, 1]), RationalFunction::zero());
        assert!(RationalFunction::new(poly(&[1]), Polynomial::zero()).is_none());
    }

    #[test]
    fn field_operations() {
        let a = rf(&[1], &[0, 1]);
        let b = rf(&[1], &[-1, 1]);
        assert_eq!(&a + &b, rf(&[-1, 2], &[0, -1, 1]));
        assert_eq!(&a - &a, RationalFunction::zero());
        assert_eq!(&a * &a.recip().unwrap(), RationalFunction::one());
        assert!(RationalFunction::zero().recip().is_none());
        assert_eq!(RationalFunction::linear_power(&ratio(0, 1), -2), rf(&[1], &[0, 0, 1]));
    }

    #[test]
    fn derivative() {
        assert_eq!(rf(&[1], &[0, 1]).derivative(), rf(&[-1], &[0, 0, 1]));
        assert_eq!(rf(&[0, 0, 1], &[1]).derivative(), rf(&[0, 2], &[1]));
        assert_eq!(
            RationalFunction::constant(ratio(7, 3)).derivative(),
            RationalFunction::zero()
        );
    }

    #[test]
    fn display() {
        assert_eq!(rf(&[3], &[-1, 1]).to_string(), "3/(t-1)");
        assert_eq!(rf(&[1, 1], &[0, 1]).to_string(), "(t+1)/(t)");
        assert_eq!(rf(&[-1], &[0, 2]).to_string(), "-1/2/(t)");
    }
}
