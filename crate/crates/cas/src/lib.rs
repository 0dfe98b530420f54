//! Exact symbolic elements over `Q(t)` built from radicals `(t - c)^a` and
//! logarithms `log(t - c)^k`, with Wronskians and the monic annihilating
//! operator of a finite basis of such elements.
//!
//! The ring generated by these monomials is treated as an integral domain:
//! radicals over distinct centers are independent and logarithms are
//! transcendental over the radical layer. This is assumed, not checked.

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

pub mod annihilator;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod ratfun;
pub mod symbolic;
pub mod wronskian;

pub use annihilator::{apply_operator, minimal_annihilator, DiffOperator};
pub use monomial::Monomial;
pub use parse::parse;
pub use poly::Polynomial;
pub use ratfun::RationalFunction;
pub use symbolic::SymbolicElement;
pub use wronskian::{wronskian, wronskian_bareiss};

pub type Rational = BigRational;

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CasError {
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("basis is linearly dependent (zero Wronskian)")]
    DependentBasis,
    #[error("basis is empty")]
    EmptyBasis,
}

/// Owned and mixed-ownership arithmetic in terms of the `&T op &T` impls.
#[macro_export]
#[doc(hidden)]
macro_rules! forward_binops {
    ($t:ty) => {
        $crate::forward_binops!(@op $t, Add, add);
        $crate::forward_binops!(@op $t, Sub, sub);
        $crate::forward_binops!(@op $t, Mul, mul);

        impl ::std::ops::Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                -&self
            }
        }
    };
    (@op $t:ty, $tr:ident, $m:ident) => {
        impl ::std::ops::$tr for $t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t {
                ::std::ops::$tr::$m(&self, &rhs)
            }
        }

        impl ::std::ops::$tr<&$t> for $t {
            type Output = $t;
            fn $m(self, rhs: &$t) -> $t {
                ::std::ops::$tr::$m(&self, rhs)
            }
        }
    };
}
