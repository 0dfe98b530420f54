//! Exact monodromy computations on fiber homology.
//!
//! * [`linalg`]: rational matrices and canonical subspaces.
//! * [`homology`]: the toy, parabolic and Lotka-Volterra homology models.
//! * [`monodromy`]: Picard-Lefschetz operators and group words.
//! * [`invariant`]: orbit enumeration, the forcing closure of the vanishing
//!   cycle, minimality certificates and zero-subspace profiles.

pub mod homology;
pub mod invariant;
pub mod linalg;
pub mod monodromy;

pub use homology::{build, build_lotka_volterra, build_parabolic, build_toy, validate, Family, HomologyModel};
pub use linalg::{Matrix, Rational, Subspace};
