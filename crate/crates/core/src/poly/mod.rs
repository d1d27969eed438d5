//! Exact polynomial arithmetic.
//!
//! [`MultiPoly`] is a sparse multivariate polynomial over ℚ, [`UniPoly`] a
//! polynomial in `u` with [`MultiPoly`] coefficients (used for the universal
//! monic polynomial and its divisions), and [`QPoly`] a dense univariate
//! polynomial over ℚ with gcd and factorization.

pub mod factor;
pub mod multi;
pub mod qpoly;
pub mod quotient;
pub mod uni;

pub use factor::factor_rational;
pub use multi::{Exponents, MultiPoly};
pub use qpoly::QPoly;
pub use quotient::{filtered_quotient_dims, graded_quotient_dims, GradedQuotientReport};
pub use uni::UniPoly;
