//! Exact symbolic toolkit for unramified Whittaker functions on p-adic
//! groups and their Mellin transforms.
//!
//! Everything is computed over the rationals in the symbolic generators
//! `(q, x1..xr, y1..yr)`, where `q` is the residue field cardinality,
//! `x_i` stands for `q^{-lambda_i}` (the Mellin variables) and `y_i`
//! stands for `q^{-nu_i}` (the Satake parameters of the principal
//! series). No floating point is used anywhere.
//!
//! Module map:
//! - [`laurent`]: multivariate Laurent polynomials and rational functions
//!   with factored binomial denominators.
//! - [`root_data`]: root systems, coroots and Weyl groups as integer
//!   lattice objects.
//! - [`whittaker_gl2`]: the rank-one (SL2) Whittaker function computed
//!   both from its defining integral and from its closed form, plus the
//!   rank-one Mellin transform.
//! - [`mellin`]: the general Weyl-sum Mellin symbol, Euler factors, the
//!   entire cofactor and the factorization check.
//! - [`oracle`]: independent verification via exact truncated lattice
//!   sums with analytic tail bounds, and degree-growth probes.

pub mod laurent;
pub mod mellin;
pub mod oracle;
pub mod root_data;
pub mod whittaker_gl2;

pub use laurent::{
    BinomialFactor, Exponent, GeneratorSet, LaurentError, LaurentPolynomial, RationalFunction,
};
pub use root_data::{RootDatum, RootError, Series, WeylElement, WeylGroup};

/// Exact rational scalar used for all coefficient arithmetic.
pub type Rat = num_rational::BigRational;

/// Convenience constructor for small rational constants.
pub fn rat(n: i64, d: i64) -> Rat {
    assert!(d != 0, "zero denominator");
    Rat::new(n.into(), d.into())
}

/// Integer as a rational.
pub fn int(n: i64) -> Rat {
    Rat::from_integer(n.into())
}
