//! Exact multivariate Laurent-polynomial and rational-function arithmetic
//! over the rationals in the generators `(q, x1..xr, y1..yr)`.
//!
//! The representation choices are driven by the shapes that actually
//! occur downstream:
//! - numerators are sparse Laurent polynomials with exact rational
//!   coefficients, canonically ordered lexicographically on exponents;
//! - denominators are kept *factored* as multisets of binomials
//!   `(1 - monomial)`, never expanded, so no multivariate gcd is needed;
//! - reduction is exact division of the numerator by denominator
//!   binomials, a linear-time scan along exponent classes.
//!
//! Provides:
//! - [`GeneratorSet`]: the fixed generator ordering, `q` first.
//! - [`Exponent`]: integer exponent vectors (negative entries allowed).
//! - [`LaurentPolynomial`]: sparse map exponent -> nonzero rational.
//! - [`BinomialFactor`]: a denominator factor `1 - monomial`.
//! - [`RationalFunction`]: numerator over a multiset of binomials, with
//!   `add`/`mul`/`reduce`/`equals`/`eval_exact`/`series_in_x`.

mod poly;
mod ratfn;
mod series;

pub use poly::{LaurentPolynomial, rat_pow};
pub use ratfn::{BinomialFactor, RationalFunction};
pub use series::{SeriesInX, series_in_x};

use thiserror::Error;

/// Errors from rational-function arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaurentError {
    /// A denominator binomial evaluates to zero at the given point.
    #[error("denominator factor vanishes at the assignment")]
    DenominatorVanishes,
    /// A denominator factor mixes signs in its x-exponents (or has no
    /// positive x-exponent while involving x), so it admits no geometric
    /// expansion in the x-variables.
    #[error("denominator factor is not expandable as a power series in x")]
    NotExpandable,
    /// An evaluation point assigns zero to a generator.
    #[error("generator `{0}` must be assigned a nonzero rational")]
    ZeroAssignment(String),
}

/// The ordered generator list `(q, x1..xr, y1..yr)` for a fixed rank.
///
/// `q` is always index 0, `x_i` is index `i`, `y_i` is index `rank + i`
/// (both 1-based in the name, 0-based in the vector).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GeneratorSet {
    rank: usize,
}

impl GeneratorSet {
    pub fn new(rank: usize) -> Self {
        assert!(rank >= 1, "rank must be positive");
        GeneratorSet { rank }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Total number of generators, `2*rank + 1`.
    pub fn count(&self) -> usize {
        2 * self.rank + 1
    }

    pub fn q_index(&self) -> usize {
        0
    }

    /// Index of `x_i`, `i` 0-based.
    pub fn x_index(&self, i: usize) -> usize {
        assert!(i < self.rank);
        1 + i
    }

    /// Index of `y_i`, `i` 0-based.
    pub fn y_index(&self, i: usize) -> usize {
        assert!(i < self.rank);
        1 + self.rank + i
    }

    /// True if `idx` is one of the x-generators.
    pub fn is_x_index(&self, idx: usize) -> bool {
        (1..=self.rank).contains(&idx)
    }

    /// Generator names in index order: `q, x1..xr, y1..yr`.
    pub fn names(&self) -> Vec<String> {
        let mut out = Vec::with_capacity(self.count());
        out.push("q".to_string());
        for i in 1..=self.rank {
            out.push(format!("x{i}"));
        }
        for i in 1..=self.rank {
            out.push(format!("y{i}"));
        }
        out
    }

    /// Look up a generator index by name.
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names().iter().position(|n| n == name)
    }

    /// The zero exponent vector.
    pub fn zero_exponent(&self) -> Exponent {
        Exponent(vec![0; self.count()])
    }

    /// Exponent vector with a single entry set.
    pub fn unit_exponent(&self, idx: usize, e: i64) -> Exponent {
        let mut v = vec![0; self.count()];
        v[idx] = e;
        Exponent(v)
    }
}

/// An integer exponent vector over a [`GeneratorSet`].
///
/// Ordering is lexicographic (the derived `Ord` on the inner vector),
/// which is the canonical term order everywhere in this crate.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Exponent(pub Vec<i64>);

impl Exponent {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Componentwise sum with overflow checks.
    pub fn add(&self, other: &Exponent) -> Exponent {
        assert_eq!(self.len(), other.len(), "generator sets differ");
        Exponent(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
        )
    }

    /// Componentwise difference with overflow checks.
    pub fn sub(&self, other: &Exponent) -> Exponent {
        assert_eq!(self.len(), other.len(), "generator sets differ");
        Exponent(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.checked_sub(*b).expect("exponent overflow"))
                .collect(),
        )
    }

    /// Scalar multiple with overflow checks.
    pub fn scaled(&self, k: i64) -> Exponent {
        Exponent(
            self.0
                .iter()
                .map(|a| a.checked_mul(k).expect("exponent overflow"))
                .collect(),
        )
    }

    pub fn neg(&self) -> Exponent {
        self.scaled(-1)
    }
}
