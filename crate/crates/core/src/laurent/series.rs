//! Formal power-series expansion in the x-generators.
//!
//! A rational function whose denominator factors are either x-free or
//! geometric in x (all x-exponents nonnegative, at least one positive)
//! expands as a lattice sum over x-monomials with coefficients that are
//! rational functions in `(q, y)` alone. Truncation is by total
//! x-degree.

use std::collections::BTreeMap;

use crate::Rat;

use super::{
    BinomialFactor, GeneratorSet, LaurentError, LaurentPolynomial, RationalFunction,
};

/// Truncated expansion of a rational function as a series in the
/// x-generators: a map from x-exponent vectors to coefficients in
/// `(q, y)`.
#[derive(Debug, Clone)]
pub struct SeriesInX {
    gens: GeneratorSet,
    degree_bound: i64,
    coefficients: BTreeMap<Vec<i64>, RationalFunction>,
}

impl SeriesInX {
    pub fn generators(&self) -> GeneratorSet {
        self.gens
    }

    pub fn degree_bound(&self) -> i64 {
        self.degree_bound
    }

    /// Coefficient at the given x-exponent vector; zero if absent.
    pub fn coefficient(&self, k: &[i64]) -> RationalFunction {
        self.coefficients
            .get(k)
            .cloned()
            .unwrap_or_else(|| RationalFunction::zero(self.gens))
    }

    /// All stored (exponent, coefficient) pairs in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = (&Vec<i64>, &RationalFunction)> {
        self.coefficients.iter()
    }
}

/// Expand `f` as a power series in the x-generators up to total
/// x-degree `degree_bound`.
///
/// Denominator factors that involve no x stay in the coefficient field;
/// factors whose monomial has all x-exponents >= 0 and at least one > 0
/// are expanded geometrically. Anything else is `NotExpandable`.
pub fn series_in_x(
    f: &RationalFunction,
    degree_bound: i64,
) -> Result<SeriesInX, LaurentError> {
    assert!(degree_bound >= 0, "degree bound must be nonnegative");
    let gens = f.generators();

    let mut coefficient_den: Vec<BinomialFactor> = Vec::new();
    let mut expandable: Vec<&BinomialFactor> = Vec::new();
    for b in f.denominator() {
        if !b.involves_x(&gens) {
            coefficient_den.push(b.clone());
            continue;
        }
        let xs: Vec<i64> = (0..gens.rank())
            .map(|i| b.exponent().0[gens.x_index(i)])
            .collect();
        if xs.iter().any(|&e| e < 0) || xs.iter().all(|&e| e == 0) {
            return Err(LaurentError::NotExpandable);
        }
        expandable.push(b);
    }

    // seed with the numerator, split into x-part and (q,y)-part
    let mut acc: BTreeMap<Vec<i64>, LaurentPolynomial> = BTreeMap::new();
    for (e, c) in f.numerator().terms() {
        let (xs, rest) = LaurentPolynomial::split_x(&gens, e);
        if xs.iter().sum::<i64>() > degree_bound {
            continue;
        }
        let entry = acc
            .entry(xs)
            .or_insert_with(|| LaurentPolynomial::zero(gens));
        *entry = entry.add(&LaurentPolynomial::monomial(gens, rest, c.clone()));
    }

    // multiply in each geometric factor 1/(1 - t^M) = sum_j t^{jM}
    for b in expandable {
        let (mx, mrest) = LaurentPolynomial::split_x(&gens, b.exponent());
        let step: i64 = mx.iter().sum();
        debug_assert!(step > 0);
        let mut next: BTreeMap<Vec<i64>, LaurentPolynomial> = BTreeMap::new();
        for (xs, coeff) in &acc {
            let base: i64 = xs.iter().sum();
            let mut shift = xs.clone();
            let mut factor = coeff.clone();
            let mut j = 0i64;
            while base + j * step <= degree_bound {
                if j > 0 {
                    shift = shift
                        .iter()
                        .zip(&mx)
                        .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                        .collect();
                    factor = factor.mul_monomial(&mrest, &Rat::from_integer(1.into()));
                }
                let entry = next
                    .entry(shift.clone())
                    .or_insert_with(|| LaurentPolynomial::zero(gens));
                *entry = entry.add(&factor);
                j += 1;
            }
        }
        acc = next;
    }

    let coefficients = acc
        .into_iter()
        .filter(|(_, p)| !p.is_zero())
        .map(|(xs, p)| {
            (
                xs,
                RationalFunction::new(p, coefficient_den.clone()).reduce(),
            )
        })
        .collect();

    Ok(SeriesInX {
        gens,
        degree_bound,
        coefficients,
    })
}
