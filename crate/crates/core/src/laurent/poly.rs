//! Sparse multivariate Laurent polynomials over the rationals.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::{Rat, rat};

use super::{Exponent, GeneratorSet, LaurentError};

/// A Laurent polynomial: a finite map from exponent vectors to nonzero
/// rational coefficients. Zero coefficients are never stored, so two
/// polynomials are equal iff their maps are identical. Iteration order
/// is lexicographic on exponent vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPolynomial {
    gens: GeneratorSet,
    terms: BTreeMap<Exponent, Rat>,
}

impl LaurentPolynomial {
    pub fn zero(gens: GeneratorSet) -> Self {
        LaurentPolynomial {
            gens,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(gens: GeneratorSet) -> Self {
        Self::monomial(gens, gens.zero_exponent(), rat(1, 1))
    }

    /// A single term `coeff * t^exp`. A zero coefficient yields zero.
    pub fn monomial(gens: GeneratorSet, exp: Exponent, coeff: Rat) -> Self {
        assert_eq!(exp.len(), gens.count(), "exponent length mismatch");
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        LaurentPolynomial { gens, terms }
    }

    pub fn constant(gens: GeneratorSet, c: Rat) -> Self {
        Self::monomial(gens, gens.zero_exponent(), c)
    }

    pub fn generators(&self) -> GeneratorSet {
        self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical (lexicographic) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Rat)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exp: &Exponent) -> Rat {
        self.terms.get(exp).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add_term(&mut self, exp: Exponent, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.gens, other.gens, "generator sets differ");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        LaurentPolynomial {
            gens: self.gens,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, k: &Rat) -> Self {
        if k.is_zero() {
            return Self::zero(self.gens);
        }
        LaurentPolynomial {
            gens: self.gens,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.gens, other.gens, "generator sets differ");
        let mut out = Self::zero(self.gens);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea.add(eb), ca * cb);
            }
        }
        out
    }

    /// Multiply by the monomial `coeff * t^exp`.
    pub fn mul_monomial(&self, exp: &Exponent, coeff: &Rat) -> Self {
        if coeff.is_zero() {
            return Self::zero(self.gens);
        }
        LaurentPolynomial {
            gens: self.gens,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.add(exp), c * coeff))
                .collect(),
        }
    }

    /// Multiply by the binomial `1 - t^m` in one linear pass.
    pub fn mul_binomial(&self, m: &Exponent) -> Self {
        let mut out = self.clone();
        for (e, c) in &self.terms {
            out.add_term(e.add(m), -c);
        }
        out
    }

    /// Exact division by the binomial `1 - t^m`, `m` nonzero.
    ///
    /// Terms are grouped into classes `{e0 + k*m}` along the direction
    /// `m`; within each class the quotient coefficients are the prefix
    /// sums of the dividend coefficients, and the division is exact iff
    /// every class sums to zero. Linear in the number of terms.
    pub fn div_binomial_exact(&self, m: &Exponent) -> Option<Self> {
        assert!(!m.is_zero(), "binomial exponent must be nonzero");
        if self.is_zero() {
            return Some(self.clone());
        }
        let pivot = m.0.iter().position(|&e| e != 0).expect("nonzero m");
        let step = m.0[pivot];

        // class key = e - k*m with k = e[pivot] div_euclid step
        let mut classes: BTreeMap<Exponent, Vec<(i64, Rat)>> = BTreeMap::new();
        for (e, c) in &self.terms {
            let k = e.0[pivot].div_euclid(step);
            let key = e.sub(&m.scaled(k));
            classes.entry(key).or_default().push((k, c.clone()));
        }

        let mut quotient = Self::zero(self.gens);
        for (key, mut members) in classes {
            members.sort_by_key(|(k, _)| *k);
            let mut running = Rat::zero();
            let last = members.last().expect("nonempty class").0;
            let mut iter = members.iter().peekable();
            let first = iter.peek().expect("nonempty class").0;
            for k in first..=last {
                if let Some(&&(mk, ref c)) = iter.peek() {
                    if mk == k {
                        running += c;
                        iter.next();
                    }
                }
                if k == last {
                    // exactness: the class must telescope to zero
                    if !running.is_zero() {
                        return None;
                    }
                } else if !running.is_zero() {
                    quotient.add_term(key.add(&m.scaled(k)), running.clone());
                }
            }
        }
        Some(quotient)
    }

    /// Evaluate at an assignment of nonzero rationals, indexed by
    /// generator.
    pub fn eval(&self, values: &[Rat]) -> Result<Rat, LaurentError> {
        assert_eq!(values.len(), self.gens.count(), "assignment length");
        let names = self.gens.names();
        for (i, v) in values.iter().enumerate() {
            if v.is_zero() {
                return Err(LaurentError::ZeroAssignment(names[i].clone()));
            }
        }
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (i, &exp) in e.0.iter().enumerate() {
                term *= rat_pow(&values[i], exp);
            }
            acc += term;
        }
        Ok(acc)
    }

    /// `(min, max)` of the exponent of one generator over the support,
    /// or `None` for the zero polynomial.
    pub fn exponent_range(&self, gen_idx: usize) -> Option<(i64, i64)> {
        let mut range: Option<(i64, i64)> = None;
        for e in self.terms.keys() {
            let v = e.0[gen_idx];
            range = Some(match range {
                None => (v, v),
                Some((lo, hi)) => (lo.min(v), hi.max(v)),
            });
        }
        range
    }

    /// Degree span (max - min exponent) of one generator; 0 for zero.
    pub fn exponent_span(&self, gen_idx: usize) -> i64 {
        self.exponent_range(gen_idx).map_or(0, |(lo, hi)| hi - lo)
    }

    /// Total degree in the x-block of a single exponent vector.
    pub fn x_degree(gens: &GeneratorSet, e: &Exponent) -> i64 {
        (0..gens.rank()).map(|i| e.0[gens.x_index(i)]).sum()
    }

    /// Split an exponent into its x-block part and the rest (q and y).
    pub fn split_x(gens: &GeneratorSet, e: &Exponent) -> (Vec<i64>, Exponent) {
        let mut xs = Vec::with_capacity(gens.rank());
        let mut rest = e.clone();
        for i in 0..gens.rank() {
            let idx = gens.x_index(i);
            xs.push(e.0[idx]);
            rest.0[idx] = 0;
        }
        (xs, rest)
    }
}

/// Exact rational power with integer exponent; the base must be nonzero
/// when the exponent is negative.
pub fn rat_pow(base: &Rat, exp: i64) -> Rat {
    if exp == 0 {
        return rat(1, 1);
    }
    let e32 = i32::try_from(exp).expect("exponent within i32 for evaluation");
    base.pow(e32)
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let names = self.gens.names();
        let mut first = true;
        for (e, c) in &self.terms {
            let mut parts: Vec<String> = Vec::new();
            for (i, &exp) in e.0.iter().enumerate() {
                match exp {
                    0 => {}
                    1 => parts.push(names[i].clone()),
                    _ => parts.push(format!("{}^{}", names[i], exp)),
                }
            }
            let mono = parts.join("*");
            let (sign, mag) = if c.is_negative() {
                ("-", -c)
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            let coeff_is_one = mag == rat(1, 1);
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if coeff_is_one {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{mag}*{mono}")?;
            }
        }
        Ok(())
    }
}
