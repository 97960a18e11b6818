//! Rational functions with factored binomial denominators.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde_json::{Value, json};

use crate::Rat;

use super::poly::rat_pow;
use super::{Exponent, GeneratorSet, LaurentError, LaurentPolynomial};

/// A denominator factor `1 - t^M` for a nonzero exponent vector `M`.
/// The coefficient on the monomial is always exactly 1, so a factor is
/// identified by `M` alone.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BinomialFactor {
    exponent: Exponent,
}

impl BinomialFactor {
    pub fn new(exponent: Exponent) -> Self {
        assert!(!exponent.is_zero(), "binomial factor 1 - t^0 would vanish");
        BinomialFactor { exponent }
    }

    pub fn exponent(&self) -> &Exponent {
        &self.exponent
    }

    /// Expand to the two-term polynomial `1 - t^M`.
    pub fn expand(&self, gens: GeneratorSet) -> LaurentPolynomial {
        LaurentPolynomial::one(gens).mul_binomial(&self.exponent)
    }

    /// Evaluate `1 - t^M` at the assignment.
    pub fn eval(&self, values: &[Rat]) -> Rat {
        let mut m = Rat::one();
        for (i, &e) in self.exponent.0.iter().enumerate() {
            m *= rat_pow(&values[i], e);
        }
        Rat::one() - m
    }

    /// True if the factor involves any x-generator.
    pub fn involves_x(&self, gens: &GeneratorSet) -> bool {
        (0..gens.rank()).any(|i| self.exponent.0[gens.x_index(i)] != 0)
    }
}

/// A rational function: Laurent numerator over a multiset of binomial
/// denominator factors. The denominator is never expanded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFunction {
    numerator: LaurentPolynomial,
    denominator: Vec<BinomialFactor>, // sorted; repeats allowed
}

impl RationalFunction {
    pub fn new(numerator: LaurentPolynomial, mut denominator: Vec<BinomialFactor>) -> Self {
        denominator.sort();
        if numerator.is_zero() {
            denominator.clear();
        }
        RationalFunction {
            numerator,
            denominator,
        }
    }

    pub fn zero(gens: GeneratorSet) -> Self {
        Self::new(LaurentPolynomial::zero(gens), Vec::new())
    }

    pub fn one(gens: GeneratorSet) -> Self {
        Self::new(LaurentPolynomial::one(gens), Vec::new())
    }

    pub fn from_polynomial(p: LaurentPolynomial) -> Self {
        Self::new(p, Vec::new())
    }

    /// `coeff * t^exp` as a rational function.
    pub fn monomial(gens: GeneratorSet, exp: Exponent, coeff: Rat) -> Self {
        Self::from_polynomial(LaurentPolynomial::monomial(gens, exp, coeff))
    }

    /// `1 / (1 - t^M)`.
    pub fn geometric(gens: GeneratorSet, m: Exponent) -> Self {
        Self::new(LaurentPolynomial::one(gens), vec![BinomialFactor::new(m)])
    }

    pub fn numerator(&self) -> &LaurentPolynomial {
        &self.numerator
    }

    pub fn denominator(&self) -> &[BinomialFactor] {
        &self.denominator
    }

    pub fn generators(&self) -> GeneratorSet {
        self.numerator.generators()
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// True if no denominator factor involves an x-generator.
    pub fn is_polynomial_in_x(&self) -> bool {
        let gens = self.generators();
        self.denominator.iter().all(|b| !b.involves_x(&gens))
    }

    fn denominator_multiset(&self) -> BTreeMap<&BinomialFactor, usize> {
        let mut m = BTreeMap::new();
        for b in &self.denominator {
            *m.entry(b).or_insert(0) += 1;
        }
        m
    }

    /// Sum over the multiset-union common denominator: for each distinct
    /// factor the union takes the larger multiplicity, so denominators
    /// shared between summands are not duplicated.
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.generators(), other.generators());
        let a = self.denominator_multiset();
        let b = other.denominator_multiset();
        let mut union: BTreeMap<BinomialFactor, usize> = BTreeMap::new();
        for (f, &m) in &a {
            union.insert((*f).clone(), m);
        }
        for (f, &m) in &b {
            let e = union.entry((*f).clone()).or_insert(0);
            *e = (*e).max(m);
        }

        let extend = |num: &LaurentPolynomial, own: &BTreeMap<&BinomialFactor, usize>| {
            let mut p = num.clone();
            for (f, &m) in &union {
                let have = own.get(f).copied().unwrap_or(0);
                for _ in have..m {
                    p = p.mul_binomial(f.exponent());
                }
            }
            p
        };

        let numerator = extend(&self.numerator, &a).add(&extend(&other.numerator, &b));
        let denominator = union
            .into_iter()
            .flat_map(|(f, m)| std::iter::repeat_n(f, m))
            .collect();
        Self::new(numerator, denominator)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        RationalFunction {
            numerator: self.numerator.neg(),
            denominator: self.denominator.clone(),
        }
    }

    pub fn scale(&self, k: &Rat) -> Self {
        Self::new(self.numerator.scale(k), self.denominator.clone())
    }

    /// Product; denominators concatenate as multisets.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.generators(), other.generators());
        let mut den = self.denominator.clone();
        den.extend(other.denominator.iter().cloned());
        Self::new(self.numerator.mul(&other.numerator), den)
    }

    /// Divide out every denominator binomial that divides the numerator
    /// exactly. Equality is preserved; the result is canonical enough
    /// for the closed forms in this crate (denominators are binomial
    /// products throughout, so no general gcd is ever needed).
    pub fn reduce(&self) -> Self {
        let mut num = self.numerator.clone();
        let mut den = self.denominator.clone();
        if num.is_zero() {
            return Self::zero(self.generators());
        }
        loop {
            let mut progressed = false;
            let mut i = 0;
            while i < den.len() {
                if let Some(q) = num.div_binomial_exact(den[i].exponent()) {
                    num = q;
                    den.remove(i);
                    progressed = true;
                } else {
                    i += 1;
                }
            }
            if !progressed {
                break;
            }
        }
        Self::new(num, den)
    }

    /// Exact equality as rational functions: cancel the common
    /// denominator factors, then cross-multiply the remainder and
    /// compare canonical polynomials. This is the sole notion of
    /// identity between closed forms.
    pub fn equals(&self, other: &Self) -> bool {
        assert_eq!(self.generators(), other.generators());
        let a = self.denominator_multiset();
        let b = other.denominator_multiset();

        let mut lhs = self.numerator.clone();
        let mut rhs = other.numerator.clone();
        // multiply each side by the other's surplus factors
        for (f, &m) in &b {
            let have = a.get(f).copied().unwrap_or(0);
            for _ in have..m {
                lhs = lhs.mul_binomial(f.exponent());
            }
        }
        for (f, &m) in &a {
            let have = b.get(f).copied().unwrap_or(0);
            for _ in have..m {
                rhs = rhs.mul_binomial(f.exponent());
            }
        }
        lhs == rhs
    }

    /// Exact evaluation at nonzero rationals, one per generator.
    pub fn eval_exact(&self, values: &[Rat]) -> Result<Rat, LaurentError> {
        let mut den = Rat::one();
        for b in &self.denominator {
            let v = b.eval(values);
            if v.is_zero() {
                return Err(LaurentError::DenominatorVanishes);
            }
            den *= v;
        }
        Ok(self.numerator.eval(values)? / den)
    }

    /// Interchange JSON: generators, numerator terms in lexicographic
    /// order as `[coeff_num, coeff_den, [exponents...]]` (coefficients
    /// as decimal strings so arbitrary precision survives), denominator
    /// exponent vectors sorted.
    pub fn to_json(&self) -> Value {
        let gens = self.generators();
        let numerator: Vec<Value> = self
            .numerator
            .terms()
            .map(|(e, c)| {
                json!([
                    c.numer().to_string(),
                    c.denom().to_string(),
                    e.0.clone(),
                ])
            })
            .collect();
        let denominator: Vec<Value> = self
            .denominator
            .iter()
            .map(|b| json!(b.exponent().0.clone()))
            .collect();
        json!({
            "generators": gens.names(),
            "numerator": numerator,
            "denominator": denominator,
        })
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator.is_empty() {
            return write!(f, "{}", self.numerator);
        }
        write!(f, "({})", self.numerator)?;
        write!(f, " / [")?;
        let names = self.generators().names();
        for (i, b) in self.denominator.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            let mono: Vec<String> = b
                .exponent()
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e != 0)
                .map(|(j, &e)| {
                    if e == 1 {
                        names[j].clone()
                    } else {
                        format!("{}^{}", names[j], e)
                    }
                })
                .collect();
            write!(f, "(1 - {})", mono.join("*"))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use crate::rat;

    use super::*;

    fn g1() -> GeneratorSet {
        GeneratorSet::new(1)
    }

    fn xexp(g: GeneratorSet, e: i64) -> Exponent {
        g.unit_exponent(g.x_index(0), e)
    }

    fn yexp(g: GeneratorSet, e: i64) -> Exponent {
        g.unit_exponent(g.y_index(0), e)
    }

    fn one_over_one_minus_x(g: GeneratorSet) -> RationalFunction {
        RationalFunction::geometric(g, xexp(g, 1))
    }

    #[test]
    fn add_zero_is_identity() {
        let g = g1();
        let f = one_over_one_minus_x(g);
        let s = f.add(&RationalFunction::zero(g));
        assert!(s.equals(&f));
    }

    #[test]
    fn add_cancellation_reduces_to_one() {
        // 1/(1-x) + (-x)/(1-x) = 1
        let g = g1();
        let f = one_over_one_minus_x(g);
        let minus_x = RationalFunction::new(
            LaurentPolynomial::monomial(g, xexp(g, 1), rat(-1, 1)),
            vec![BinomialFactor::new(xexp(g, 1))],
        );
        let s = f.add(&minus_x).reduce();
        assert!(s.equals(&RationalFunction::one(g)));
        assert!(s.denominator().is_empty());
    }

    #[test]
    fn rank_one_weyl_sum_core() {
        // 1/(1-x*y) - y^-1/(1-x*y^-1)
        //   = (1 - y^-1)(1 + x) / [(1-x*y)(1-x*y^-1)]
        let g = g1();
        let m_plus = xexp(g, 1).add(&yexp(g, 1));
        let m_minus = xexp(g, 1).add(&yexp(g, -1));
        let t1 = RationalFunction::geometric(g, m_plus.clone());
        let t2 = RationalFunction::new(
            LaurentPolynomial::monomial(g, yexp(g, -1), rat(1, 1)),
            vec![BinomialFactor::new(m_minus.clone())],
        );
        let sum = t1.sub(&t2);

        let expected_num = LaurentPolynomial::one(g)
            .mul_binomial(&yexp(g, -1)) // 1 - y^-1
            .mul(&LaurentPolynomial::one(g).add(&LaurentPolynomial::monomial(
                g,
                xexp(g, 1),
                rat(1, 1),
            )));
        let expected = RationalFunction::new(
            expected_num,
            vec![BinomialFactor::new(m_plus), BinomialFactor::new(m_minus)],
        );
        assert!(sum.equals(&expected));
    }

    #[test]
    fn mul_cancels_matching_factor() {
        // ((1+x)/(1-x*y)) * (1-x*y) = 1+x
        let g = g1();
        let m = xexp(g, 1).add(&yexp(g, 1));
        let one_plus_x = LaurentPolynomial::one(g).add(&LaurentPolynomial::monomial(
            g,
            xexp(g, 1),
            rat(1, 1),
        ));
        let f = RationalFunction::new(one_plus_x.clone(), vec![BinomialFactor::new(m.clone())]);
        let p = f
            .mul(&RationalFunction::from_polynomial(
                LaurentPolynomial::one(g).mul_binomial(&m),
            ))
            .reduce();
        assert!(p.denominator().is_empty());
        assert_eq!(p.numerator(), &one_plus_x);
    }

    #[test]
    fn reduce_difference_of_squares() {
        // (1 - x^2)/(1 - x) -> 1 + x
        let g = g1();
        let f = RationalFunction::new(
            LaurentPolynomial::one(g).mul_binomial(&xexp(g, 2)),
            vec![BinomialFactor::new(xexp(g, 1))],
        );
        let r = f.reduce();
        assert!(r.denominator().is_empty());
        assert_eq!(r.numerator().term_count(), 2);
        assert!(f.equals(&r));
    }

    #[test]
    fn reduce_keeps_irreducible() {
        // (1 + x)/(1 - x) unchanged
        let g = g1();
        let f = RationalFunction::new(
            LaurentPolynomial::one(g).add(&LaurentPolynomial::monomial(g, xexp(g, 1), rat(1, 1))),
            vec![BinomialFactor::new(xexp(g, 1))],
        );
        let r = f.reduce();
        assert_eq!(r.denominator().len(), 1);
        assert!(f.equals(&r));
    }

    #[test]
    fn eval_geometric() {
        // 1/(1-x) at x = 1/2 -> 2
        let g = g1();
        let f = one_over_one_minus_x(g);
        let v = f.eval_exact(&[rat(2, 1), rat(1, 2), rat(1, 3)]).unwrap();
        assert_eq!(v, rat(2, 1));
    }

    #[test]
    fn eval_detects_vanishing_denominator() {
        let g = g1();
        let f = one_over_one_minus_x(g);
        let err = f.eval_exact(&[rat(2, 1), rat(1, 1), rat(1, 3)]).unwrap_err();
        assert_eq!(err, LaurentError::DenominatorVanishes);
    }

    #[test]
    fn json_is_deterministic_and_structured() {
        let g = g1();
        let f = RationalFunction::new(
            LaurentPolynomial::one(g).add(&LaurentPolynomial::monomial(
                g,
                xexp(g, 1),
                rat(-1, 2),
            )),
            vec![BinomialFactor::new(xexp(g, 1).add(&yexp(g, 1)))],
        );
        let s1 = serde_json::to_string(&f.to_json()).unwrap();
        let s2 = serde_json::to_string(&f.to_json()).unwrap();
        assert_eq!(s1, s2);
        assert_eq!(
            s1,
            r#"{"generators":["q","x1","y1"],"numerator":[["1","1",[0,0,0]],["-1","2",[0,1,0]]],"denominator":[[0,1,1]]}"#
        );
    }
}
