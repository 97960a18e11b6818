//! The Weyl-sum Mellin symbol for a general unramified datum: the
//! spectral prefactor, the per-element correction monomials, the
//! alternating sum over the Weyl group, Euler factors, the entire
//! cofactor and the factorization check.
//!
//! Everything is a rational function in `(q, x1..xr, y1..yr)` with
//! `y_i = q^{-nu_i}` and `x_i = q^{-lambda_i}`. For a root `beta` with
//! coroot expansion `sum c_i coroot_i`, the monomial `q^{-nu_beta}` is
//! `prod y_i^{c_i}`; the action identity `(w nu)_alpha =
//! nu_{w^{-1} alpha}` routes every Weyl twist through the coroot
//! lattice.
//!
//! The symbol is kept in structured form (prefactor plus one term per
//! Weyl element); combining over a common denominator is exact but its
//! cost grows quickly with `|W|` for the unspecialized symbol, so the
//! diagonal specialization and the coefficient table work termwise.

use std::collections::BTreeMap;

use serde_json::{Value, json};
use thiserror::Error;

use crate::laurent::{
    BinomialFactor, Exponent, GeneratorSet, LaurentError, LaurentPolynomial, RationalFunction,
};
use crate::root_data::{
    CorootVector, RootDatum, RootVector, WeylElement, WeylGroup, generate_weyl,
    negative_simple_set,
};
use crate::{Rat, int, rat};

/// Errors from the Mellin-symbol layer.
#[derive(Debug, Clone, Error)]
pub enum MellinError {
    /// The entire cofactor kept an x-dependent denominator after
    /// reduction; signals a convention error upstream.
    #[error("cofactor is not polynomial in the x-variables")]
    NotEntire,
    /// Adjoint Euler factors are only defined here for split data
    /// (every epsilon flag zero).
    #[error("adjoint Euler factor requires epsilon = 0")]
    EpsilonUnsupported,
    /// The factorization identity failed; the reduced difference of
    /// the two sides is attached.
    #[error("factorization identity failed")]
    FactorizationFailed { residual: Box<RationalFunction> },
    #[error(transparent)]
    Laurent(#[from] LaurentError),
}

/// A root datum together with its Weyl group and the generator set of
/// its Satake variables.
#[derive(Debug, Clone)]
pub struct SpectralParams {
    datum: RootDatum,
    weyl: WeylGroup,
    gens: GeneratorSet,
}

impl SpectralParams {
    pub fn new(datum: RootDatum) -> Self {
        let weyl = generate_weyl(&datum);
        let gens = GeneratorSet::new(datum.rank);
        SpectralParams { datum, weyl, gens }
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn weyl(&self) -> &WeylGroup {
        &self.weyl
    }

    pub fn generators(&self) -> GeneratorSet {
        self.gens
    }

    /// Exponent of the monomial `q^{-nu_beta}` for any root `beta`,
    /// read off the coroot expansion.
    pub fn nu_exponent(&self, root: &RootVector) -> Exponent {
        let coroot = self
            .datum
            .coroot_of(root)
            .expect("nu_exponent called on a root of the datum");
        let mut e = self.gens.zero_exponent();
        for (i, &c) in coroot.coords.iter().enumerate() {
            e.0[self.gens.y_index(i)] = c;
        }
        e
    }

    /// `q^{-nu_beta}` as a one-term polynomial.
    pub fn nu_monomial(&self, root: &RootVector) -> LaurentPolynomial {
        LaurentPolynomial::monomial(self.gens, self.nu_exponent(root), rat(1, 1))
    }
}

/// The spectral prefactor: product over the simple roots of
/// `(1 - (-1)^eps q^{-1} y) (1 - q^{-2} y)^eps / (1 - y^{-(1+eps)})`.
pub fn c_factor(params: &SpectralParams) -> RationalFunction {
    let gens = params.generators();
    let mut num = LaurentPolynomial::one(gens);
    let mut den = Vec::new();
    for (i, &eps) in params.datum().epsilon.iter().enumerate() {
        let qy = |qe: i64| {
            let mut e = gens.zero_exponent();
            e.0[gens.q_index()] = qe;
            e.0[gens.y_index(i)] = 1;
            e
        };
        if eps == 0 {
            num = num.mul_binomial(&qy(-1)); // 1 - q^{-1} y
        } else {
            // (1 + q^{-1} y)(1 - q^{-2} y)
            num = num.add(&num.mul_monomial(&qy(-1), &int(1)));
            num = num.mul_binomial(&qy(-2));
        }
        den.push(BinomialFactor::new(
            gens.unit_exponent(gens.y_index(i), -(1 + eps as i64)),
        ));
    }
    RationalFunction::new(num, den)
}

/// The correction monomial `prod_{w alpha < 0} y_alpha^{-(1+eps)}`
/// over the simple roots sent negative by `w`.
pub fn d_factor(w: &WeylElement, params: &SpectralParams) -> LaurentPolynomial {
    let gens = params.generators();
    let mut e = gens.zero_exponent();
    for i in negative_simple_set(w, params.datum()) {
        e.0[gens.y_index(i)] = -(1 + params.datum().epsilon[i] as i64);
    }
    LaurentPolynomial::monomial(gens, e, rat(1, 1))
}

/// Exponent of `q^{-(w nu)_alpha}` for a simple root index, computed
/// through the coroot lattice: `(w nu)_alpha = <nu, w^{-1} coroot>`.
pub fn wnu_exponent(w: &WeylElement, alpha: usize, params: &SpectralParams) -> Exponent {
    let gens = params.generators();
    let mut basis = vec![0i64; params.datum().rank];
    basis[alpha] = 1;
    let c = w.apply_inverse_to_coroot(params.datum(), &CorootVector { coords: basis });
    let mut e = gens.zero_exponent();
    for (i, &ci) in c.coords.iter().enumerate() {
        e.0[gens.y_index(i)] = ci;
    }
    e
}

/// `q^{-(w nu)_alpha}` as a one-term polynomial.
pub fn wnu_monomial(w: &WeylElement, alpha: usize, params: &SpectralParams) -> LaurentPolynomial {
    LaurentPolynomial::monomial(params.generators(), wnu_exponent(w, alpha, params), rat(1, 1))
}

/// One Weyl-group summand of the Mellin symbol:
/// `sign * D(w) / prod_alpha (1 - x_alpha q^{-(w nu)_alpha})`.
#[derive(Debug, Clone)]
pub struct MellinTerm {
    pub sign: i64,
    /// Exponent of the monomial `D(nu, w)`.
    pub d_exponent: Exponent,
    /// Per simple root, the y-exponent of `q^{-(w nu)_alpha}`.
    pub wnu_exponents: Vec<Exponent>,
}

impl MellinTerm {
    /// Denominator factors `(1 - x_alpha * q^{-(w nu)_alpha})`.
    pub fn denominators(&self, gens: GeneratorSet) -> Vec<BinomialFactor> {
        self.wnu_exponents
            .iter()
            .enumerate()
            .map(|(i, e)| BinomialFactor::new(e.add(&gens.unit_exponent(gens.x_index(i), 1))))
            .collect()
    }

    /// The summand as a rational function (without the prefactor).
    pub fn to_rational_function(&self, gens: GeneratorSet) -> RationalFunction {
        RationalFunction::new(
            LaurentPolynomial::monomial(gens, self.d_exponent.clone(), int(self.sign)),
            self.denominators(gens),
        )
    }
}

/// The Mellin symbol in structured form: prefactor times an alternating
/// sum with one term per Weyl element.
#[derive(Debug, Clone)]
pub struct MellinSymbol {
    gens: GeneratorSet,
    pub prefactor: RationalFunction,
    pub terms: Vec<MellinTerm>,
}

impl MellinSymbol {
    pub fn generators(&self) -> GeneratorSet {
        self.gens
    }

    /// Combine the terms over a common denominator and multiply in the
    /// prefactor. Exact; intended for small Weyl groups when the
    /// symbol is unspecialized (the diagonal path scales further).
    pub fn combined_value(&self) -> RationalFunction {
        let sum = self
            .terms
            .iter()
            .fold(RationalFunction::zero(self.gens), |acc, t| {
                acc.add(&t.to_rational_function(self.gens))
            });
        self.prefactor.mul(&sum)
    }

    /// Evaluate the symbol exactly at an assignment, term by term.
    pub fn eval_exact(&self, values: &[Rat]) -> Result<Rat, LaurentError> {
        let mut acc = Rat::from_integer(0.into());
        for t in &self.terms {
            acc += t.to_rational_function(self.gens).eval_exact(values)?;
        }
        Ok(acc * self.prefactor.eval_exact(values)?)
    }

    /// Coefficient of `prod x_i^{k_i}` in the power-series expansion:
    /// zero off the nonnegative cone, otherwise the exact finite sum
    /// `C * sum_w sign(w) D(w) prod_alpha (q^{-(w nu)_alpha})^{k_alpha}`.
    pub fn coefficient_at(&self, k: &[i64]) -> RationalFunction {
        assert_eq!(k.len(), self.gens.rank());
        if k.iter().any(|&ki| ki < 0) {
            return RationalFunction::zero(self.gens);
        }
        let mut sum = LaurentPolynomial::zero(self.gens);
        for t in &self.terms {
            let mut e = t.d_exponent.clone();
            for (alpha, m) in t.wnu_exponents.iter().enumerate() {
                e = e.add(&m.scaled(k[alpha]));
            }
            sum.add_term(e, int(t.sign));
        }
        self.prefactor
            .mul(&RationalFunction::from_polynomial(sum))
            .reduce()
    }

    /// Coefficient table over all lattice points of total degree at
    /// most `bound`.
    pub fn coefficients(&self, bound: i64) -> CoefficientTable {
        let rank = self.gens.rank();
        let mut entries = BTreeMap::new();
        let mut stack = vec![(Vec::<i64>::new(), bound)];
        while let Some((prefix, rest)) = stack.pop() {
            if prefix.len() == rank {
                let c = self.coefficient_at(&prefix);
                if !c.is_zero() {
                    entries.insert(prefix, c);
                }
                continue;
            }
            for v in 0..=rest {
                let mut p = prefix.clone();
                p.push(v);
                stack.push((p, rest - v));
            }
        }
        CoefficientTable {
            gens: self.gens,
            bound,
            entries,
        }
    }
}

/// Map every `x_i` exponent onto `x_1`, leaving `q` and the
/// y-generators alone.
fn specialize_exponent(gens: GeneratorSet, e: &Exponent) -> Exponent {
    let mut out = e.clone();
    let mut total = 0i64;
    for i in 0..gens.rank() {
        total = total
            .checked_add(out.0[gens.x_index(i)])
            .expect("exponent overflow");
        out.0[gens.x_index(i)] = 0;
    }
    out.0[gens.x_index(0)] = total;
    out
}

fn specialize_polynomial(gens: GeneratorSet, p: &LaurentPolynomial) -> LaurentPolynomial {
    let mut out = LaurentPolynomial::zero(gens);
    for (e, c) in p.terms() {
        out.add_term(specialize_exponent(gens, e), c.clone());
    }
    out
}

fn specialize_rational(gens: GeneratorSet, f: &RationalFunction) -> RationalFunction {
    RationalFunction::new(
        specialize_polynomial(gens, f.numerator()),
        f.denominator()
            .iter()
            .map(|b| BinomialFactor::new(specialize_exponent(gens, b.exponent())))
            .collect(),
    )
}

/// Build the Mellin symbol: the alternating Weyl sum with one term per
/// group element, `|W|` terms exactly.
pub fn mellin_symbolic(params: &SpectralParams) -> MellinSymbol {
    let gens = params.generators();
    let terms = params
        .weyl()
        .elements
        .iter()
        .map(|w| {
            let d = d_factor(w, params);
            let d_exponent = d
                .terms()
                .next()
                .map(|(e, _)| e.clone())
                .expect("d_factor is a monomial");
            MellinTerm {
                sign: w.sign(),
                d_exponent,
                wnu_exponents: (0..params.datum().rank)
                    .map(|alpha| wnu_exponent(w, alpha, params))
                    .collect(),
            }
        })
        .collect();
    MellinSymbol {
        gens,
        prefactor: c_factor(params),
        terms,
    }
}

/// Substitute `x_alpha -> x` for every simple root (the diagonal
/// special value; `x` is `x_1` in the shared generator set).
pub fn specialize_diagonal(sym: &MellinSymbol) -> RationalFunction {
    let gens = sym.generators();
    let sum = sym
        .terms
        .iter()
        .fold(RationalFunction::zero(gens), |acc, t| {
            acc.add(&specialize_rational(gens, &t.to_rational_function(gens)))
        });
    sym.prefactor.mul(&sum)
}

/// The entire cofactor of the diagonal transform:
/// `C(nu) * sum_w sign(w) D(nu,w) * prod_{beta in Phi \ w^{-1}Delta}
/// (1 - x q^{-nu_beta})`.
///
/// The product runs over the complement of `w^{-1}Delta`: with
/// `(w nu)_alpha = nu_{w^{-1} alpha}` the Weyl-term denominators are
/// exactly the factors attached to `w^{-1}Delta`, so this complement
/// is what turns the factorization into an algebraic identity.
/// Returns an error if an x-dependent denominator survives reduction.
pub fn f_nu(params: &SpectralParams) -> Result<RationalFunction, MellinError> {
    let gens = params.generators();
    let all_roots = params.datum().all_roots();
    let simples: Vec<RootVector> = (0..params.datum().rank)
        .map(|i| {
            let mut v = vec![0i64; params.datum().rank];
            v[i] = 1;
            RootVector { coords: v }
        })
        .collect();

    let mut sum = LaurentPolynomial::zero(gens);
    for w in &params.weyl().elements {
        let image: Vec<RootVector> = simples
            .iter()
            .map(|a| w.apply_inverse_to_root(params.datum(), a))
            .collect();
        let mut prod = d_factor(w, params).scale(&int(w.sign()));
        for beta in &all_roots {
            if image.contains(beta) {
                continue;
            }
            let m = params
                .nu_exponent(beta)
                .add(&gens.unit_exponent(gens.x_index(0), 1));
            prod = prod.mul_binomial(&m);
        }
        sum = sum.add(&prod);
    }

    let value = c_factor(params)
        .mul(&RationalFunction::from_polynomial(sum))
        .reduce();
    if value.is_polynomial_in_x() {
        Ok(value)
    } else {
        Err(MellinError::NotEntire)
    }
}

/// `1 / (1 - x)`: the trivial Euler factor.
pub fn l_trivial(params: &SpectralParams) -> RationalFunction {
    let gens = params.generators();
    RationalFunction::geometric(gens, gens.unit_exponent(gens.x_index(0), 1))
}

/// The adjoint Euler factor for split data: the Cartan block
/// contributes `(1 - x)^{-rank}`, each root space
/// `1/(1 - x q^{-nu_beta})`.
pub fn l_adjoint(params: &SpectralParams) -> Result<RationalFunction, MellinError> {
    if params.datum().epsilon.iter().any(|&e| e != 0) {
        return Err(MellinError::EpsilonUnsupported);
    }
    let gens = params.generators();
    let mut den =
        vec![BinomialFactor::new(gens.unit_exponent(gens.x_index(0), 1)); params.datum().rank];
    for beta in params.datum().all_roots() {
        den.push(BinomialFactor::new(
            params
                .nu_exponent(&beta)
                .add(&gens.unit_exponent(gens.x_index(0), 1)),
        ));
    }
    Ok(RationalFunction::new(LaurentPolynomial::one(gens), den))
}

/// The normalized Euler factor `L(Ad) / L(triv)^rank`: the Cartan
/// block cancels, leaving the product over all roots.
pub fn l_pi(params: &SpectralParams) -> Result<RationalFunction, MellinError> {
    if params.datum().epsilon.iter().any(|&e| e != 0) {
        return Err(MellinError::EpsilonUnsupported);
    }
    let gens = params.generators();
    let den = params
        .datum()
        .all_roots()
        .iter()
        .map(|beta| {
            BinomialFactor::new(
                params
                    .nu_exponent(beta)
                    .add(&gens.unit_exponent(gens.x_index(0), 1)),
            )
        })
        .collect();
    Ok(RationalFunction::new(LaurentPolynomial::one(gens), den))
}

/// Outcome of the factorization check.
#[derive(Debug, Clone)]
pub struct FactorizationReport {
    pub series: String,
    pub rank: usize,
    pub epsilon: Vec<u8>,
    /// "full" for split data, "entirety" for the rank-one quasi-split
    /// case where only the entire-cofactor checks run.
    pub mode: String,
    pub passed: bool,
    pub notes: Vec<String>,
}

impl FactorizationReport {
    pub fn to_json(&self) -> Value {
        json!({
            "status": if self.passed { "pass" } else { "fail" },
            "series": self.series,
            "rank": self.rank,
            "epsilon": self.epsilon,
            "mode": self.mode,
            "notes": self.notes,
        })
    }
}

/// Check the diagonal factorization `I(s) = L_pi(s) * F_nu(s)` exactly
/// for split data; for rank-one quasi-split data check that the
/// cofactor is entire and the transform clears its Weyl denominator.
pub fn verify_factorization(params: &SpectralParams) -> Result<FactorizationReport, MellinError> {
    let datum = params.datum();
    let mut notes = vec![
        "cofactor product runs over the complement of w^{-1}Delta, with exponents \
         indexed by the root of each factor"
            .to_string(),
    ];
    let lhs = specialize_diagonal(&mellin_symbolic(params));

    if datum.epsilon.iter().all(|&e| e == 0) {
        let rhs = l_pi(params)?.mul(&f_nu(params)?);
        if !lhs.equals(&rhs) {
            let residual = lhs.sub(&rhs).reduce();
            return Err(MellinError::FactorizationFailed {
                residual: Box::new(residual),
            });
        }
        Ok(FactorizationReport {
            series: datum.series.name().to_string(),
            rank: datum.rank,
            epsilon: datum.epsilon.clone(),
            mode: "full".into(),
            passed: true,
            notes,
        })
    } else {
        // quasi-split rank one: entirety-only checks
        let cofactor = f_nu(params)?;
        debug_assert!(cofactor.is_polynomial_in_x());
        let gens = params.generators();
        let mut clear = lhs.clone();
        for b in lhs.denominator() {
            if b.involves_x(&gens) {
                clear = clear.mul(&RationalFunction::from_polynomial(b.expand(gens)));
            }
        }
        let clear = clear.reduce();
        if !clear.is_polynomial_in_x() {
            return Err(MellinError::FactorizationFailed {
                residual: Box::new(clear),
            });
        }
        notes.push("quasi-split case: full factorization unverified".to_string());
        Ok(FactorizationReport {
            series: datum.series.name().to_string(),
            rank: datum.rank,
            epsilon: datum.epsilon.clone(),
            mode: "entirety".into(),
            passed: true,
            notes,
        })
    }
}

/// Table of series coefficients `k -> c_k` over the lattice cone.
#[derive(Debug, Clone)]
pub struct CoefficientTable {
    gens: GeneratorSet,
    bound: i64,
    entries: BTreeMap<Vec<i64>, RationalFunction>,
}

impl CoefficientTable {
    pub fn generators(&self) -> GeneratorSet {
        self.gens
    }

    pub fn bound(&self) -> i64 {
        self.bound
    }

    pub fn get(&self, k: &[i64]) -> RationalFunction {
        self.entries
            .get(k)
            .cloned()
            .unwrap_or_else(|| RationalFunction::zero(self.gens))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<i64>, &RationalFunction)> {
        self.entries.iter()
    }

    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = self
            .entries
            .iter()
            .map(|(k, v)| json!({ "k": k, "value": v.to_json() }))
            .collect();
        json!({ "bound": self.bound, "entries": entries })
    }
}

#[cfg(test)]
mod tests {
    use crate::root_data::{Series, build_root_datum};
    use crate::whittaker_gl2::GL2Context;

    use super::*;

    fn params(series: Series, rank: usize) -> SpectralParams {
        SpectralParams::new(build_root_datum(series, rank, &vec![0; rank]).unwrap())
    }

    fn params_eps1() -> SpectralParams {
        SpectralParams::new(build_root_datum(Series::A, 1, &[1]).unwrap())
    }

    fn ymon(gens: GeneratorSet, i: usize, e: i64) -> Exponent {
        gens.unit_exponent(gens.y_index(i), e)
    }

    #[test]
    fn c_factor_rank_one_split() {
        // (1 - q^{-1} y) / (1 - y^{-1})
        let p = params(Series::A, 1);
        let g = p.generators();
        let mut qy = g.zero_exponent();
        qy.0[g.q_index()] = -1;
        qy.0[g.y_index(0)] = 1;
        let expected = RationalFunction::new(
            LaurentPolynomial::one(g).mul_binomial(&qy),
            vec![BinomialFactor::new(ymon(g, 0, -1))],
        );
        assert!(c_factor(&p).equals(&expected));
    }

    #[test]
    fn c_factor_rank_one_quasi_split() {
        // (1 + q^{-1} y)(1 - q^{-2} y) / (1 - y^{-2})
        let p = params_eps1();
        let g = p.generators();
        let mk = |qe: i64| {
            let mut e = g.zero_exponent();
            e.0[g.q_index()] = qe;
            e.0[g.y_index(0)] = 1;
            e
        };
        let num = LaurentPolynomial::one(g)
            .add(&LaurentPolynomial::monomial(g, mk(-1), rat(1, 1)))
            .mul_binomial(&mk(-2));
        let expected = RationalFunction::new(num, vec![BinomialFactor::new(ymon(g, 0, -2))]);
        assert!(c_factor(&p).equals(&expected));
    }

    #[test]
    fn c_factor_rank_two_is_product_of_rank_one_factors() {
        let p = params(Series::A, 2);
        let g = p.generators();
        let mut num = LaurentPolynomial::one(g);
        let mut den = Vec::new();
        for i in 0..2 {
            let mut qy = g.zero_exponent();
            qy.0[g.q_index()] = -1;
            qy.0[g.y_index(i)] = 1;
            num = num.mul_binomial(&qy);
            den.push(BinomialFactor::new(ymon(g, i, -1)));
        }
        assert!(c_factor(&p).equals(&RationalFunction::new(num, den)));
    }

    #[test]
    fn d_factor_examples() {
        let p = params(Series::A, 2);
        let g = p.generators();
        let identity = &p.weyl().elements[0];
        assert_eq!(d_factor(identity, &p), LaurentPolynomial::one(g));
        let longest = p.weyl().longest_element();
        let mut e = g.zero_exponent();
        e.0[g.y_index(0)] = -1;
        e.0[g.y_index(1)] = -1;
        assert_eq!(
            d_factor(longest, &p),
            LaurentPolynomial::monomial(g, e, rat(1, 1))
        );

        let p1 = params(Series::A, 1);
        let g1 = p1.generators();
        let s = &p1.weyl().elements[1];
        assert_eq!(
            d_factor(s, &p1),
            LaurentPolynomial::monomial(g1, ymon(g1, 0, -1), rat(1, 1))
        );
    }

    #[test]
    fn d_factor_quasi_split_doubles_exponent() {
        let p = params_eps1();
        let g = p.generators();
        let s = &p.weyl().elements[1];
        assert_eq!(
            d_factor(s, &p),
            LaurentPolynomial::monomial(g, ymon(g, 0, -2), rat(1, 1))
        );
    }

    #[test]
    fn wnu_examples() {
        let p = params(Series::A, 2);
        let g = p.generators();
        let identity = &p.weyl().elements[0];
        assert_eq!(wnu_exponent(identity, 0, &p), ymon(g, 0, 1));
        assert_eq!(wnu_exponent(identity, 1, &p), ymon(g, 1, 1));

        let s1 = p
            .weyl()
            .elements
            .iter()
            .find(|e| e.word == vec![0])
            .unwrap();
        // s1 coroot(a2) = coroot(a1) + coroot(a2) -> y1 y2
        assert_eq!(wnu_exponent(s1, 1, &p), ymon(g, 0, 1).add(&ymon(g, 1, 1)));

        let p1 = params(Series::A, 1);
        let g1 = p1.generators();
        let s = &p1.weyl().elements[1];
        assert_eq!(wnu_exponent(s, 0, &p1), ymon(g1, 0, -1));
    }

    #[test]
    fn nu_monomials_of_opposite_roots_cancel() {
        let p = params(Series::B, 2);
        for root in p.datum().all_roots() {
            let a = p.nu_exponent(&root);
            let b = p.nu_exponent(&root.neg());
            assert!(a.add(&b).is_zero());
        }
    }

    #[test]
    fn symbol_has_one_term_per_weyl_element() {
        for (s, r) in [(Series::A, 2), (Series::B, 2), (Series::G2, 2)] {
            let p = params(s, r);
            let sym = mellin_symbolic(&p);
            assert_eq!(sym.terms.len(), p.weyl().order());
        }
    }

    #[test]
    fn rank_one_symbol_matches_gl2_transform() {
        let p = params(Series::A, 1);
        let sym = mellin_symbolic(&p);
        let gl2 = GL2Context::new();
        assert!(sym.combined_value().equals(&gl2.mellin_gl2()));
    }

    #[test]
    fn rank_one_quasi_split_d_monomials() {
        let p = params_eps1();
        let sym = mellin_symbolic(&p);
        let g = p.generators();
        let ds: Vec<Exponent> = sym.terms.iter().map(|t| t.d_exponent.clone()).collect();
        assert!(ds.contains(&g.zero_exponent()));
        assert!(ds.contains(&ymon(g, 0, -2)));
    }

    #[test]
    fn specialization_commutes_with_evaluation() {
        let p = params(Series::A, 2);
        let sym = mellin_symbolic(&p);
        // q=3, y=(1/3,1/9), all x = 1/81
        let full = vec![int(3), rat(1, 81), rat(1, 81), rat(1, 3), rat(1, 9)];
        let spec = specialize_diagonal(&sym);
        let via_symbol = sym.eval_exact(&full).unwrap();
        let via_specialized = spec.eval_exact(&full).unwrap();
        assert_eq!(via_symbol, via_specialized);
    }

    #[test]
    fn f_nu_rank_one_closed_form() {
        // (1 - q^{-1} y)(1 + x)
        let p = params(Series::A, 1);
        let g = p.generators();
        let f = f_nu(&p).unwrap();
        let mut qy = g.zero_exponent();
        qy.0[g.q_index()] = -1;
        qy.0[g.y_index(0)] = 1;
        let expected = RationalFunction::from_polynomial(
            LaurentPolynomial::one(g).mul_binomial(&qy).mul(
                &LaurentPolynomial::one(g).add(&LaurentPolynomial::monomial(
                    g,
                    g.unit_exponent(g.x_index(0), 1),
                    rat(1, 1),
                )),
            ),
        );
        assert!(f.equals(&expected));
    }

    #[test]
    fn f_nu_quasi_split_is_entire() {
        let p = params_eps1();
        let f = f_nu(&p).unwrap();
        assert!(f.is_polynomial_in_x());
    }

    #[test]
    fn f_nu_rank_two_degree_bound() {
        // polynomial in x of degree <= |Phi| - |Delta| = 4
        let p = params(Series::A, 2);
        let f = f_nu(&p).unwrap();
        assert!(f.is_polynomial_in_x());
        let g = p.generators();
        let (lo, hi) = f.numerator().exponent_range(g.x_index(0)).unwrap();
        assert!(lo >= 0 && hi <= 4, "x-degree range {lo}..{hi}");
    }

    #[test]
    fn l_factors_rank_one() {
        let p = params(Series::A, 1);
        let g = p.generators();
        let x1 = g.unit_exponent(g.x_index(0), 1);
        assert!(l_trivial(&p).equals(&RationalFunction::geometric(g, x1.clone())));

        let adjoint = l_adjoint(&p).unwrap();
        let expected = RationalFunction::new(
            LaurentPolynomial::one(g),
            vec![
                BinomialFactor::new(x1.clone()),
                BinomialFactor::new(x1.add(&ymon(g, 0, 1))),
                BinomialFactor::new(x1.add(&ymon(g, 0, -1))),
            ],
        );
        assert!(adjoint.equals(&expected));
    }

    #[test]
    fn l_pi_has_one_factor_per_root() {
        let p = params(Series::A, 2);
        assert_eq!(l_pi(&p).unwrap().denominator().len(), 6);
    }

    #[test]
    fn l_factors_reject_quasi_split() {
        let p = params_eps1();
        assert!(matches!(
            l_adjoint(&p).unwrap_err(),
            MellinError::EpsilonUnsupported
        ));
        assert!(matches!(l_pi(&p), Err(MellinError::EpsilonUnsupported)));
    }

    #[test]
    fn factorization_rank_one_and_two() {
        for (s, r) in [(Series::A, 1), (Series::A, 2), (Series::B, 2)] {
            let p = params(s, r);
            let report = verify_factorization(&p).unwrap();
            assert!(report.passed, "{}{r}", s.name());
            assert_eq!(report.mode, "full");
        }
    }

    #[test]
    fn factorization_quasi_split_entirety_mode() {
        let p = params_eps1();
        let report = verify_factorization(&p).unwrap();
        assert!(report.passed);
        assert_eq!(report.mode, "entirety");
    }

    #[test]
    fn corrupt_sign_breaks_factorization() {
        let p = params(Series::A, 2);
        let mut sym = mellin_symbolic(&p);
        sym.terms[3].sign = -sym.terms[3].sign;
        let lhs = specialize_diagonal(&sym);
        let rhs = l_pi(&p).unwrap().mul(&f_nu(&p).unwrap());
        assert!(!lhs.equals(&rhs));
    }

    #[test]
    fn dropping_signs_breaks_factorization() {
        let p = params(Series::A, 2);
        let mut sym = mellin_symbolic(&p);
        for t in &mut sym.terms {
            t.sign = 1;
        }
        let lhs = specialize_diagonal(&sym);
        let rhs = l_pi(&p).unwrap().mul(&f_nu(&p).unwrap());
        assert!(!lhs.equals(&rhs));
    }

    #[test]
    fn coefficients_match_gl2_values() {
        let p = params(Series::A, 1);
        let sym = mellin_symbolic(&p);
        let gl2 = GL2Context::new();
        let g = p.generators();
        for k in 0..=10 {
            // c_k = q^k W(k)
            let qk = RationalFunction::monomial(g, g.unit_exponent(g.q_index(), k), rat(1, 1));
            let expected = qk.mul(&gl2.whittaker_value_closed(k));
            assert!(sym.coefficient_at(&[k]).equals(&expected), "k = {k}");
        }
    }

    #[test]
    fn coefficients_vanish_off_the_cone() {
        let p = params(Series::A, 2);
        let sym = mellin_symbolic(&p);
        for k in [[-1, 0], [0, -3], [-2, -2], [-1, 5]] {
            assert!(sym.coefficient_at(&k).is_zero(), "{k:?}");
        }
    }

    #[test]
    fn coefficient_table_agrees_with_series_expansion() {
        // two routes: termwise closed form vs monolithic expansion
        let p = params(Series::A, 2);
        let sym = mellin_symbolic(&p);
        let table = sym.coefficients(3);
        let series = crate::laurent::series_in_x(&sym.combined_value(), 3).unwrap();
        for (k, c) in table.iter() {
            assert!(series.coefficient(k).equals(c), "{k:?}");
        }
        for (k, c) in series.iter() {
            assert!(table.get(k).equals(c), "{k:?}");
        }
    }

    #[test]
    fn combined_denominator_is_union_of_term_factors() {
        let p = params(Series::A, 2);
        let sym = mellin_symbolic(&p);
        let combined = sym.combined_value();
        let mut expected: std::collections::BTreeSet<BinomialFactor> =
            sym.prefactor.denominator().iter().cloned().collect();
        for t in &sym.terms {
            expected.extend(t.denominators(sym.generators()));
        }
        let got: std::collections::BTreeSet<BinomialFactor> =
            combined.denominator().iter().cloned().collect();
        assert_eq!(got, expected);
    }
}
