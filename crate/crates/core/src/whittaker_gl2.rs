//! The rank-one (SL2) unramified Whittaker function and its Mellin
//! transform, computed two independent ways.
//!
//! Conventions: generators `(q, x, y)` with `y = q^{-nu}` and
//! `x = q^{-s}`; additive measure `vol(O) = 1`, multiplicative measure
//! `vol(O^x) = 1` (so integrals over `F^x` are sums over valuations);
//! the additive character has conductor exactly `O` (trivial on `O`,
//! nontrivial on `p^{-1}O`). With these normalizations the value at the
//! identity is `1 - q^{-1}y` and the transform collapses to
//! `(1 - q^{-1}y)(1 + x) / ((1 - xy)(1 - x y^{-1}))`.

use std::collections::BTreeMap;

use crate::laurent::{BinomialFactor, GeneratorSet, LaurentPolynomial, RationalFunction};
use crate::rat;

/// Fixed rank-one context: generators and measure normalizations.
#[derive(Debug, Clone, Copy)]
pub struct GL2Context {
    gens: GeneratorSet,
}

impl GL2Context {
    pub fn new() -> Self {
        GL2Context {
            gens: GeneratorSet::new(1),
        }
    }

    pub fn generators(&self) -> GeneratorSet {
        self.gens
    }

    fn monomial(&self, q: i64, y: i64) -> LaurentPolynomial {
        let mut e = self.gens.zero_exponent();
        e.0[self.gens.q_index()] = q;
        e.0[self.gens.y_index(0)] = y;
        LaurentPolynomial::monomial(self.gens, e, rat(1, 1))
    }

    fn x_exponent(&self, e: i64) -> crate::laurent::Exponent {
        self.gens.unit_exponent(self.gens.x_index(0), e)
    }

    fn y_exponent(&self, e: i64) -> crate::laurent::Exponent {
        self.gens.unit_exponent(self.gens.y_index(0), e)
    }

    /// Value of the class-one vector on the big cell at a unipotent
    /// element whose off-diagonal entry has valuation `v`: it is 1 on
    /// the integral range and `|entry|^{-nu-1} = q^v y^{-v}` outside.
    pub fn f0_on_cell(&self, v: i64) -> LaurentPolynomial {
        if v >= 0 {
            LaurentPolynomial::one(self.gens)
        } else {
            self.monomial(v, -v)
        }
    }

    /// `int_{p^m O} eta(-t) dt` for the conductor-`O` character: the
    /// ideal measure `q^{-m}` when the character is trivial there,
    /// zero otherwise.
    pub fn eta_ideal_integral(&self, m: i64) -> LaurentPolynomial {
        if m >= 0 {
            self.monomial(-m, 0)
        } else {
            LaurentPolynomial::zero(self.gens)
        }
    }

    /// Whittaker value at valuation `k` from the defining integral,
    /// decomposed over the ideal filtration. The sum is finite because
    /// the ideal integrals vanish for negative arguments.
    ///
    /// On the shell of valuation `2k - j` the big-cell value is
    /// `|t|^{nu+1} |x|^{-nu-1} = |t|^{-nu-1} q^{-j(nu+1)}`, so every
    /// summand carries the common prefactor `|t|^{-nu-1} = q^k y^{-k}`.
    pub fn whittaker_value_integral(&self, k: i64) -> RationalFunction {
        // |t|^{-nu-1} * [ I(2k) + sum_{j=1}^{2k+1}
        //   q^{-j} y^j * (I(2k-j) - I(2k-j+1)) ]
        let mut shells = self.eta_ideal_integral(2 * k);
        let mut j = 1;
        while j <= 2 * k + 1 {
            let weight = self.monomial(-j, j);
            let inner = self
                .eta_ideal_integral(2 * k - j)
                .sub(&self.eta_ideal_integral(2 * k - j + 1));
            shells = shells.add(&weight.mul(&inner));
            j += 1;
        }
        RationalFunction::from_polynomial(self.monomial(k, -k).mul(&shells))
    }

    /// Whittaker value at valuation `k` from the closed form
    /// `(1 - q^{-1}y)/(1 - y) * q^{-k}(y^{-k} - y^{k+1})`, zero for
    /// `k < 0`.
    pub fn whittaker_value_closed(&self, k: i64) -> RationalFunction {
        if k < 0 {
            return RationalFunction::zero(self.gens);
        }
        let prefactor_num =
            LaurentPolynomial::one(self.gens).sub(&self.monomial(-1, 1)); // 1 - q^{-1} y
        let spread = self.monomial(-k, -k).sub(&self.monomial(-k, k + 1));
        RationalFunction::new(
            prefactor_num.mul(&spread),
            vec![BinomialFactor::new(self.y_exponent(1))],
        )
        .reduce()
    }

    /// The rank-one Mellin transform `sum_{k>=0} W(k) q^k x^k`,
    /// assembled by exact geometric summation of the closed form.
    pub fn mellin_gl2(&self) -> RationalFunction {
        // sum_k x^k (y^{-k} - y^{k+1}) = 1/(1 - x y^{-1}) - y/(1 - x y)
        let m_down = self.x_exponent(1).add(&self.y_exponent(-1));
        let m_up = self.x_exponent(1).add(&self.y_exponent(1));
        let geo_down = RationalFunction::geometric(self.gens, m_down);
        let geo_up = RationalFunction::new(
            self.monomial(0, 1),
            vec![BinomialFactor::new(m_up)],
        );
        let spread = geo_down.sub(&geo_up);

        let prefactor = RationalFunction::new(
            LaurentPolynomial::one(self.gens).sub(&self.monomial(-1, 1)),
            vec![BinomialFactor::new(self.y_exponent(1))],
        );
        prefactor.mul(&spread).reduce()
    }

    /// Table of Whittaker values `k -> W(k)` for `0 <= k <= k_max`.
    pub fn whittaker_table(&self, k_max: i64) -> BTreeMap<i64, RationalFunction> {
        (0..=k_max)
            .map(|k| (k, self.whittaker_value_closed(k)))
            .collect()
    }
}

impl Default for GL2Context {
    fn default() -> Self {
        Self::new()
    }
}
