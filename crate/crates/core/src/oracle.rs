//! Independent verification: exact truncated lattice sums against
//! closed forms with analytic geometric tail bounds, the rank-one
//! integral/closed-form cross check, and degree-growth probes.
//!
//! There is no floating point and no epsilon anywhere: a truncation
//! report passes iff `|closed - partial| <= bound` holds in exact
//! rational arithmetic, where the bound is the triangle-inequality
//! tail of the geometric series that the expansion actually is.

use num_traits::{One, Signed, Zero};
use serde_json::{Value, json};
use thiserror::Error;

use crate::laurent::{GeneratorSet, LaurentError};
use crate::mellin::{MellinSymbol, SpectralParams, mellin_symbolic};
use crate::whittaker_gl2::GL2Context;
use crate::{Rat, int, rat};

/// Errors from oracle runs.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    /// A geometric ratio `|x_alpha q^{-(w nu)_alpha}|` is >= 1, so the
    /// lattice sum does not converge at the assignment.
    #[error("geometric ratio at least 1; lattice sum diverges")]
    RatioTooLarge,
    #[error(transparent)]
    Laurent(#[from] LaurentError),
}

/// An exact evaluation point: one nonzero rational per generator, with
/// `q > 1`.
#[derive(Debug, Clone)]
pub struct Assignment {
    values: Vec<Rat>,
}

impl Assignment {
    pub fn new(gens: GeneratorSet, values: Vec<Rat>) -> Result<Self, LaurentError> {
        assert_eq!(values.len(), gens.count(), "one value per generator");
        let names = gens.names();
        for (i, v) in values.iter().enumerate() {
            if v.is_zero() {
                return Err(LaurentError::ZeroAssignment(names[i].clone()));
            }
        }
        assert!(
            values[gens.q_index()] > Rat::one(),
            "q must exceed 1 for oracle runs"
        );
        Ok(Assignment { values })
    }

    pub fn values(&self) -> &[Rat] {
        &self.values
    }
}

/// Result of comparing a truncated lattice sum against the closed
/// form. Passing means `|closed - partial| <= bound` exactly.
#[derive(Debug, Clone)]
pub struct TruncationReport {
    pub truncation_order: i64,
    pub partial: Rat,
    pub closed: Rat,
    pub bound: Rat,
    pub passed: bool,
}

impl TruncationReport {
    pub fn to_json(&self) -> Value {
        json!({
            "kind": "truncated_sum",
            "K": self.truncation_order,
            "partial": self.partial.to_string(),
            "closed": self.closed.to_string(),
            "bound": self.bound.to_string(),
            "pass": self.passed,
        })
    }
}

/// Evaluate `|x_alpha q^{-(w nu)_alpha}|` for every term and simple
/// root; these are the geometric ratios of the expansion.
fn term_ratios(sym: &MellinSymbol, values: &[Rat]) -> Result<Vec<Vec<Rat>>, OracleError> {
    let gens = sym.generators();
    let mut out = Vec::with_capacity(sym.terms.len());
    for t in &sym.terms {
        let mut ratios = Vec::with_capacity(gens.rank());
        for (alpha, m) in t.wnu_exponents.iter().enumerate() {
            let mut rho = values[gens.x_index(alpha)].abs();
            for (i, &e) in m.0.iter().enumerate() {
                if e != 0 {
                    rho *= crate::laurent::rat_pow(&values[i], e).abs();
                }
            }
            if rho >= Rat::one() {
                return Err(OracleError::RatioTooLarge);
            }
            ratios.push(rho);
        }
        out.push(ratios);
    }
    Ok(out)
}

/// Enumerate the lattice cone `k >= 0`, `|k| <= bound` and fold `f`
/// over it.
fn fold_cone<F: FnMut(&[i64])>(rank: usize, bound: i64, mut f: F) {
    let mut k = vec![0i64; rank];
    loop {
        f(&k);
        // odometer with total-degree cap
        let mut i = 0;
        loop {
            if i == rank {
                return;
            }
            k[i] += 1;
            if k.iter().sum::<i64>() <= bound {
                break;
            }
            k[i] = 0;
            i += 1;
        }
    }
}

/// Compare the truncated series `sum_{|k| <= K} c_k x^k` against the
/// exact closed-form value, with the analytic tail bound
/// `sum_w |C D_w| (prod 1/(1-rho) - partial geometric sum)`.
pub fn truncated_mellin_sum(
    params: &SpectralParams,
    assignment: &Assignment,
    truncation_order: i64,
) -> Result<TruncationReport, OracleError> {
    let sym = mellin_symbolic(params);
    let gens = sym.generators();
    let values = assignment.values();
    let ratios = term_ratios(&sym, values)?;

    let closed = sym.eval_exact(values)?;

    // partial sum through the coefficient table
    let mut partial = Rat::zero();
    let mut partial_err: Option<LaurentError> = None;
    fold_cone(gens.rank(), truncation_order, |k| {
        if partial_err.is_some() {
            return;
        }
        let c = sym.coefficient_at(k);
        if c.is_zero() {
            return;
        }
        match c.eval_exact(values) {
            Ok(v) => {
                let mut x_pow = Rat::one();
                for (i, &ki) in k.iter().enumerate() {
                    x_pow *= crate::laurent::rat_pow(&values[gens.x_index(i)], ki);
                }
                partial += v * x_pow;
            }
            Err(e) => partial_err = Some(e),
        }
    });
    if let Some(e) = partial_err {
        return Err(OracleError::Laurent(e));
    }

    // tail bound per term: full product minus the truncated cone sum,
    // in absolute ratios
    let prefactor_abs = sym.prefactor.eval_exact(values)?.abs();
    let mut bound = Rat::zero();
    for (t, rhos) in sym.terms.iter().zip(&ratios) {
        let mut d_abs = Rat::one();
        for (i, &e) in t.d_exponent.0.iter().enumerate() {
            if e != 0 {
                d_abs *= crate::laurent::rat_pow(&values[i], e).abs();
            }
        }
        let full: Rat = rhos
            .iter()
            .map(|r| (Rat::one() - r).recip())
            .product();
        let mut cone = Rat::zero();
        fold_cone(gens.rank(), truncation_order, |k| {
            let mut term = Rat::one();
            for (i, &ki) in k.iter().enumerate() {
                term *= crate::laurent::rat_pow(&rhos[i], ki);
            }
            cone += term;
        });
        bound += prefactor_abs.clone() * d_abs * (full - cone);
    }

    let passed = (closed.clone() - partial.clone()).abs() <= bound;
    Ok(TruncationReport {
        truncation_order,
        partial,
        closed,
        bound,
        passed,
    })
}

/// Report of the rank-one integral/closed-form comparison.
#[derive(Debug, Clone)]
pub struct CrossOracleReport {
    pub k_max: i64,
    /// Valuations where the two routes disagree (empty on pass).
    pub mismatches: Vec<i64>,
    /// Negative valuations where either route fails to vanish.
    pub support_violations: Vec<i64>,
}

impl CrossOracleReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.support_violations.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "kind": "gl2_cross_oracle",
            "k_max": self.k_max,
            "mismatches": self.mismatches,
            "support_violations": self.support_violations,
            "pass": self.passed(),
        })
    }
}

/// Compare the rank-one Whittaker values from the defining integral
/// and from the closed form, symbolically, for `0 <= k <= k_max` and
/// on the negative range `-20 <= k < 0`.
pub fn gl2_cross_oracle(k_max: i64) -> CrossOracleReport {
    let ctx = GL2Context::new();
    let mut mismatches = Vec::new();
    let mut support_violations = Vec::new();
    for k in 0..=k_max {
        if !ctx
            .whittaker_value_integral(k)
            .equals(&ctx.whittaker_value_closed(k))
        {
            mismatches.push(k);
        }
    }
    for k in -20..0 {
        if !ctx.whittaker_value_integral(k).is_zero()
            || !ctx.whittaker_value_closed(k).is_zero()
        {
            support_violations.push(k);
        }
    }
    CrossOracleReport {
        k_max,
        mismatches,
        support_violations,
    }
}

/// Degree spans of coefficient numerators along one simple direction.
#[derive(Debug, Clone)]
pub struct GrowthReport {
    pub direction: usize,
    /// Per step `k`: the span of each generator's exponent in the
    /// numerator of the coefficient at `k * e_direction`.
    pub spans: Vec<Vec<i64>>,
    /// Earliest index from which every tracked span sequence has
    /// vanishing second differences, if any.
    pub linear_from: Option<usize>,
}

impl GrowthReport {
    pub fn to_json(&self) -> Value {
        json!({
            "kind": "growth_probe",
            "direction": self.direction,
            "spans": self.spans,
            "linear_from": self.linear_from,
        })
    }
}

/// Probe the growth of coefficient numerators along `k * e_direction`
/// for `0 <= k <= k_max`: moderate growth shows up as degree spans
/// that are eventually linear in `k`.
pub fn growth_probe(params: &SpectralParams, direction: usize, k_max: i64) -> GrowthReport {
    let sym = mellin_symbolic(params);
    let gens = sym.generators();
    assert!(direction < gens.rank());
    let tracked: Vec<usize> = std::iter::once(gens.q_index())
        .chain((0..gens.rank()).map(|i| gens.y_index(i)))
        .collect();

    let mut spans = Vec::new();
    for k in 0..=k_max {
        let mut point = vec![0i64; gens.rank()];
        point[direction] = k;
        let c = sym.coefficient_at(&point);
        spans.push(
            tracked
                .iter()
                .map(|&g| c.numerator().exponent_span(g))
                .collect::<Vec<i64>>(),
        );
    }

    let linear_from = (0..spans.len().saturating_sub(2))
        .find(|&start| {
            tracked.iter().enumerate().all(|(t, _)| {
                (start..spans.len() - 2).all(|k| {
                    spans[k + 2][t] - 2 * spans[k + 1][t] + spans[k][t] == 0
                })
            })
        });

    GrowthReport {
        direction,
        spans,
        linear_from,
    }
}

/// Deterministic 64-bit generator (splitmix64); stable across
/// platforms and releases, which keeps every seeded suite
/// reproducible.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in `0..n`.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0);
        self.next_u64() % n
    }

    /// Uniform in `lo..=hi`.
    pub fn range_i64(&mut self, lo: i64, hi: i64) -> i64 {
        assert!(lo <= hi);
        lo + self.below((hi - lo + 1) as u64) as i64
    }
}

/// Draw an assignment whose geometric ratios are all at most 1/2: `q`
/// a small prime, `y_i` modest powers of `1/q`, and each `x_i` scaled
/// below the reciprocal of twice the largest twist monomial.
pub fn random_assignment(params: &SpectralParams, rng: &mut SplitMix64) -> Assignment {
    let sym = mellin_symbolic(params);
    let gens = params.generators();
    let q = int([2i64, 3, 5, 7][rng.below(4) as usize]);

    let mut values = vec![Rat::one(); gens.count()];
    values[gens.q_index()] = q.clone();
    for i in 0..gens.rank() {
        // nonzero exponent keeps y off 1, where the prefactor
        // denominator would vanish
        let e = [-2i64, -1, 1, 2][rng.below(4) as usize];
        values[gens.y_index(i)] = crate::laurent::rat_pow(&q, -e);
    }

    // largest |q^{-(w nu)_alpha}| over all terms, with x normalized out
    let mut max_twist = Rat::zero();
    for t in &sym.terms {
        for m in &t.wnu_exponents {
            let mut v = Rat::one();
            for (i, &e) in m.0.iter().enumerate() {
                if e != 0 {
                    v *= crate::laurent::rat_pow(&values[i], e).abs();
                }
            }
            if v > max_twist {
                max_twist = v;
            }
        }
    }
    for i in 0..gens.rank() {
        let extra = rng.range_i64(1, 3);
        values[gens.x_index(i)] =
            (rat(1, 2) / max_twist.clone()) * crate::laurent::rat_pow(&rat(1, 2), extra);
    }
    Assignment::new(gens, values).expect("constructed nonzero")
}
