//! Two independent validators of the finite-sum formula against the integral
//! definition of `J_k`.
//!
//! - [`exact_oracle`]: expands the squared Vandermonde factor into monomials
//!   and integrates term by term against the product Beta weight, entirely in
//!   exact rationals (small dimensions only)
//! - [`mc_oracle`]: an importance-sampling estimator — i.i.d. Beta(a, b)
//!   coordinates reweighted by the squared Vandermonde — with a delta-method
//!   standard error
//!
//! The Monte Carlo identity is `J_k = E[x1^k D] / E[D]` where
//! `D = prod_{i<j} (x_i - x_j)^2` and the expectation is over independent
//! Beta(a, b) coordinates: the `1/N!` normalization and the Beta constants of
//! the integrand cancel in the quotient. The estimator is unit-tested against
//! [`exact_oracle`] before the acceptance suite relies on it.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma};
use rayon::prelude::*;
use thiserror::Error;

use crate::moment::JkParams;
use crate::rational::{pochhammer, Rational};

/// Largest dimension the exact expansion accepts; the collected term count
/// grows combinatorially beyond this.
pub const MAX_EXACT_DIMENSION: u32 = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("exact oracle supports N <= {MAX_EXACT_DIMENSION}, got {0}")]
    TooLarge(u32),
    #[error("parameters are not representable as finite f64 values")]
    NotRepresentable,
    #[error("all Monte Carlo weights vanished or overflowed; parameters too extreme")]
    DegenerateWeights,
}

/// One collected monomial `coefficient * x1^{e1} ... xN^{eN}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialTerm {
    pub coefficient: BigInt,
    pub exponents: Vec<u32>,
}

/// Fully expand `prod_{i<j} (x_i - x_j)^2` into collected monomials with
/// integer coefficients, in deterministic (lexicographic) order.
///
/// Every term has total degree `N(N-1)`; zero coefficients are dropped.
pub fn vandermonde_sq_expand(n: u32) -> Result<Vec<MonomialTerm>, OracleError> {
    assert!(n >= 1, "dimension must be positive");
    if n > MAX_EXACT_DIMENSION {
        return Err(OracleError::TooLarge(n));
    }
    let n = n as usize;
    let mut terms: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
    terms.insert(vec![0; n], BigInt::from(1));
    for i in 0..n {
        for j in (i + 1)..n {
            // multiply by (x_i - x_j)^2 = x_i^2 - 2 x_i x_j + x_j^2
            let mut next: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
            for (expo, coeff) in &terms {
                for (factor, bump) in [
                    (1, [(i, 2u32)].as_slice()),
                    (-2, [(i, 1), (j, 1)].as_slice()),
                    (1, [(j, 2)].as_slice()),
                ] {
                    let mut e = expo.clone();
                    for &(idx, p) in bump {
                        e[idx] += p;
                    }
                    *next.entry(e).or_insert_with(BigInt::zero) += coeff * factor;
                }
            }
            next.retain(|_, c| !c.is_zero());
            terms = next;
        }
    }
    Ok(terms
        .into_iter()
        .map(|(exponents, coefficient)| MonomialTerm { coefficient, exponents })
        .collect())
}

/// The `m`-th moment of Beta(a, b): `E[x^m] = (a)_m / (a+b)_m`.
fn beta_moment(a: &Rational, b: &Rational, m: u32) -> Rational {
    pochhammer(a, m) / pochhammer(&(a + b), m)
}

/// `J_k` computed directly from the integral definition: expand the squared
/// Vandermonde, attach `x1^k`, and integrate monomial by monomial against
/// independent Beta(a, b) weights. Exact, and independent of every
/// hypergeometric route.
pub fn exact_oracle(p: &JkParams) -> Result<Rational, OracleError> {
    let terms = vandermonde_sq_expand(p.dimension())?;
    let (a, b) = (p.a(), p.b());
    let mut numer = Rational::zero();
    let mut denom = Rational::zero();
    for term in &terms {
        let coeff = Rational::from_bigint(term.coefficient.clone());
        let mut with_moment = beta_moment(a, b, term.exponents[0] + p.order());
        let mut without = beta_moment(a, b, term.exponents[0]);
        for &e in &term.exponents[1..] {
            let factor = beta_moment(a, b, e);
            with_moment = with_moment * &factor;
            without = without * factor;
        }
        numer = numer + &coeff * with_moment;
        denom = denom + coeff * without;
    }
    assert!(!denom.is_zero(), "normalization integral vanished for valid parameters");
    Ok(numer / denom)
}

/// A Monte Carlo estimate of `J_k`, reproducible bit-exactly from
/// `(seed, samples, params)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub samples: u64,
    pub seed: u64,
}

fn force_single_thread() -> bool {
    static FLAG: OnceLock<bool> = OnceLock::new();
    *FLAG.get_or_init(|| {
        std::env::var_os("SELBERG_HYP_SINGLE_THREAD").is_some_and(|v| v != "0" && !v.is_empty())
    })
}

/// Estimate `J_k = E[x1^k D] / E[D]` by importance sampling.
///
/// Coordinates are drawn i.i.d. Beta(a, b) by the gamma-ratio method
/// `G_a / (G_a + G_b)` with Marsaglia-Tsang gamma variates. Each sample index
/// owns its own counter-derived ChaCha8 stream (same key, stream = index), so
/// the estimate does not depend on how samples are sharded across threads;
/// the reduction always runs in sample-index order. Set
/// `SELBERG_HYP_SINGLE_THREAD=1` to disable the thread pool (the result is
/// identical either way).
///
/// The standard error is the first-order delta-method value for a ratio of
/// sample means; at `k = 0` the numerator and denominator coincide and the
/// estimate is exactly 1 with zero standard error.
pub fn mc_oracle(p: &JkParams, samples: u64, seed: u64) -> Result<McEstimate, OracleError> {
    assert!(samples >= 1000, "mc_oracle needs at least 1000 samples");
    let a = p.a().to_f64().ok_or(OracleError::NotRepresentable)?;
    let b = p.b().to_f64().ok_or(OracleError::NotRepresentable)?;
    let n = p.dimension() as usize;
    let k = p.order() as i32;
    let gamma_a = Gamma::new(a, 1.0).map_err(|_| OracleError::NotRepresentable)?;
    let gamma_b = Gamma::new(b, 1.0).map_err(|_| OracleError::NotRepresentable)?;
    let base = ChaCha8Rng::seed_from_u64(seed);

    let draw = |index: u64| -> (f64, f64) {
        let mut rng = base.clone();
        rng.set_stream(index);
        let mut coords = vec![0.0f64; n];
        for x in coords.iter_mut() {
            let ga: f64 = gamma_a.sample(&mut rng);
            let gb: f64 = gamma_b.sample(&mut rng);
            *x = ga / (ga + gb);
        }
        let mut weight = 1.0;
        for i in 0..n {
            for j in (i + 1)..n {
                let d = coords[i] - coords[j];
                weight *= d * d;
            }
        }
        (coords[0].powi(k) * weight, weight)
    };

    let pairs: Vec<(f64, f64)> = if force_single_thread() {
        (0..samples).map(draw).collect()
    } else {
        (0..samples).into_par_iter().map(draw).collect()
    };

    let mut sum_f = 0.0;
    let mut sum_w = 0.0;
    for &(f, w) in &pairs {
        sum_f += f;
        sum_w += w;
    }
    if !(sum_w.is_finite() && sum_f.is_finite()) || sum_w == 0.0 {
        return Err(OracleError::DegenerateWeights);
    }
    let ratio = sum_f / sum_w;
    let mean_w = sum_w / samples as f64;
    // delta method: Var(R) ~ Var(f - R w) / (n E[w]^2)
    let mut residual_sq = 0.0;
    for &(f, w) in &pairs {
        let r = f - ratio * w;
        residual_sq += r * r;
    }
    let std_error =
        (residual_sq / (samples as f64 * (samples - 1) as f64)).sqrt() / mean_w.abs();
    Ok(McEstimate { mean: ratio, std_error, samples, seed })
}
