//! The large-dimension limit of `J_k` along `a = a1*N`, `b = b1*N`, by two
//! equivalent closed formulas, plus exact convergence studies.
//!
//! Provides:
//! - [`LimitParams`]: the growth rates `a1, b1 >= 0` and the order `k >= 1`
//! - [`limit_theorem`]: the double sum over `(m, l)` with the powers of `a1`
//!   regrouped so `a1 = 0` is evaluable
//! - [`limit_corollary`]: the equivalent double sum over `(j, i)`
//! - [`convergence_table`]: exact rows `(N, a, b, J_k, limit, |error|)` along
//!   a schedule of dimensions

use thiserror::Error;

use crate::moment::{self, JkParams, ParamError};
use crate::rational::{binomial, factorial, Rational};

/// Parameters of the limit regime: `a ~ a1*N`, `b ~ b1*N` with `a1, b1 >= 0`
/// and moment order `k >= 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimitParams {
    a1: Rational,
    b1: Rational,
    k: u32,
}

/// Validation and schedule failures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AsymptoticsError {
    #[error("growth rate a1 must be nonnegative, got {0}")]
    InvalidA1(Rational),
    #[error("growth rate b1 must be nonnegative, got {0}")]
    InvalidB1(Rational),
    #[error("moment order k must be at least 1")]
    InvalidK,
    #[error("schedule entry N = {n} gives invalid parameters: {source}")]
    InvalidSchedule { n: u32, source: ParamError },
}

impl LimitParams {
    pub fn new(a1: Rational, b1: Rational, k: u32) -> Result<Self, AsymptoticsError> {
        if a1.is_negative() {
            return Err(AsymptoticsError::InvalidA1(a1));
        }
        if b1.is_negative() {
            return Err(AsymptoticsError::InvalidB1(b1));
        }
        if k == 0 {
            return Err(AsymptoticsError::InvalidK);
        }
        Ok(LimitParams { a1, b1, k })
    }

    pub fn a1(&self) -> &Rational {
        &self.a1
    }

    pub fn b1(&self) -> &Rational {
        &self.b1
    }

    pub fn order(&self) -> u32 {
        self.k
    }
}

/// One record of a convergence study: exact `J_k` at `(N, a1*N, b1*N)`
/// against the limit value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergenceRow {
    pub n: u32,
    pub a: Rational,
    pub b: Rational,
    pub jk: Rational,
    pub limit: Rational,
    pub abs_error: Rational,
}

/// The limit of `J_k` as the double sum over `m` and `l`:
///
/// ```text
/// sum_{m=0}^{k-1} sum_{l=0}^{k-m-1} (-1)^{k-m-1+l} C(k-1, m) C(k-m-1, l)
///     (k+l-1)! (m+1)! / ((k-1)! (m+l+1)!)
///     a1^{k-m-l-1} (a1+1)^{m+l+1} (a1+b1+1)^l / (a1+b1+2)^{k+l}
/// ```
///
/// The powers of `a1` are regrouped into the single exponent `k-m-l-1 >= 0`
/// (an exact algebraic identity on the raw form, which nests
/// `((a1+1)/a1)^{m+1}` and would divide by zero at `a1 = 0`); with the
/// convention `0^0 = 1` the formula is total on `a1 >= 0`.
pub fn limit_theorem(lp: &LimitParams) -> Rational {
    let k = lp.k;
    let (a1, b1) = (&lp.a1, &lp.b1);
    let a1p1 = a1 + 1;
    let abp1 = a1 + b1 + 1;
    let abp2 = a1 + b1 + 2;
    let mut total = Rational::zero();
    for m in 0..k {
        for l in 0..(k - m) {
            let sign = if (k - m - 1 + l).is_multiple_of(2) { 1 } else { -1 };
            let combinatorial = binomial(i64::from(k) - 1, i64::from(m))
                * binomial(i64::from(k - m) - 1, i64::from(l))
                * factorial(k + l - 1)
                * factorial(m + 1)
                / (factorial(k - 1) * factorial(m + l + 1));
            let powers = a1.pow(k - m - l - 1) * a1p1.pow(m + l + 1) * abp1.pow(l)
                / abp2.pow(k + l);
            let term = combinatorial * powers;
            total = if sign > 0 { total + term } else { total - term };
        }
    }
    total
}

/// The limit of `J_k` as the equivalent double sum over `j` and `i`:
///
/// ```text
/// (1/k) sum_{j=0}^{k-1} (-1)^j C(k+j-1, j) (a1+1)^{j+1} / (a1+b1+2)^{k+j}
///        sum_{i=0}^{k-j-1} C(k, i) C(k, i+j+1) (a1+1)^i
/// ```
pub fn limit_corollary(lp: &LimitParams) -> Rational {
    let k = lp.k;
    let a1p1 = &lp.a1 + 1;
    let abp2 = &lp.a1 + &lp.b1 + 2;
    let mut total = Rational::zero();
    for j in 0..k {
        let mut inner = Rational::zero();
        for i in 0..(k - j) {
            inner = inner
                + binomial(i64::from(k), i64::from(i))
                    * binomial(i64::from(k), i64::from(i + j + 1))
                    * a1p1.pow(i);
        }
        let term = binomial(i64::from(k + j) - 1, i64::from(j)) * a1p1.pow(j + 1)
            / abp2.pow(k + j)
            * inner;
        total = if j % 2 == 0 { total + term } else { total - term };
    }
    total / Rational::from_int(i64::from(k))
}

/// Exact convergence rows for `J_k` at `(N, a1*N, b1*N)` over a schedule of
/// dimensions, against [`limit_corollary`].
///
/// Requires `a1 > 0` and `b1 > 0` (otherwise `a = a1*N` or `b = b1*N` is not
/// a valid weight exponent); rows are produced in schedule order.
pub fn convergence_table(
    lp: &LimitParams,
    schedule: &[u32],
) -> Result<Vec<ConvergenceRow>, AsymptoticsError> {
    let limit = limit_corollary(lp);
    let mut rows = Vec::with_capacity(schedule.len());
    for &n in schedule {
        let a = &lp.a1 * i64::from(n);
        let b = &lp.b1 * i64::from(n);
        let params = JkParams::new(n, a.clone(), b.clone(), lp.k)
            .map_err(|source| AsymptoticsError::InvalidSchedule { n, source })?;
        let jk = moment::jk_sum(&params);
        let abs_error = (&jk - &limit).abs();
        rows.push(ConvergenceRow { n, a, b, jk, limit: limit.clone(), abs_error });
    }
    Ok(rows)
}
