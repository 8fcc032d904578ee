//! Three independent exact evaluators of the moment ratio `J_k`:
//!
//! - [`jk_sum`]: the alternating finite sum over Pochhammer ratios
//! - [`jk_hyp`]: prefactor times a terminating `4F3` at unit argument
//! - [`jk_via_derivation`]: replays the full reduction pipeline — two
//!   applications of the contiguous decomposition followed by the balanced
//!   transformation on every piece — and recombines the values
//!
//! All three agree exactly for every valid parameter set; the hypergeometric
//! routes report an error on the rare rational coincidences where an
//! intermediate series degenerates (a vanishing lower-parameter Pochhammer or
//! coefficient denominator), while `jk_sum` is total.

use thiserror::Error;

use crate::hyp::{self, HypError, HypSeries, SaalschutzRoles};
use crate::rational::{binomial, factorial, pochhammer, Rational};

/// Parameters of the moment ratio: dimension `N >= 1`, weight exponents
/// `a, b > 0`, moment order `k >= 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JkParams {
    n: u32,
    a: Rational,
    b: Rational,
    k: u32,
}

/// Parameter validation failures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamError {
    #[error("N must be a positive integer")]
    InvalidDimension,
    #[error("parameter a must be positive, got {0}")]
    InvalidA(Rational),
    #[error("parameter b must be positive, got {0}")]
    InvalidB(Rational),
}

impl JkParams {
    pub fn new(n: u32, a: Rational, b: Rational, k: u32) -> Result<Self, ParamError> {
        if n == 0 {
            return Err(ParamError::InvalidDimension);
        }
        if !a.is_positive() {
            return Err(ParamError::InvalidA(a));
        }
        if !b.is_positive() {
            return Err(ParamError::InvalidB(b));
        }
        Ok(JkParams { n, a, b, k })
    }

    pub fn dimension(&self) -> u32 {
        self.n
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn order(&self) -> u32 {
        self.k
    }
}

/// `J_k` by the finite-sum formula
///
/// ```text
/// J_k = 1/(N k!) sum_{i=0}^{k-1} (-1)^i C(k-1, i)
///         (N-i)_k (a+N-i-1)_k / (a+b+2N-i-2)_k
/// ```
///
/// with `J_0 = 1` by convention (the displayed sum is for `k >= 1`). Total
/// for valid parameters: terms whose numerator Pochhammer vanishes contribute
/// zero and are skipped before their denominator is formed, which resolves
/// the 0/0 coincidences at small `N` (for `i < N` the denominator cannot
/// vanish when `a, b > 0`).
pub fn jk_sum(p: &JkParams) -> Rational {
    if p.k == 0 {
        return Rational::one();
    }
    let (n, k) = (i64::from(p.n), p.k);
    let mut sum = Rational::zero();
    for i in 0..i64::from(k) {
        let numer = pochhammer(&Rational::from_int(n - i), k)
            * pochhammer(&(&p.a + (n - i - 1)), k);
        if numer.is_zero() {
            continue;
        }
        let denom = pochhammer(&(&p.a + &p.b + (2 * n - i - 2)), k);
        assert!(!denom.is_zero(), "denominator Pochhammer vanished for valid parameters");
        let term = binomial(i64::from(k) - 1, i) * numer / denom;
        sum = if i % 2 == 0 { sum + term } else { sum - term };
    }
    sum / (Rational::from_int(n) * factorial(k))
}

/// The prefactor `(N+1)_{k-1} (a+N-1)_k / (k! (2N+a+b-2)_k)` of the
/// hypergeometric form. Requires `k >= 1`.
pub fn jk_prefactor(p: &JkParams) -> Rational {
    assert!(p.k >= 1, "the hypergeometric form needs k >= 1");
    let (n, k) = (i64::from(p.n), p.k);
    pochhammer(&Rational::from_int(n + 1), k - 1) * pochhammer(&(&p.a + (n - 1)), k)
        / (factorial(k) * pochhammer(&(&p.a + &p.b + (2 * n - 2)), k))
}

/// The terminating `4F3` of the hypergeometric form:
/// `4F3[1-N, 1-k, 2-a-N, 3-a-b-k-2N; 2-a-k-N, 1-k-N, 3-a-b-2N; 1]`.
/// Requires `k >= 1`.
pub fn jk_series(p: &JkParams) -> HypSeries {
    assert!(p.k >= 1, "the hypergeometric form needs k >= 1");
    let (n, k) = (i64::from(p.n), i64::from(p.k));
    let (a, b) = (&p.a, &p.b);
    HypSeries::new(
        vec![
            Rational::from_int(1 - n),
            Rational::from_int(1 - k),
            -a + (2 - n),
            -a - b + (3 - k - 2 * n),
        ],
        vec![
            -a + (2 - k - n),
            Rational::from_int(1 - k - n),
            -a - b + (3 - 2 * n),
        ],
        Rational::one(),
    )
}

/// `J_k` by the hypergeometric form: the prefactor times the exact value of
/// the `4F3`. Equals [`jk_sum`] whenever the series is evaluable; errors with
/// [`HypError::SingularLowerParameter`] on the degenerate rational
/// coincidences where a lower-parameter Pochhammer vanishes early.
pub fn jk_hyp(p: &JkParams) -> hyp::Result<Rational> {
    if p.k == 0 {
        return Ok(Rational::one());
    }
    Ok(jk_prefactor(p) * jk_series(p).eval_terminating()?)
}

/// One balanced `4F3` produced by the two-stage contiguous decomposition.
#[derive(Clone, Debug)]
pub struct DerivationPiece {
    /// Product of the two decomposition coefficients for this piece.
    pub coefficient: Rational,
    /// Total contiguous shift `m = s + t` accumulated by the two stages.
    pub shift: u32,
    /// The piece itself; always 1-balanced.
    pub series: HypSeries,
}

/// Apply the contiguous decomposition and fold its leading term into the
/// tail.
///
/// The leading term's series keeps the unshifted parameter while every other
/// parameter moves up by `r`; in this pipeline the shifted parameter `1-k+..`
/// reaches 0 at the top, so the leading series equals 1 and can be rewritten
/// with the unshifted parameter decremented, giving `r + 1` terms of uniform
/// shape (the compact form of the decomposition). The zero upper parameter is
/// asserted.
fn decompose_compact(
    series: &HypSeries,
    unshifted: &Rational,
    r: u32,
) -> hyp::Result<Vec<(Rational, HypSeries)>> {
    let mut terms = hyp::contiguous_decompose(series, unshifted, r)?;
    let (coefficient, leading) = terms.remove(0);
    assert!(
        leading.upper().iter().any(Rational::is_zero),
        "compact fold needs a zero upper parameter in the leading series"
    );
    let mut upper: Vec<Rational> = leading.upper().to_vec();
    let pos = upper
        .iter()
        .position(|u| u == unshifted)
        .expect("unshifted parameter survives the decomposition");
    upper[pos] = unshifted - 1;
    let folded = HypSeries::new(upper, leading.lower().to_vec(), leading.argument().clone());
    terms.push((coefficient, folded));
    Ok(terms)
}

/// The balanced pieces after both decomposition stages.
///
/// Stage one decomposes the base `4F3` with unshifted parameter `1-N` and
/// shift `k-1`; stage two decomposes each resulting series with unshifted
/// parameter `-N` and shift `k-s-1`. Every piece is checked to be 1-balanced
/// (the sentinel for a correct role assignment) before it is returned.
pub fn derivation_pieces(p: &JkParams) -> hyp::Result<Vec<DerivationPiece>> {
    assert!(p.k >= 1, "the derivation pipeline needs k >= 1");
    let n = i64::from(p.n);
    let base = jk_series(p);
    debug_assert_eq!(base.balance(), Rational::from_int(-1));

    let mut pieces = Vec::new();
    let first = decompose_compact(&base, &Rational::from_int(1 - n), p.k - 1)?;
    for (s, (c1, stage_one)) in first.into_iter().enumerate() {
        let second = decompose_compact(&stage_one, &Rational::from_int(-n), p.k - 1 - s as u32)?;
        for (t, (c2, series)) in second.into_iter().enumerate() {
            let balance = series.balance();
            if !balance.is_one() {
                return Err(HypError::NotBalanced { balance });
            }
            pieces.push(DerivationPiece {
                coefficient: &c1 * c2,
                shift: (s + t) as u32,
                series,
            });
        }
    }
    Ok(pieces)
}

/// The balanced-transformation roles used on the piece with shift `m`.
///
/// All nine admissible role assignments are value-equivalent where defined;
/// this one (A = -1-N, E and F the two lower parameters other than
/// `2-a-k-N+m`) keeps the transformed series and prefactor nonsingular on the
/// widest set of rational parameters, in particular at integer `a` where the
/// assignment matching the collapsed double-sum form degenerates.
fn piece_roles(p: &JkParams, m: u32) -> SaalschutzRoles {
    let (n, k, m) = (i64::from(p.n), i64::from(p.k), i64::from(m));
    let (a, b) = (&p.a, &p.b);
    SaalschutzRoles {
        a: Rational::from_int(-1 - n),
        b: -a - b + (3 - k - 2 * n + m),
        c: -a + (2 - n + m),
        n: (k - 1 - m) as u32,
        e: -a - b + (3 - 2 * n + m),
        f: Rational::from_int(1 - k - n + m),
    }
}

/// `J_k` by replaying the reduction pipeline: decompose twice, transform
/// every balanced piece, evaluate, and recombine under the prefactor.
///
/// Exactly equals [`jk_sum`] whenever every intermediate object is defined;
/// errors with [`HypError::NotBalanced`] if a piece fails the balance check
/// (a role-assignment bug, not a data condition) and with
/// [`HypError::SingularLowerParameter`], [`HypError::ZeroPrefactorDenominator`]
/// or [`HypError::ZeroCoefficientDenominator`] on degenerate rational
/// coincidences.
pub fn jk_via_derivation(p: &JkParams) -> hyp::Result<Rational> {
    if p.k == 0 {
        return Ok(Rational::one());
    }
    let mut total = Rational::zero();
    for piece in derivation_pieces(p)? {
        let roles = piece_roles(p, piece.shift);
        let (prefactor, transformed) = hyp::transform_saalschutz(&piece.series, &roles)?;
        let value = transformed.eval_terminating()?;
        total = total + piece.coefficient * prefactor * value;
    }
    Ok(jk_prefactor(p) * total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn params(n: u32, a: Rational, b: Rational, k: u32) -> JkParams {
        JkParams::new(n, a, b, k).unwrap()
    }

    #[test]
    fn params_validation() {
        assert_eq!(
            JkParams::new(0, rat(1, 1), rat(1, 1), 1),
            Err(ParamError::InvalidDimension)
        );
        assert_eq!(
            JkParams::new(1, rat(0, 1), rat(1, 1), 1),
            Err(ParamError::InvalidA(Rational::zero()))
        );
        assert_eq!(
            JkParams::new(1, rat(1, 1), rat(-2, 1), 1),
            Err(ParamError::InvalidB(rat(-2, 1)))
        );
    }

    #[test]
    fn jk_sum_spot_values() {
        // N=1 reduces to the one-coordinate moment (a)_k/(a+b)_k
        assert_eq!(jk_sum(&params(1, rat(2, 1), rat(3, 1), 2)), rat(1, 5));
        // k=1 closed form (a+N-1)/(a+b+2N-2)
        assert_eq!(jk_sum(&params(3, rat(2, 1), rat(2, 1), 1)), rat(1, 2));
        assert_eq!(jk_sum(&params(2, rat(1, 1), rat(1, 1), 2)), rat(11, 30));
        assert_eq!(jk_sum(&params(2, rat(2, 1), rat(2, 1), 2)), rat(23, 70));
    }

    #[test]
    fn jk_sum_k0_convention() {
        assert_eq!(jk_sum(&params(4, rat(7, 3), rat(1, 2), 0)), Rational::one());
    }

    #[test]
    fn jk_sum_closed_forms() {
        // N = 1: J_k = (a)_k/(a+b)_k
        for k in 0..6u32 {
            for (a, b) in [(rat(1, 2), rat(3, 2)), (rat(7, 3), rat(2, 1))] {
                let p = params(1, a.clone(), b.clone(), k);
                let expected = pochhammer(&a, k) / pochhammer(&(&a + &b), k);
                assert_eq!(jk_sum(&p), expected);
            }
        }
        // k = 1: J_1 = (a+N-1)/(a+b+2N-2)
        for n in 1..6u32 {
            let (a, b) = (rat(5, 2), rat(4, 3));
            let p = params(n, a.clone(), b.clone(), 1);
            let n = i64::from(n);
            let expected = (&a + (n - 1)) / (&a + &b + (2 * n - 2));
            assert_eq!(jk_sum(&p), expected);
        }
    }

    #[test]
    fn jk_sum_small_n_zero_terms_vanish() {
        // at N=1, a=b=1, k=4 the i=3 term is a 0/0 coincidence resolved as 0
        let p = params(1, rat(1, 1), rat(1, 1), 4);
        assert_eq!(jk_sum(&p), rat(1, 5)); // (1)_4/(2)_4 = 24/120
    }

    #[test]
    fn series_is_minus_one_balanced() {
        let p = params(2, rat(1, 1), rat(1, 1), 2);
        let series = jk_series(&p);
        assert_eq!(series.balance(), Rational::from_int(-1));
        assert_eq!(
            series,
            HypSeries::new(
                vec![rat(-1, 1), rat(-1, 1), rat(-1, 1), rat(-5, 1)],
                vec![rat(-3, 1), rat(-3, 1), rat(-3, 1)],
                Rational::one(),
            )
        );
    }

    #[test]
    fn jk_hyp_matches_sum() {
        for (n, a, b, k) in [
            (2, rat(1, 1), rat(1, 1), 2),
            (1, rat(2, 1), rat(3, 1), 2),
            (5, rat(7, 2), rat(3, 2), 3),
            (4, rat(3, 2), rat(5, 2), 4),
        ] {
            let p = params(n, a, b, k);
            assert_eq!(jk_hyp(&p).unwrap(), jk_sum(&p));
        }
        // frozen value for the (5, 7/2, 3/2, 3) cross-check
        let p = params(5, rat(7, 2), rat(3, 2), 3);
        assert_eq!(jk_hyp(&p).unwrap(), rat(253, 728));
    }

    #[test]
    fn derivation_matches_sum() {
        for (n, a, b, k) in [
            (2, rat(1, 1), rat(1, 1), 2),
            (3, rat(2, 1), rat(5, 1), 1),
            (4, rat(3, 2), rat(5, 2), 4),
            (6, rat(7, 3), rat(1, 2), 5),
        ] {
            let p = params(n, a, b, k);
            assert_eq!(jk_via_derivation(&p).unwrap(), jk_sum(&p));
        }
        assert_eq!(
            jk_via_derivation(&params(4, rat(3, 2), rat(5, 2), 4)).unwrap(),
            rat(93, 512)
        );
    }

    #[test]
    fn derivation_k1_is_trivial_pipeline() {
        // both decompositions are r = 0 at k = 1: a single piece
        let p = params(3, rat(2, 1), rat(5, 1), 1);
        let pieces = derivation_pieces(&p).unwrap();
        assert_eq!(pieces.len(), 1);
        assert_eq!(jk_via_derivation(&p).unwrap(), rat(4, 11));
    }

    #[test]
    fn derivation_pieces_are_balanced() {
        let p = params(3, rat(7, 3), rat(3, 2), 4);
        let pieces = derivation_pieces(&p).unwrap();
        // k(k+1)/2 pieces indexed by the two shifts
        assert_eq!(pieces.len(), 10);
        for piece in &pieces {
            assert!(piece.series.balance().is_one());
        }
    }

    #[test]
    fn derivation_errors_on_degenerate_coincidence() {
        // N=1, a=1, b=3, k=4: a transformed piece has a lower-parameter
        // Pochhammer vanishing before termination
        let p = params(1, rat(1, 1), rat(3, 1), 4);
        assert!(matches!(
            jk_via_derivation(&p),
            Err(HypError::SingularLowerParameter { .. })
        ));
        // N=1, a=b=1/2 makes a stage-one coefficient denominator vanish
        let p = params(1, rat(1, 2), rat(1, 2), 2);
        assert!(matches!(
            jk_via_derivation(&p),
            Err(HypError::ZeroCoefficientDenominator { .. })
        ));
        // jk_hyp remains fine on both of these
        for p in [params(1, rat(1, 1), rat(3, 1), 4), params(1, rat(1, 2), rat(1, 2), 2)] {
            assert_eq!(jk_hyp(&p).unwrap(), jk_sum(&p));
        }
    }

    #[test]
    fn k0_conventions_agree() {
        let p = params(3, rat(5, 2), rat(1, 3), 0);
        assert_eq!(jk_sum(&p), Rational::one());
        assert_eq!(jk_hyp(&p).unwrap(), Rational::one());
        assert_eq!(jk_via_derivation(&p).unwrap(), Rational::one());
    }
}
