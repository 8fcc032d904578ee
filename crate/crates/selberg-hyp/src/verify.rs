//! Randomized exact verification suites for the hypergeometric identities.
//!
//! Each suite draws random small-rational instances from a fixed-seed stream,
//! rejects instances on which a side of the identity is not evaluable (zero
//! denominators, early singularities), and demands exact rational equality on
//! every instance that survives. A report counts trials, passes, failures and
//! rejections; a suite passes only if it completed its trial quota with zero
//! failures.
//!
//! The contiguous suite additionally cross-checks the closed-form
//! decomposition against an independent term-by-term iteration of the
//! single-step relation ([`iterate_c14`]), comparing full coefficient/series
//! multisets.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::hyp::{
    chu_vandermonde, contiguous_decompose, transform_2f1_t2106, transform_saalschutz, HypSeries,
    SaalschutzRoles, T2106Roles,
};
use crate::rational::Rational;

/// The four identity suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SuiteKind {
    /// Balanced 4F3 transformation: prefactor times transformed series equals
    /// the original series, on random balanced terminating instances.
    Saalschutz,
    /// Contiguous decomposition for shifts 0..=4: weighted pieces sum to the
    /// original value, and the closed form equals the iterated single step.
    Contiguous,
    /// Chu-Vandermonde closed form against direct term summation.
    ChuVandermonde,
    /// 2F1 argument transformation against direct evaluation (and against
    /// Chu-Vandermonde when the argument is 1).
    T2106,
}

impl SuiteKind {
    pub const ALL: [SuiteKind; 4] = [
        SuiteKind::Saalschutz,
        SuiteKind::Contiguous,
        SuiteKind::ChuVandermonde,
        SuiteKind::T2106,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SuiteKind::Saalschutz => "saalschutz",
            SuiteKind::Contiguous => "contiguous",
            SuiteKind::ChuVandermonde => "chu",
            SuiteKind::T2106 => "t2106",
        }
    }

    /// Parse a CLI suite name; `None` for unknown names.
    pub fn from_name(name: &str) -> Option<SuiteKind> {
        SuiteKind::ALL.iter().copied().find(|k| k.name() == name)
    }
}

/// Outcome of one suite run.
#[derive(Clone, Copy, Debug)]
pub struct SuiteReport {
    pub suite: SuiteKind,
    /// Trials requested.
    pub trials: u32,
    /// Instances that evaluated on both sides and agreed.
    pub passes: u32,
    /// Instances that evaluated on both sides and disagreed.
    pub failures: u32,
    /// Instances discarded because a side was not evaluable.
    pub rejected: u64,
}

impl SuiteReport {
    /// A suite passes only with zero failures and a full trial quota.
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.passes == self.trials
    }
}

/// Run one suite with `trials` accepted instances drawn deterministically
/// from `seed`. Each suite reads its own ChaCha8 stream, so running `ALL`
/// gives the same reports as running each suite separately.
pub fn run_suite(kind: SuiteKind, trials: u32, seed: u64) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(match kind {
        SuiteKind::Saalschutz => 1,
        SuiteKind::Contiguous => 2,
        SuiteKind::ChuVandermonde => 3,
        SuiteKind::T2106 => 4,
    });
    let mut report =
        SuiteReport { suite: kind, trials, passes: 0, failures: 0, rejected: 0 };
    // rejection sampling with a deterministic attempt cap so a sparse pool
    // cannot loop forever
    let max_attempts = u64::from(trials) * 400 + 1000;
    let mut attempts = 0;
    while report.passes + report.failures < trials && attempts < max_attempts {
        attempts += 1;
        let outcome = match kind {
            SuiteKind::Saalschutz => saalschutz_trial(&mut rng),
            SuiteKind::Contiguous => contiguous_trial(&mut rng),
            SuiteKind::ChuVandermonde => chu_trial(&mut rng),
            SuiteKind::T2106 => t2106_trial(&mut rng),
        };
        match outcome {
            Some(true) => report.passes += 1,
            Some(false) => report.failures += 1,
            None => report.rejected += 1,
        }
    }
    report
}

/// Run every suite and collect the reports.
pub fn run_all(trials: u32, seed: u64) -> Vec<SuiteReport> {
    SuiteKind::ALL.iter().map(|&k| run_suite(k, trials, seed)).collect()
}

fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    let numer = rng.random_range(-6i64..=6);
    let denom = rng.random_range(1i64..=3);
    Rational::new(numer, denom)
}

fn small_nonzero(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let r = small_rational(rng);
        if !r.is_zero() {
            return r;
        }
    }
}

fn neg_int(n: u32) -> Rational {
    Rational::from_int(-i64::from(n))
}

fn saalschutz_trial(rng: &mut ChaCha8Rng) -> Option<bool> {
    let n = rng.random_range(0u32..=4);
    let a = small_rational(rng);
    let b = small_rational(rng);
    let c = small_rational(rng);
    let e = small_rational(rng);
    let f = small_rational(rng);
    let g = Rational::one() + &a + &b + &c - &e - &f - i64::from(n);
    let series = HypSeries::new(
        vec![a.clone(), b.clone(), c.clone(), neg_int(n)],
        vec![e.clone(), f.clone(), g],
        Rational::one(),
    );
    // the designated order must be the true termination order, otherwise the
    // two sides sum different ranges
    if series.termination_order() != Some(n) {
        return None;
    }
    let lhs = series.eval_terminating().ok()?;
    let roles = SaalschutzRoles { a, b, c, n, e, f };
    let (prefactor, transformed) = transform_saalschutz(&series, &roles).ok()?;
    let rhs = transformed.eval_terminating().ok()?;
    // structural invariants of the transformation
    let keeps_order = transformed.upper().contains(&neg_int(n));
    let stays_balanced = transformed.balance().is_one();
    Some(prefactor * rhs == lhs && keeps_order && stays_balanced)
}

fn contiguous_trial(rng: &mut ChaCha8Rng) -> Option<bool> {
    let r = rng.random_range(0u32..=4);
    let unshifted = small_rational(rng);
    let order = rng.random_range(0u32..=4);
    let upper = vec![unshifted.clone(), neg_int(order), small_rational(rng), small_rational(rng)];
    let lower = vec![small_rational(rng), small_rational(rng), small_rational(rng)];
    let z = small_nonzero(rng);
    let series = HypSeries::new(upper, lower, z);
    let lhs = series.eval_terminating().ok()?;
    let terms = contiguous_decompose(&series, &unshifted, r).ok()?;
    let mut rhs = Rational::zero();
    for (coeff, piece) in &terms {
        rhs = rhs + coeff * piece.eval_terminating().ok()?;
    }
    let iterated = iterate_c14(&series, &unshifted, r)?;
    Some(rhs == lhs && sorted(terms) == sorted(iterated))
}

fn chu_trial(rng: &mut ChaCha8Rng) -> Option<bool> {
    let a = small_rational(rng);
    let c = small_rational(rng);
    let n = rng.random_range(0u32..=6);
    let series = HypSeries::new(vec![a.clone(), neg_int(n)], vec![c.clone()], Rational::one());
    if series.termination_order() != Some(n) {
        return None;
    }
    let direct = series.eval_terminating().ok()?;
    let closed = chu_vandermonde(&a, n, &c).ok()?;
    Some(closed == direct)
}

fn t2106_trial(rng: &mut ChaCha8Rng) -> Option<bool> {
    let a = small_rational(rng);
    let c = small_rational(rng);
    let n = rng.random_range(0u32..=4);
    let z = small_nonzero(rng);
    let series = HypSeries::new(vec![a.clone(), neg_int(n)], vec![c.clone()], z.clone());
    if series.termination_order() != Some(n) {
        return None;
    }
    let lhs = series.eval_terminating().ok()?;
    let roles = T2106Roles { a: a.clone(), n, c: c.clone() };
    let (prefactor, transformed) = transform_2f1_t2106(&series, &roles).ok()?;
    let rhs = transformed.eval_terminating().ok()?;
    let mut ok = prefactor * rhs == lhs;
    if z.is_one() {
        // at unit argument the transformation must reproduce Chu-Vandermonde
        ok = ok && chu_vandermonde(&a, n, &c).ok()? == lhs;
    }
    Some(ok)
}

/// Independent oracle for the closed-form decomposition: apply the
/// single-step contiguous relation
///
/// ```text
/// F[A; B, C, D; E, F, G; z] = z BCD/(EFG) F[A; B+1, C+1, D+1; E+1, F+1, G+1; z]
///                             + F[A-1; B, C, D; E, F, G; z]
/// ```
///
/// to the leading term `r` times, accumulating coefficients. Returns `None`
/// where a step divides by zero; otherwise the result is the same
/// coefficient/series list the closed form produces, leading term first.
pub fn iterate_c14(
    series: &HypSeries,
    unshifted: &Rational,
    r: u32,
) -> Option<Vec<(Rational, HypSeries)>> {
    let mut residuals = Vec::with_capacity(r as usize);
    let mut lead_coeff = Rational::one();
    let mut lead = series.clone();
    for _ in 0..r {
        let shifted: Vec<Rational> = {
            let pos = lead.upper().iter().position(|u| u == unshifted)?;
            let mut rest = lead.upper().to_vec();
            rest.remove(pos);
            rest
        };
        let mut numer = lead.argument().clone();
        for p in &shifted {
            numer = numer * p;
        }
        let mut denom = Rational::one();
        for p in lead.lower() {
            denom = denom * p;
        }
        if denom.is_zero() {
            return None;
        }
        let step = numer / denom;

        let residual = HypSeries::new(
            std::iter::once(unshifted - 1).chain(shifted.iter().cloned()).collect(),
            lead.lower().to_vec(),
            lead.argument().clone(),
        );
        residuals.push((lead_coeff.clone(), residual));

        lead = HypSeries::new(
            std::iter::once(unshifted.clone()).chain(shifted.iter().map(|p| p + 1)).collect(),
            lead.lower().iter().map(|p| p + 1).collect(),
            lead.argument().clone(),
        );
        lead_coeff = lead_coeff * step;
    }
    let mut out = Vec::with_capacity(r as usize + 1);
    out.push((lead_coeff, lead));
    out.extend(residuals);
    Some(out)
}

fn sorted(mut terms: Vec<(Rational, HypSeries)>) -> Vec<(Rational, HypSeries)> {
    terms.sort_by(|(c1, s1), (c2, s2)| s1.cmp(s2).then(c1.cmp(c2)));
    terms
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_suites_pass_at_default_settings() {
        for report in run_all(200, 42) {
            assert!(
                report.passed(),
                "{}: {}/{} passed, {} failures, {} rejected",
                report.suite.name(),
                report.passes,
                report.trials,
                report.failures,
                report.rejected
            );
        }
    }

    #[test]
    fn suites_are_deterministic() {
        let a = run_suite(SuiteKind::Saalschutz, 50, 7);
        let b = run_suite(SuiteKind::Saalschutz, 50, 7);
        assert_eq!(a.passes, b.passes);
        assert_eq!(a.rejected, b.rejected);
    }

    #[test]
    fn iterate_c14_r0_is_identity() {
        let s = HypSeries::new(
            vec![
                Rational::from_int(2),
                Rational::from_int(-1),
                Rational::new(1, 2),
                Rational::from_int(3),
            ],
            vec![Rational::from_int(4), Rational::new(5, 2), Rational::from_int(6)],
            Rational::one(),
        );
        let out = iterate_c14(&s, &Rational::from_int(2), 0).unwrap();
        assert_eq!(out, vec![(Rational::one(), s)]);
    }

    #[test]
    fn iteration_matches_closed_form_on_fixed_instance() {
        let s = HypSeries::new(
            vec![
                Rational::new(3, 2),
                Rational::from_int(-3),
                Rational::new(1, 2),
                Rational::from_int(2),
            ],
            vec![Rational::from_int(2), Rational::new(5, 2), Rational::new(7, 3)],
            Rational::new(1, 2),
        );
        for r in 0..=4u32 {
            let closed = contiguous_decompose(&s, &Rational::new(3, 2), r).unwrap();
            let iterated = iterate_c14(&s, &Rational::new(3, 2), r).unwrap();
            assert_eq!(sorted(closed), sorted(iterated), "r = {r}");
        }
    }

    #[test]
    fn suite_names_roundtrip() {
        for kind in SuiteKind::ALL {
            assert_eq!(SuiteKind::from_name(kind.name()), Some(kind));
        }
        assert_eq!(SuiteKind::from_name("nope"), None);
    }
}
