//! Exact computation of the Selberg-type moment ratio `J_k = S_k / S_0` for
//! the Jacobi ensemble, by several independent routes that must agree to the
//! last bit, together with its large-dimension limit and two integral-based
//! oracles.
//!
//! `S_k(a, b)` is the integral over `[0,1]^N` of `x1^k` times the squared
//! Vandermonde factor times a product of Beta(a, b) weights; the quotient
//! `J_k` is a rational function of `(N, a, b)` for fixed `k`, and everything
//! here evaluates it in exact rational arithmetic.
//!
//! Modules:
//! - [`rational`]: arbitrary-precision rationals, Pochhammer/binomial/factorial
//! - [`hyp`]: terminating `pFq` series, contiguous decomposition, the
//!   balanced-`4F3` and `2F1` transformations, Chu-Vandermonde
//! - [`moment`]: the three exact `J_k` evaluators (finite sum, `4F3` form,
//!   and the full decompose-transform-recombine pipeline)
//! - [`asymptotics`]: the two equivalent limit formulas along `a = a1*N`,
//!   `b = b1*N`, and exact convergence tables
//! - [`oracle`]: monomial-expansion and Monte Carlo validators of the finite
//!   sum against the integral definition
//! - [`verify`]: randomized exact identity suites with fixed seeds
//! - [`cli`]: the `selberg-hyp` command-line surface

pub mod asymptotics;
pub mod cli;
pub mod hyp;
pub mod moment;
pub mod oracle;
pub mod rational;
pub mod verify;

pub use asymptotics::{convergence_table, limit_corollary, limit_theorem, ConvergenceRow, LimitParams};
pub use hyp::{
    chu_vandermonde, contiguous_decompose, transform_2f1_t2106, transform_saalschutz, HypError,
    HypSeries, SaalschutzRoles, T2106Roles,
};
pub use moment::{jk_hyp, jk_sum, jk_via_derivation, JkParams};
pub use oracle::{exact_oracle, mc_oracle, vandermonde_sq_expand, McEstimate, MonomialTerm};
pub use rational::{binomial, factorial, pochhammer, Rational};
pub use verify::{run_all, run_suite, SuiteKind, SuiteReport};
