//! Decide whether one distribution dominates another in the family of
//! concave stochastic orders parameterized by a convexity degree `alpha`
//! and a support interval `[a, b]`, and apply the verdicts in four
//! economic solvers.
//!
//! The crate has three layers:
//!
//! * [`distribution`] — exact atom + uniform-segment mixtures on a compact
//!   interval, with closed-form partial moments and iterated CDF integrals.
//! * [`checks`] — dominance checkers: first/second order, the n-hinge
//!   sufficient order, and closed-form special cases (uniform pairs,
//!   two-point supports). Verdicts are exact for piecewise inputs: the
//!   comparands are piecewise polynomials whose signs are resolved by
//!   per-piece root isolation, not grid sampling.
//! * [`oracle`] / [`hinge`] / [`smooth`] — certified generator functions
//!   (hinge sums raised to a power), a brute-force refutation oracle, and
//!   smooth-utility membership tests via elasticity and prudence ratios.
//!
//! The [`apps`] module builds four solvers on top of the checkers:
//! consumption-savings comparative statics, a self-protection decision
//! rule, a two-player search-game equilibrium, and Hermite-Hadamard-type
//! bounds for a class of convex decreasing functions.

// Validation uses `!(x >= k)` on purpose: the negated form rejects NaN,
// which the direct comparison would silently accept.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod apps;
pub mod checks;
pub mod distribution;
pub mod error;
pub mod hinge;
pub mod oracle;
pub(crate) mod piecewise;
pub mod quad;
pub mod smooth;
pub mod verdict;

pub use distribution::{Distribution, IntervalBounds};
pub use error::Error;
pub use hinge::{HingePowerFunction, Orientation};
pub use smooth::SmoothUtility;
pub use verdict::{OrderParams, OrderVerdict, Outcome, DEFAULT_TOLERANCE};
