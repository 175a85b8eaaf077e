//! Hermite-Hadamard-type bounds for convex decreasing functions whose
//! square root (after subtracting the right-endpoint value) is convex.
//!
//! For such `f` on `[a, b]`, the interval mean is bounded by
//!
//! ```text
//! f(γ b + (1-γ) a)  <=  (1/(b-a)) ∫ f  <=  t f(a) + (1-t) f(b)
//! ```
//!
//! for every `t >= 1/3` and `γ >= 2/(3+√3)` — tighter constants than the
//! classical midpoint/endpoint bounds for plain convex functions.

use serde::{Deserialize, Serialize};

use crate::checks::check_uniform_pair;
use crate::distribution::{Distribution, IntervalBounds};
use crate::error::{domain, numeric, Error};
use crate::hinge::{HingePowerFunction, Orientation};
use crate::oracle::oracle_dominance;
use crate::quad::GaussLegendre;
use crate::verdict::{OrderVerdict, Outcome};

/// Smallest admissible right-bound weight.
pub const T_MIN: f64 = 1.0 / 3.0;

/// Smallest admissible evaluation point weight, `2 / (3 + √3)`.
pub fn gamma_min() -> f64 {
    2.0 / (3.0 + 3.0f64.sqrt())
}

const BOUND_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HhBounds {
    pub left_ok: bool,
    pub right_ok: bool,
    /// `(1/(b-a)) ∫ f`, evaluated in closed form.
    pub mean: f64,
    /// `f(γ b + (1-γ) a)`.
    pub left_value: f64,
    /// `t f(a) + (1-t) f(b)`.
    pub right_value: f64,
}

/// Check both bounds for a degree-two convex decreasing hinge power
/// function. `t` and `gamma` below their thresholds are rejected: the
/// bounds are not claimed there. `quad_points >= 2` additionally
/// cross-checks the closed-form mean with a fixed-order quadrature.
pub fn hh_bounds_check(
    f: &HingePowerFunction,
    t: f64,
    gamma: f64,
    quad_points: usize,
) -> Result<HhBounds, Error> {
    if (f.alpha() - 2.0).abs() > 1e-12 {
        return Err(domain(format!("bounds are stated for degree 2, got alpha = {}", f.alpha())));
    }
    if f.orientation() != Orientation::ConvexDecreasing {
        return Err(domain("function must be convex decreasing"));
    }
    if !(T_MIN - 1e-12..=1.0).contains(&t) {
        return Err(domain(format!("t = {t} outside [{T_MIN}, 1]; the right bound is unsupported there")));
    }
    let gmin = gamma_min();
    if !(gmin - 1e-12..=1.0).contains(&gamma) {
        return Err(domain(format!("gamma = {gamma} outside [{gmin}, 1]; the left bound is unsupported there")));
    }
    let (a, b) = (f.bounds().a(), f.bounds().b());
    let unif = Distribution::uniform(a, b)?;
    let mean = f.integrate(&unif)?;
    if quad_points >= 2 {
        let gl = GaussLegendre::new(quad_points);
        let via_quad = gl.integrate(&|x| f.value(x), a, b) / (b - a);
        let scale = 1.0 + mean.abs();
        if (via_quad - mean).abs() > 1e-8 * scale {
            return Err(numeric(format!(
                "quadrature cross-check disagrees with the closed form: {via_quad} vs {mean}"
            )));
        }
    }
    let left_value = f.value(gamma * b + (1.0 - gamma) * a);
    let right_value = t * f.value(a) + (1.0 - t) * f.value(b);
    Ok(HhBounds {
        left_ok: left_value <= mean + BOUND_SLACK,
        right_ok: mean <= right_value + BOUND_SLACK,
        mean,
        left_value,
        right_value,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct UniformBridgeReport {
    pub closed_form: OrderVerdict,
    pub oracle: OrderVerdict,
    /// True when the oracle outcome is compatible with the closed form: a
    /// dominant pair must be unrefuted; a refuted pair must have failed
    /// the closed form. The reverse search is best effort only.
    pub consistent: bool,
    /// Set when the closed form fails decisively but the oracle did not
    /// find a counterexample within the sample budget.
    pub counterexample_missed: bool,
}

/// Cross-check the closed-form uniform-pair threshold against the
/// sampled-function oracle at degree two on `[a1, b1]`.
///
/// When the threshold certifies dominance the oracle must stay silent;
/// when it fails by more than 1e-6 the oracle searches for a witness,
/// best effort (a miss is reported, not an error).
pub fn uniform_pair_expectation_bridge(
    a1: f64,
    b1: f64,
    a2: f64,
    b2: f64,
    samples: usize,
    seed: u64,
) -> Result<UniformBridgeReport, Error> {
    let closed_form = check_uniform_pair(a1, b1, a2, b2)?;
    let bounds = IntervalBounds::new(a1, b1)?;
    let inner = Distribution::uniform_on(a1, b1, a2, b2)?;
    let outer = Distribution::uniform(a1, b1)?;
    let oracle = oracle_dominance(&inner, &outer, 2.0, bounds, samples, 8, seed)?;
    let (consistent, counterexample_missed) = match closed_form.outcome {
        Outcome::Dominates => (oracle.outcome == Outcome::Inconclusive, false),
        _ => {
            let found = oracle.outcome == Outcome::FailsAt;
            let decisive = closed_form.margin < -1e-6;
            (true, decisive && !found)
        }
    };
    Ok(UniformBridgeReport { closed_form, oracle, consistent, counterexample_missed })
}
