//! Verdict and parameter types shared by all order checkers.

use serde::{Deserialize, Serialize};

use crate::distribution::IntervalBounds;
use crate::error::{domain, Error};
use crate::hinge::HingePowerFunction;

/// Default slack below which a violated condition is still promoted to
/// `Dominates` and flagged as a boundary case.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Dominates,
    FailsAt,
    Inconclusive,
}

/// Result of a dominance check.
///
/// `margin` is the signed worst-case slack of the binding condition:
/// positive means satisfied with room, zero means binding, negative means
/// violated. A `FailsAt` outcome always carries a witness at which
/// re-evaluating the named condition reproduces a violation beyond the
/// tolerance, and always has `margin < 0`. Margins in `[-tolerance, 0)`
/// are promoted to `Dominates` with the `boundary` flag set. Margins on
/// `Inconclusive` verdicts are informational only.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrderVerdict {
    pub outcome: Outcome,
    /// Identifier of the binding inequality (e.g. `"sosd-integral"`,
    /// `"two-sufficient-square"`, `"grid-hinge"`).
    pub condition_id: String,
    pub margin: f64,
    /// Threshold vector at which the condition is violated, when `FailsAt`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Vec<f64>>,
    /// Set when a nonpositive margin within tolerance was promoted to
    /// `Dominates`.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub boundary: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<String>,
    /// Replayable counterexample function, when an oracle refutes.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub counterexample: Option<HingePowerFunction>,
}

impl OrderVerdict {
    /// Classify a worst-case slack: `Dominates` when `margin >= -tolerance`
    /// (flagged as boundary if strictly negative), otherwise `FailsAt` with
    /// the supplied witness.
    pub(crate) fn from_margin(
        condition_id: &str,
        margin: f64,
        witness: Vec<f64>,
        tolerance: f64,
    ) -> OrderVerdict {
        // Canonicalize the sign of zero for stable serialized output.
        let margin = if margin == 0.0 { 0.0 } else { margin };
        if margin >= -tolerance {
            OrderVerdict {
                outcome: Outcome::Dominates,
                condition_id: condition_id.to_string(),
                margin,
                witness: None,
                boundary: margin < 0.0,
                detail: None,
                counterexample: None,
            }
        } else {
            OrderVerdict {
                outcome: Outcome::FailsAt,
                condition_id: condition_id.to_string(),
                margin,
                witness: Some(witness),
                boundary: false,
                detail: None,
                counterexample: None,
            }
        }
    }

    pub(crate) fn inconclusive(condition_id: &str, margin: f64, detail: impl Into<String>) -> OrderVerdict {
        OrderVerdict {
            outcome: Outcome::Inconclusive,
            condition_id: condition_id.to_string(),
            margin,
            witness: None,
            boundary: false,
            detail: Some(detail.into()),
            counterexample: None,
        }
    }

    pub fn dominates(&self) -> bool {
        self.outcome == Outcome::Dominates
    }
}

/// Parameters for the n-hinge sufficient checker and the oracle chain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrderParams {
    /// Concavity degree of the target order, `>= 1`.
    pub alpha: f64,
    /// Hinge-product order of the sufficient check; defaults to
    /// `ceil(alpha)`.
    pub n: usize,
    pub bounds: IntervalBounds,
    /// Grid density per axis for `n >= 3` scans.
    pub grid_points: usize,
    pub tolerance: f64,
}

impl OrderParams {
    pub fn new(alpha: f64, bounds: IntervalBounds) -> Result<Self, Error> {
        if !(alpha >= 1.0) {
            return Err(domain(format!("alpha must be >= 1, got {alpha}")));
        }
        Ok(OrderParams { alpha, n: alpha.ceil() as usize, bounds, grid_points: 64, tolerance: DEFAULT_TOLERANCE })
    }

    pub fn with_n(mut self, n: usize) -> Result<Self, Error> {
        if n == 0 {
            return Err(domain("checker order n must be positive"));
        }
        self.n = n;
        Ok(self)
    }

    pub fn with_grid_points(mut self, grid_points: usize) -> Result<Self, Error> {
        if grid_points < 2 {
            return Err(domain("grid_points must be at least 2"));
        }
        self.grid_points = grid_points;
        Ok(self)
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Result<Self, Error> {
        if !(tolerance >= 0.0) {
            return Err(domain("tolerance must be nonnegative"));
        }
        self.tolerance = tolerance;
        Ok(self)
    }
}
