//! Closed-form utility families with derivatives up to third order, and
//! the elasticity / prudence-ratio membership tests for smooth functions.

use serde::{Deserialize, Serialize};

use crate::distribution::IntervalBounds;
use crate::error::{domain, precondition, Error};

/// A utility function with closed-form derivatives on its domain.
///
/// The quadratic-corrected isoelastic family takes the interval's right
/// endpoint as its `scale_b` parameter; for large `scale_b` it is close
/// to the plain isoelastic (constant relative risk aversion) utility but
/// has marginal utility vanishing at `scale_b`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum SmoothUtility {
    /// `x^(1-γ)/(1-γ) + γ x² / (2 b^(γ+1))`, with the log form at γ = 1.
    CrraPlusQuadratic { gamma: f64, scale_b: f64 },
    /// Plain isoelastic `x^(1-γ)/(1-γ)` (log at γ = 1).
    Crra { gamma: f64 },
    /// `-e^(-r x) / r`.
    Exponential { rate: f64 },
    /// Ascending coefficients.
    Polynomial { coeffs: Vec<f64> },
}

impl SmoothUtility {
    pub fn validate(&self) -> Result<(), Error> {
        match self {
            SmoothUtility::CrraPlusQuadratic { gamma, scale_b } => {
                if !(*gamma > 0.0) {
                    return Err(domain(format!("gamma must be positive, got {gamma}")));
                }
                if !(*scale_b > 0.0) {
                    return Err(domain(format!("scale_b must be positive, got {scale_b}")));
                }
            }
            SmoothUtility::Crra { gamma } => {
                if !(*gamma > 0.0) {
                    return Err(domain(format!("gamma must be positive, got {gamma}")));
                }
            }
            SmoothUtility::Exponential { rate } => {
                if !(*rate > 0.0) {
                    return Err(domain(format!("rate must be positive, got {rate}")));
                }
            }
            SmoothUtility::Polynomial { coeffs } => {
                if coeffs.is_empty() {
                    return Err(domain("polynomial utility needs at least one coefficient"));
                }
            }
        }
        Ok(())
    }

    pub fn value(&self, x: f64) -> f64 {
        match self {
            SmoothUtility::CrraPlusQuadratic { gamma, scale_b } => {
                let quad = gamma * x * x / (2.0 * scale_b.powf(gamma + 1.0));
                if (*gamma - 1.0).abs() < 1e-12 {
                    x.ln() + quad
                } else {
                    x.powf(1.0 - gamma) / (1.0 - gamma) + quad
                }
            }
            SmoothUtility::Crra { gamma } => {
                if (*gamma - 1.0).abs() < 1e-12 {
                    x.ln()
                } else {
                    x.powf(1.0 - gamma) / (1.0 - gamma)
                }
            }
            SmoothUtility::Exponential { rate } => -(-rate * x).exp() / rate,
            SmoothUtility::Polynomial { coeffs } => horner(coeffs, x),
        }
    }

    pub fn d1(&self, x: f64) -> f64 {
        match self {
            SmoothUtility::CrraPlusQuadratic { gamma, scale_b } => {
                x.powf(-gamma) + gamma * x / scale_b.powf(gamma + 1.0)
            }
            SmoothUtility::Crra { gamma } => x.powf(-gamma),
            SmoothUtility::Exponential { rate } => (-rate * x).exp(),
            SmoothUtility::Polynomial { coeffs } => horner(&derive(coeffs), x),
        }
    }

    pub fn d2(&self, x: f64) -> f64 {
        match self {
            SmoothUtility::CrraPlusQuadratic { gamma, scale_b } => {
                -gamma * x.powf(-gamma - 1.0) + gamma / scale_b.powf(gamma + 1.0)
            }
            SmoothUtility::Crra { gamma } => -gamma * x.powf(-gamma - 1.0),
            SmoothUtility::Exponential { rate } => -rate * (-rate * x).exp(),
            SmoothUtility::Polynomial { coeffs } => horner(&derive(&derive(coeffs)), x),
        }
    }

    pub fn d3(&self, x: f64) -> f64 {
        match self {
            SmoothUtility::CrraPlusQuadratic { gamma, scale_b: _ } => {
                gamma * (gamma + 1.0) * x.powf(-gamma - 2.0)
            }
            SmoothUtility::Crra { gamma } => gamma * (gamma + 1.0) * x.powf(-gamma - 2.0),
            SmoothUtility::Exponential { rate } => rate * rate * (-rate * x).exp(),
            SmoothUtility::Polynomial { coeffs } => horner(&derive(&derive(&derive(coeffs))), x),
        }
    }
}

fn horner(coeffs: &[f64], x: f64) -> f64 {
    let mut acc = 0.0;
    for &a in coeffs.iter().rev() {
        acc = acc * x + a;
    }
    acc
}

fn derive(coeffs: &[f64]) -> Vec<f64> {
    if coeffs.len() <= 1 {
        return vec![0.0];
    }
    coeffs.iter().enumerate().skip(1).map(|(k, &a)| k as f64 * a).collect()
}

/// Outcome of a grid membership test for a smooth function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MembershipCheck {
    pub ok: bool,
    /// Lower bound the ratio must meet, `(alpha - 1) / alpha`.
    pub bound: f64,
    pub worst_x: f64,
    pub worst_ratio: f64,
    /// Grid points skipped because the ratio was undefined there.
    pub skipped: usize,
}

const MEMBERSHIP_SLACK: f64 = 1e-9;

/// Smooth membership test for the concave order's generator set: with the
/// normalization `u(b) = 0`, checks
///
/// ```text
/// u(x) u''(x) / u'(x)^2  >=  (alpha - 1) / alpha
/// ```
///
/// at `grid` interior points. The left side is the elasticity of marginal
/// utility with respect to utility; grid points with `u'(x) = 0` are
/// skipped and counted.
pub fn elasticity_check(
    u: &SmoothUtility,
    alpha: f64,
    bounds: IntervalBounds,
    grid: usize,
) -> Result<MembershipCheck, Error> {
    u.validate()?;
    if !(alpha >= 1.0) {
        return Err(domain(format!("alpha must be >= 1, got {alpha}")));
    }
    if grid < 2 {
        return Err(domain("membership grid needs at least 2 points"));
    }
    let bound = (alpha - 1.0) / alpha;
    let ub = u.value(bounds.b());
    let mut worst_x = f64::NAN;
    let mut worst_ratio = f64::INFINITY;
    let mut skipped = 0usize;
    for i in 1..=grid {
        let x = bounds.a() + bounds.width() * i as f64 / (grid as f64 + 1.0);
        let d1 = u.d1(x);
        if d1.abs() < 1e-300 || !d1.is_finite() {
            skipped += 1;
            continue;
        }
        let ratio = (u.value(x) - ub) * u.d2(x) / (d1 * d1);
        if ratio < worst_ratio {
            worst_ratio = ratio;
            worst_x = x;
        }
    }
    Ok(MembershipCheck { ok: worst_ratio >= bound - MEMBERSHIP_SLACK, bound, worst_x, worst_ratio, skipped })
}

/// Smooth membership test for a convex decreasing marginal utility:
/// checks
///
/// ```text
/// (u'(x) - u'(b)) u'''(x) / u''(x)^2  >=  (alpha - 1) / alpha
/// ```
///
/// at `grid` interior points, the ratio of the prudence coefficient to
/// the risk-aversion coefficient scaled by the marginal-utility gap.
/// Requires `u'' < 0` on the interior; points where `u''` vanishes are
/// skipped and counted, a strictly positive `u''` is a precondition
/// error.
pub fn prudence_ratio_check(
    u: &SmoothUtility,
    alpha: f64,
    bounds: IntervalBounds,
    grid: usize,
) -> Result<MembershipCheck, Error> {
    u.validate()?;
    if !(alpha >= 1.0) {
        return Err(domain(format!("alpha must be >= 1, got {alpha}")));
    }
    if grid < 2 {
        return Err(domain("membership grid needs at least 2 points"));
    }
    let bound = (alpha - 1.0) / alpha;
    let d1b = u.d1(bounds.b());
    let mut worst_x = f64::NAN;
    let mut worst_ratio = f64::INFINITY;
    let mut skipped = 0usize;
    for i in 1..=grid {
        let x = bounds.a() + bounds.width() * i as f64 / (grid as f64 + 1.0);
        let d2 = u.d2(x);
        if !d2.is_finite() {
            skipped += 1;
            continue;
        }
        if d2 > 0.0 {
            return Err(precondition(format!(
                "prudence ratio requires u'' < 0 on the interior; u''({x}) = {d2}"
            )));
        }
        if d2.abs() < 1e-300 {
            skipped += 1;
            continue;
        }
        let ratio = (u.d1(x) - d1b) * u.d3(x) / (d2 * d2);
        if ratio < worst_ratio {
            worst_ratio = ratio;
            worst_x = x;
        }
    }
    Ok(MembershipCheck { ok: worst_ratio >= bound - MEMBERSHIP_SLACK, bound, worst_x, worst_ratio, skipped })
}
