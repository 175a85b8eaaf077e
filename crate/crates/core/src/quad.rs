//! Adaptive Gauss-Legendre quadrature with an absolute error target.
//!
//! Panels are accepted when the gap between an n-point and a 2n-point
//! estimate is within the panel's share of the budget, and split
//! otherwise. Used for smooth integrands without closed-form
//! antiderivatives; the hinge-power and mixture integrals elsewhere in
//! the crate are evaluated in closed form instead.

use crate::error::{numeric, Error};

/// Nodes and weights on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Compute an n-point rule by Newton iteration on the Legendre
    /// polynomial, seeded with Chebyshev estimates.
    pub fn new(n: usize) -> GaussLegendre {
        assert!(n >= 1, "quadrature order must be positive");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for k in 0..n {
            let mut x = (std::f64::consts::PI * (k as f64 + 0.75) / (n as f64 + 0.5)).cos();
            for _ in 0..100 {
                let (p, dp) = legendre_with_derivative(n, x);
                let dx = p / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, dp) = legendre_with_derivative(n, x);
            nodes[k] = x;
            weights[k] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
        GaussLegendre { nodes, weights }
    }

    /// Fixed-order estimate of `∫_lo^hi f`.
    pub fn integrate(&self, f: &dyn Fn(f64) -> f64, lo: f64, hi: f64) -> f64 {
        let mid = 0.5 * (lo + hi);
        let half = 0.5 * (hi - lo);
        let mut acc = 0.0;
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            acc += w * f(mid + half * x);
        }
        acc * half
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Adaptive integration of `f` over `[lo, hi]` to absolute error `tol`.
///
/// Fails with diagnostics when the panel budget is exhausted before the
/// target is met.
pub fn integrate_adaptive(f: &dyn Fn(f64) -> f64, lo: f64, hi: f64, tol: f64) -> Result<f64, Error> {
    if lo == hi {
        return Ok(0.0);
    }
    if !(tol > 0.0) {
        return Err(numeric(format!("error target must be positive, got {tol}")));
    }
    let coarse = GaussLegendre::new(8);
    let fine = GaussLegendre::new(16);
    let width = (hi - lo).abs();
    let mut stack = vec![(lo, hi)];
    let mut total = 0.0;
    let mut panels = 0usize;
    const MAX_PANELS: usize = 4096;
    while let Some((a, b)) = stack.pop() {
        panels += 1;
        if panels > MAX_PANELS {
            return Err(numeric(format!(
                "adaptive quadrature exceeded {MAX_PANELS} panels on [{lo}, {hi}] with target {tol:.3e}; worst panel [{a}, {b}]"
            )));
        }
        let i_coarse = coarse.integrate(f, a, b);
        let i_fine = fine.integrate(f, a, b);
        let err = (i_fine - i_coarse).abs();
        let local_budget = tol * ((b - a).abs() / width).max(f64::EPSILON);
        if err <= local_budget || (b - a).abs() < 1e-14 * width {
            total += i_fine;
        } else {
            let mid = 0.5 * (a + b);
            stack.push((a, mid));
            stack.push((mid, b));
        }
    }
    Ok(total)
}
