//! Certified generator functions: sums of hinges raised to a power.
//!
//! `u(x) = K - (Σ_j γ_j · max(c_j - x, 0))^α` is increasing and bounded on
//! `[a, b]`, and `u(b) - u(x)` has a convex α-th root by construction (a
//! nonnegative sum of convex hinges), so membership in the generating set
//! of the α-concave order holds with no numerical verification. The
//! negated orientation gives the convex decreasing counterpart.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::distribution::{Distribution, IntervalBounds};
use crate::error::{domain, Error};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    /// `K - S(x)^α`: increasing, concave-side member.
    ConcaveIncreasing,
    /// `K + S(x)^α`: decreasing, convex-side member.
    ConvexDecreasing,
}

/// One hinge `γ · max(c - x, 0)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Knot {
    pub c: f64,
    pub gamma: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "HingeRepr", into = "HingeRepr")]
pub struct HingePowerFunction {
    alpha: f64,
    bounds: IntervalBounds,
    /// Sorted by threshold.
    knots: Vec<Knot>,
    offset: f64,
    orientation: Orientation,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct HingeRepr {
    alpha: f64,
    a: f64,
    b: f64,
    knots: Vec<Knot>,
    #[serde(default)]
    offset: f64,
    orientation: Orientation,
}

impl TryFrom<HingeRepr> for HingePowerFunction {
    type Error = Error;
    fn try_from(r: HingeRepr) -> Result<Self, Error> {
        HingePowerFunction::new(r.alpha, IntervalBounds::new(r.a, r.b)?, r.knots, r.offset, r.orientation)
    }
}

impl From<HingePowerFunction> for HingeRepr {
    fn from(h: HingePowerFunction) -> HingeRepr {
        HingeRepr {
            alpha: h.alpha,
            a: h.bounds.a(),
            b: h.bounds.b(),
            knots: h.knots,
            offset: h.offset,
            orientation: h.orientation,
        }
    }
}

impl HingePowerFunction {
    pub fn new(
        alpha: f64,
        bounds: IntervalBounds,
        mut knots: Vec<Knot>,
        offset: f64,
        orientation: Orientation,
    ) -> Result<Self, Error> {
        if !(alpha >= 1.0) {
            return Err(domain(format!("alpha must be >= 1, got {alpha}")));
        }
        for k in &knots {
            if !bounds.contains(k.c) {
                return Err(domain(format!("knot {} outside [{}, {}]", k.c, bounds.a(), bounds.b())));
            }
            if !(k.gamma >= 0.0) {
                return Err(domain(format!("knot weight {} must be nonnegative", k.gamma)));
            }
        }
        knots.sort_by(|p, q| p.c.total_cmp(&q.c));
        Ok(HingePowerFunction { alpha, bounds, knots, offset, orientation })
    }

    /// Draw `knot_count` knots uniformly on the interval with log-uniform
    /// weights in `[1e-2, 1e2]`. Deterministic for a given seed.
    pub fn sample(alpha: f64, bounds: IntervalBounds, knot_count: usize, seed: u64) -> Result<Self, Error> {
        use rand::SeedableRng;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Self::sample_with(alpha, bounds, knot_count, &mut rng)
    }

    pub(crate) fn sample_with(
        alpha: f64,
        bounds: IntervalBounds,
        knot_count: usize,
        rng: &mut ChaCha8Rng,
    ) -> Result<Self, Error> {
        let knots = (0..knot_count)
            .map(|_| {
                let c = rng.gen_range(bounds.a()..=bounds.b());
                let gamma = 10f64.powf(rng.gen_range(-2.0..=2.0));
                Knot { c, gamma }
            })
            .collect();
        HingePowerFunction::new(alpha, bounds, knots, 0.0, Orientation::ConcaveIncreasing)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn bounds(&self) -> IntervalBounds {
        self.bounds
    }

    pub fn knots(&self) -> &[Knot] {
        &self.knots
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    /// Knot thresholds (useful as a violation witness).
    pub fn thresholds(&self) -> Vec<f64> {
        self.knots.iter().map(|k| k.c).collect()
    }

    /// The same function with the opposite orientation.
    pub fn negated(&self) -> HingePowerFunction {
        let orientation = match self.orientation {
            Orientation::ConcaveIncreasing => Orientation::ConvexDecreasing,
            Orientation::ConvexDecreasing => Orientation::ConcaveIncreasing,
        };
        HingePowerFunction { orientation, offset: -self.offset, ..self.clone() }
    }

    /// The inner hinge sum `S(x) = Σ γ_j max(c_j - x, 0)`; convex,
    /// nonnegative, decreasing, and piecewise linear.
    pub fn hinge_sum(&self, x: f64) -> f64 {
        let mut s = 0.0;
        for k in &self.knots {
            if k.c > x {
                s += k.gamma * (k.c - x);
            }
        }
        s
    }

    pub fn value(&self, x: f64) -> f64 {
        let s = self.hinge_sum(x).powf(self.alpha);
        match self.orientation {
            Orientation::ConcaveIncreasing => self.offset - s,
            Orientation::ConvexDecreasing => self.offset + s,
        }
    }

    /// `∫ u dF`, exact: atoms evaluate directly; on uniform segments the
    /// hinge sum is linear between knots, so `S^α` has the closed-form
    /// antiderivative `S^(α+1) / (S' (α+1))` on every sub-interval.
    pub fn integrate(&self, dist: &Distribution) -> Result<f64, Error> {
        let (lo, hi) = dist.support_range();
        if lo < self.bounds.a() - 1e-12 || hi > self.bounds.b() + 1e-12 {
            return Err(domain(format!(
                "distribution support [{lo}, {hi}] exceeds the function domain [{}, {}]",
                self.bounds.a(),
                self.bounds.b()
            )));
        }
        let mut total = 0.0;
        for at in dist.atoms() {
            total += at.p * self.value(at.x);
        }
        for s in dist.segments() {
            let mean_value = self.offset
                + match self.orientation {
                    Orientation::ConcaveIncreasing => -self.mean_power_on(s.lo, s.hi),
                    Orientation::ConvexDecreasing => self.mean_power_on(s.lo, s.hi),
                };
            total += s.p * mean_value;
        }
        Ok(total)
    }

    /// Average of `S^α` over `[lo, hi]`.
    fn mean_power_on(&self, lo: f64, hi: f64) -> f64 {
        let mut cuts = vec![lo, hi];
        for k in &self.knots {
            if k.c > lo && k.c < hi {
                cuts.push(k.c);
            }
        }
        cuts.sort_by(f64::total_cmp);
        cuts.dedup();
        let mut integral = 0.0;
        for w in cuts.windows(2) {
            let (t0, t1) = (w[0], w[1]);
            // Slope of S on (t0, t1): knots with c >= t1 are active.
            let slope: f64 = -self.knots.iter().filter(|k| k.c >= t1).map(|k| k.gamma).sum::<f64>();
            let s0 = self.hinge_sum(t0);
            let s1 = self.hinge_sum(t1);
            if slope == 0.0 || s0 == s1 {
                integral += s0.powf(self.alpha) * (t1 - t0);
            } else {
                let a1 = self.alpha + 1.0;
                integral += (s1.powf(a1) - s0.powf(a1)) / (slope * a1);
            }
        }
        integral / (hi - lo)
    }
}
