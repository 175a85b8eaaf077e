//! Piecewise polynomials over a shared breakpoint grid.
//!
//! The dominance conditions compare iterated CDF integrals, which for
//! atom + uniform mixtures are piecewise polynomials of degree at most
//! three. Extrema are located exactly per piece (endpoints plus real
//! roots of the derivative), so verdicts do not depend on grid density.

use crate::distribution::Distribution;

/// Dense polynomial, coefficients in ascending powers.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Poly {
    pub coeffs: Vec<f64>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: vec![0.0] }
    }

    pub fn eval(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for &a in self.coeffs.iter().rev() {
            acc = acc * x + a;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        Poly { coeffs: self.coeffs.iter().enumerate().skip(1).map(|(k, &a)| k as f64 * a).collect() }
    }

    /// Antiderivative with zero constant term.
    pub fn antiderivative(&self) -> Poly {
        let mut c = Vec::with_capacity(self.coeffs.len() + 1);
        c.push(0.0);
        for (k, &a) in self.coeffs.iter().enumerate() {
            c.push(a / (k as f64 + 1.0));
        }
        Poly { coeffs: c }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut c = vec![0.0; n];
        for (i, &a) in self.coeffs.iter().enumerate() {
            c[i] += a;
        }
        for (i, &a) in other.coeffs.iter().enumerate() {
            c[i] -= a;
        }
        Poly { coeffs: c }
    }

    pub fn scale(&self, s: f64) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|a| a * s).collect() }
    }

    /// Multiply by the linear polynomial `c0 + c1 x`.
    pub fn mul_linear(&self, c0: f64, c1: f64) -> Poly {
        let mut c = vec![0.0; self.coeffs.len() + 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            c[i] += c0 * a;
            c[i + 1] += c1 * a;
        }
        Poly { coeffs: c }
    }

    /// Real roots within `(lo, hi)`, for degree <= 2 after trimming
    /// negligible leading coefficients. Higher degrees are handled by the
    /// callers' construction (derivatives of cubics are quadratics).
    pub fn roots_in(&self, lo: f64, hi: f64) -> Vec<f64> {
        let mut cs = self.coeffs.clone();
        let scale = cs.iter().fold(0.0f64, |m, &a| m.max(a.abs())).max(1e-300);
        while cs.len() > 1 && cs.last().unwrap().abs() <= 1e-14 * scale {
            cs.pop();
        }
        let inside = |r: f64| r > lo && r < hi;
        match cs.len() {
            0 | 1 => vec![],
            2 => {
                let r = -cs[0] / cs[1];
                if inside(r) {
                    vec![r]
                } else {
                    vec![]
                }
            }
            3 => {
                let (c, b, a) = (cs[0], cs[1], cs[2]);
                let disc = b * b - 4.0 * a * c;
                if disc < 0.0 {
                    return vec![];
                }
                let sq = disc.sqrt();
                // Numerically stable pairing.
                let q = -0.5 * (b + b.signum() * sq);
                let mut out = vec![];
                let r1 = q / a;
                let r2 = if q != 0.0 { c / q } else { -b / a - r1 };
                for r in [r1, r2] {
                    if r.is_finite() && inside(r) {
                        out.push(r);
                    }
                }
                out.sort_by(f64::total_cmp);
                out.dedup();
                out
            }
            _ => {
                debug_assert!(false, "root isolation only implemented for degree <= 2");
                vec![]
            }
        }
    }
}

/// Polynomial pieces over consecutive intervals `[breaks[i], breaks[i+1]]`.
#[derive(Debug, Clone)]
pub(crate) struct PiecewisePoly {
    pub breaks: Vec<f64>,
    pub pieces: Vec<Poly>,
}

impl PiecewisePoly {
    /// The CDF of `dist` as a piecewise polynomial over `[lo, hi]`,
    /// valid on the open interior of each piece (atoms jump at
    /// breakpoints; the jump value belongs to the right piece).
    pub fn cdf(dist: &Distribution, lo: f64, hi: f64) -> PiecewisePoly {
        let mut breaks: Vec<f64> = Vec::with_capacity(dist.atoms().len() + 2 * dist.segments().len() + 2);
        breaks.push(lo);
        breaks.push(hi);
        for x in dist.breakpoints() {
            if x > lo && x < hi {
                breaks.push(x);
            }
        }
        breaks.sort_by(f64::total_cmp);
        breaks.dedup();
        let mut pieces = Vec::with_capacity(breaks.len() - 1);
        for w in breaks.windows(2) {
            let (t0, t1) = (w[0], w[1]);
            // Constant part: atoms at or below t0 plus exhausted segments.
            let mut c0 = 0.0;
            let mut c1 = 0.0;
            for at in dist.atoms() {
                if at.x <= t0 {
                    c0 += at.p;
                }
            }
            for s in dist.segments() {
                if s.hi <= t0 {
                    c0 += s.p;
                } else if s.lo < t1 && s.hi > t0 {
                    // Segment overlaps the piece; breakpoints guarantee full
                    // coverage, so the CDF contribution is linear here.
                    let slope = s.p / (s.hi - s.lo);
                    c0 += -slope * s.lo;
                    c1 += slope;
                }
            }
            pieces.push(Poly { coeffs: vec![c0, c1] });
        }
        PiecewisePoly { breaks, pieces }
    }

    /// Continuous antiderivative vanishing at the left endpoint.
    pub fn antiderivative(&self) -> PiecewisePoly {
        let mut pieces = Vec::with_capacity(self.pieces.len());
        let mut acc = 0.0;
        for (i, p) in self.pieces.iter().enumerate() {
            let anti = p.antiderivative();
            let t0 = self.breaks[i];
            let mut q = anti.clone();
            // Adjust the constant so the piece starts at the accumulated value.
            q.coeffs[0] += acc - anti.eval(t0);
            acc = q.eval(self.breaks[i + 1]);
            pieces.push(q);
        }
        PiecewisePoly { breaks: self.breaks.clone(), pieces }
    }

    #[cfg_attr(not(test), allow(dead_code))]
    pub fn eval(&self, x: f64) -> f64 {
        let i = self.piece_index(x);
        self.pieces[i].eval(x)
    }

    fn piece_index(&self, x: f64) -> usize {
        // Rightmost piece whose interval contains x; x at a breakpoint
        // belongs to the right piece (right continuity).
        let n = self.pieces.len();
        match self.breaks.binary_search_by(|b| b.total_cmp(&x)) {
            Ok(i) => i.min(n - 1),
            Err(i) => i.saturating_sub(1).min(n - 1),
        }
    }

    /// Pointwise difference, on the merged breakpoint grid.
    pub fn sub(&self, other: &PiecewisePoly) -> PiecewisePoly {
        let mut breaks: Vec<f64> = self.breaks.iter().chain(other.breaks.iter()).copied().collect();
        breaks.sort_by(f64::total_cmp);
        breaks.dedup();
        let mut pieces = Vec::with_capacity(breaks.len() - 1);
        for w in breaks.windows(2) {
            let mid = 0.5 * (w[0] + w[1]);
            let a = &self.pieces[self.piece_index(mid)];
            let b = &other.pieces[other.piece_index(mid)];
            pieces.push(a.sub(b));
        }
        PiecewisePoly { breaks, pieces }
    }

    /// Apply `p(x) -> (c0 + c1 x) * p(x)` piecewise.
    pub fn mul_linear(&self, c0: f64, c1: f64) -> PiecewisePoly {
        PiecewisePoly {
            breaks: self.breaks.clone(),
            pieces: self.pieces.iter().map(|p| p.mul_linear(c0, c1)).collect(),
        }
    }

    pub fn scale(&self, s: f64) -> PiecewisePoly {
        PiecewisePoly { breaks: self.breaks.clone(), pieces: self.pieces.iter().map(|p| p.scale(s)).collect() }
    }

    pub fn add(&self, other: &PiecewisePoly) -> PiecewisePoly {
        let neg = other.scale(-1.0);
        self.sub(&neg)
    }

    /// Exact global maximum: piece endpoints plus interior derivative
    /// roots. Ties resolve to the leftmost location, independent of
    /// evaluation order.
    pub fn max_on(&self) -> (f64, f64) {
        let mut best_x = self.breaks[0];
        let mut best_v = f64::NEG_INFINITY;
        for (i, p) in self.pieces.iter().enumerate() {
            let (t0, t1) = (self.breaks[i], self.breaks[i + 1]);
            let mut candidates = vec![t0, t1];
            candidates.extend(p.derivative().roots_in(t0, t1));
            for x in candidates {
                let v = p.eval(x);
                if v > best_v {
                    best_v = v;
                    best_x = x;
                }
            }
        }
        (best_x, best_v)
    }

    /// Exact global minimum.
    pub fn min_on(&self) -> (f64, f64) {
        let (x, v) = self.scale(-1.0).max_on();
        (x, -v)
    }
}
