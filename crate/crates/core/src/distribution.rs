//! Exact finite mixtures of point atoms and uniform segments on a compact
//! interval, with closed-form evaluation of the integral quantities the
//! order checkers consume.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error};

/// Tolerance for the total-mass normalization check at construction.
pub const MASS_TOLERANCE: f64 = 1e-12;

/// A compact interval `[a, b]` with `a < b`, the support parameter of an
/// order family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "(f64, f64)", into = "(f64, f64)")]
pub struct IntervalBounds {
    a: f64,
    b: f64,
}

impl IntervalBounds {
    pub fn new(a: f64, b: f64) -> Result<Self, Error> {
        if !a.is_finite() || !b.is_finite() {
            return Err(domain(format!("interval endpoints must be finite, got [{a}, {b}]")));
        }
        if !(a < b) {
            return Err(domain(format!("interval requires a < b, got [{a}, {b}]")));
        }
        Ok(IntervalBounds { a, b })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn width(&self) -> f64 {
        self.b - self.a
    }

    pub fn contains(&self, x: f64) -> bool {
        self.a <= x && x <= self.b
    }

    /// The interval shifted by `c`.
    pub fn shift(&self, c: f64) -> Result<Self, Error> {
        IntervalBounds::new(self.a + c, self.b + c)
    }
}

impl TryFrom<(f64, f64)> for IntervalBounds {
    type Error = Error;
    fn try_from(v: (f64, f64)) -> Result<Self, Error> {
        IntervalBounds::new(v.0, v.1)
    }
}

impl From<IntervalBounds> for (f64, f64) {
    fn from(b: IntervalBounds) -> (f64, f64) {
        (b.a, b.b)
    }
}

/// A point mass.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    /// Location in `[a, b]`.
    pub x: f64,
    /// Mass.
    pub p: f64,
}

/// A uniform piece on `[lo, hi]` carrying total mass `p`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub lo: f64,
    pub hi: f64,
    pub p: f64,
}

/// Exact mixture of point atoms and uniform segments on `[a, b]`.
///
/// Immutable after construction; all operations are pure. The CDF is
/// right-continuous at atoms. Construction rejects inputs whose total
/// mass differs from one by more than [`MASS_TOLERANCE`] rather than
/// renormalizing them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "DistributionRepr", into = "DistributionRepr")]
pub struct Distribution {
    support_lo: f64,
    support_hi: f64,
    atoms: Vec<Atom>,
    segments: Vec<Segment>,
}

/// Wire shape: `{"a", "b", "atoms": [{"x","p"}...], "segments": [{"lo","hi","p"}...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct DistributionRepr {
    a: f64,
    b: f64,
    #[serde(default)]
    atoms: Vec<Atom>,
    #[serde(default)]
    segments: Vec<Segment>,
}

impl TryFrom<DistributionRepr> for Distribution {
    type Error = Error;
    fn try_from(r: DistributionRepr) -> Result<Self, Error> {
        Distribution::new(r.a, r.b, r.atoms, r.segments)
    }
}

impl From<Distribution> for DistributionRepr {
    fn from(d: Distribution) -> DistributionRepr {
        DistributionRepr { a: d.support_lo, b: d.support_hi, atoms: d.atoms, segments: d.segments }
    }
}

impl Distribution {
    pub fn new(a: f64, b: f64, atoms: Vec<Atom>, segments: Vec<Segment>) -> Result<Self, Error> {
        if !a.is_finite() || !b.is_finite() {
            return Err(domain("distribution interval must be finite"));
        }
        // A lone atom may sit on a degenerate interval; everything else
        // needs a proper one.
        let degenerate_ok = a == b && atoms.len() == 1 && segments.is_empty();
        if !(a < b) && !degenerate_ok {
            return Err(domain(format!("distribution interval requires a < b, got [{a}, {b}]")));
        }
        let mut mass = 0.0;
        for at in &atoms {
            if !(at.x >= a && at.x <= b) {
                return Err(domain(format!("atom at {} outside [{a}, {b}]", at.x)));
            }
            if !(at.p >= 0.0) || !at.p.is_finite() {
                return Err(domain(format!("atom mass {} must be nonnegative", at.p)));
            }
            mass += at.p;
        }
        for s in &segments {
            if !(s.lo < s.hi) {
                return Err(domain(format!("segment [{}, {}] must be non-degenerate", s.lo, s.hi)));
            }
            if !(s.lo >= a && s.hi <= b) {
                return Err(domain(format!("segment [{}, {}] outside [{a}, {b}]", s.lo, s.hi)));
            }
            if !(s.p >= 0.0) || !s.p.is_finite() {
                return Err(domain(format!("segment mass {} must be nonnegative", s.p)));
            }
            mass += s.p;
        }
        if (mass - 1.0).abs() > MASS_TOLERANCE {
            return Err(domain(format!("total mass {mass} differs from 1 by more than {MASS_TOLERANCE}")));
        }
        if atoms.is_empty() && segments.is_empty() {
            return Err(domain("distribution needs at least one component"));
        }
        Ok(Distribution { support_lo: a, support_hi: b, atoms, segments })
    }

    /// Point mass at `x` on the ambient interval `[a, b]`.
    pub fn degenerate(a: f64, b: f64, x: f64) -> Result<Self, Error> {
        Distribution::new(a, b, vec![Atom { x, p: 1.0 }], vec![])
    }

    /// Two-point lottery `{x1: p1, x2: 1-p1}` on `[a, b]`.
    pub fn binary(a: f64, b: f64, x1: f64, p1: f64, x2: f64) -> Result<Self, Error> {
        if !(0.0..=1.0).contains(&p1) {
            return Err(domain(format!("probability {p1} outside [0, 1]")));
        }
        Distribution::new(a, b, vec![Atom { x: x1, p: p1 }, Atom { x: x2, p: 1.0 - p1 }], vec![])
    }

    /// Uniform distribution on `[lo, hi]`, ambient interval `[a, b]`.
    pub fn uniform_on(a: f64, b: f64, lo: f64, hi: f64) -> Result<Self, Error> {
        Distribution::new(a, b, vec![], vec![Segment { lo, hi, p: 1.0 }])
    }

    /// Uniform on the whole ambient interval.
    pub fn uniform(a: f64, b: f64) -> Result<Self, Error> {
        Distribution::uniform_on(a, b, a, b)
    }

    pub fn interval(&self) -> (f64, f64) {
        (self.support_lo, self.support_hi)
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    /// Smallest and largest points carrying mass.
    pub fn support_range(&self) -> (f64, f64) {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for at in &self.atoms {
            if at.p > 0.0 {
                lo = lo.min(at.x);
                hi = hi.max(at.x);
            }
        }
        for s in &self.segments {
            if s.p > 0.0 {
                lo = lo.min(s.lo);
                hi = hi.max(s.hi);
            }
        }
        (lo, hi)
    }

    /// Locations where the CDF changes shape: atom positions and segment
    /// endpoints.
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut pts: Vec<f64> =
            self.atoms.iter().map(|a| a.x).chain(self.segments.iter().flat_map(|s| [s.lo, s.hi])).collect();
        pts.sort_by(f64::total_cmp);
        pts.dedup();
        pts
    }

    /// The distribution shifted by `c` (supports and interval both move).
    pub fn shift(&self, c: f64) -> Result<Self, Error> {
        Distribution::new(
            self.support_lo + c,
            self.support_hi + c,
            self.atoms.iter().map(|a| Atom { x: a.x + c, p: a.p }).collect(),
            self.segments.iter().map(|s| Segment { lo: s.lo + c, hi: s.hi + c, p: s.p }).collect(),
        )
    }

    /// Same mixture declared on a different ambient interval `[a, b]`,
    /// which must contain the realized support.
    pub fn with_interval(&self, a: f64, b: f64) -> Result<Self, Error> {
        Distribution::new(a, b, self.atoms.clone(), self.segments.clone())
    }

    fn check_point(&self, name: &str, x: f64) -> Result<(), Error> {
        if x < self.support_lo || x > self.support_hi {
            return Err(domain(format!(
                "{name} = {x} outside the distribution interval [{}, {}]",
                self.support_lo, self.support_hi
            )));
        }
        Ok(())
    }

    /// Right-continuous CDF value at `x`.
    pub fn cdf(&self, x: f64) -> Result<f64, Error> {
        self.check_point("x", x)?;
        Ok(self.cdf_extended(x))
    }

    /// CDF extended by 0 below and 1 above the declared interval.
    pub(crate) fn cdf_extended(&self, x: f64) -> f64 {
        let mut v = 0.0;
        for at in &self.atoms {
            if at.x <= x {
                v += at.p;
            }
        }
        for s in &self.segments {
            v += s.p * ((x - s.lo) / (s.hi - s.lo)).clamp(0.0, 1.0);
        }
        v
    }

    /// `∫_a^c F(x) dx`, exact per mixture component.
    pub fn cdf_integral(&self, c: f64) -> Result<f64, Error> {
        self.check_point("c", c)?;
        Ok(self.cdf_integral_unchecked(c))
    }

    pub(crate) fn cdf_integral_unchecked(&self, c: f64) -> f64 {
        let mut v = 0.0;
        for at in &self.atoms {
            v += at.p * (c - at.x).max(0.0);
        }
        for s in &self.segments {
            v += s.p * segment_cdf_integral(s.lo, s.hi, c);
        }
        v
    }

    /// `∫_a^c (∫_a^x F(z) dz) dx`, exact per mixture component.
    pub fn cdf_double_integral(&self, c: f64) -> Result<f64, Error> {
        self.check_point("c", c)?;
        Ok(self.cdf_double_integral_unchecked(c))
    }

    pub(crate) fn cdf_double_integral_unchecked(&self, c: f64) -> f64 {
        let mut v = 0.0;
        for at in &self.atoms {
            let t = (c - at.x).max(0.0);
            v += at.p * 0.5 * t * t;
        }
        for s in &self.segments {
            v += s.p * segment_cdf_double_integral(s.lo, s.hi, c);
        }
        v
    }

    /// Lower partial moment `∫ max(c - x, 0)^k dF(x)` in closed form.
    ///
    /// `k = 0` returns 1 by convention (total mass), not an error.
    pub fn partial_moment(&self, c: f64, k: u32) -> Result<f64, Error> {
        self.check_point("c", c)?;
        if k == 0 {
            return Ok(1.0);
        }
        let mut v = 0.0;
        for at in &self.atoms {
            v += at.p * (c - at.x).max(0.0).powi(k as i32);
        }
        for s in &self.segments {
            if c > s.lo {
                // Density p/(hi-lo) over [lo, min(c, hi)]; antiderivative of
                // (c-x)^k is -(c-x)^(k+1)/(k+1).
                let upper = c.min(s.hi);
                let k1 = k as i32 + 1;
                let area = ((c - s.lo).powi(k1) - (c - upper).powi(k1)) / k1 as f64;
                v += s.p * area / (s.hi - s.lo);
            }
        }
        Ok(v)
    }

    /// `∫ Π_i max(c_i - x, 0) dF(x)` for a vector of thresholds.
    ///
    /// The integrand vanishes above `min c_i` and is a degree-n polynomial
    /// below it, so the value is exact.
    pub fn product_hinge_moment(&self, cs: &[f64]) -> Result<f64, Error> {
        if cs.is_empty() {
            return Ok(1.0);
        }
        for &c in cs {
            self.check_point("c_i", c)?;
        }
        let cmin = cs.iter().copied().fold(f64::INFINITY, f64::min);
        let mut v = 0.0;
        for at in &self.atoms {
            let mut prod = at.p;
            for &c in cs {
                prod *= (c - at.x).max(0.0);
            }
            v += prod;
        }
        if self.segments.is_empty() {
            return Ok(v);
        }
        // Expand Π (c_i - x) into coefficients (ascending powers of x).
        let mut coeffs = vec![1.0f64];
        for &c in cs {
            let mut next = vec![0.0; coeffs.len() + 1];
            for (j, &a) in coeffs.iter().enumerate() {
                next[j] += c * a;
                next[j + 1] -= a;
            }
            coeffs = next;
        }
        for s in &self.segments {
            if cmin > s.lo {
                let upper = cmin.min(s.hi);
                let area = poly_integral(&coeffs, s.lo, upper);
                v += s.p * area / (s.hi - s.lo);
            }
        }
        Ok(v)
    }

    /// Exact mixture mean.
    pub fn expectation(&self) -> f64 {
        let mut v = 0.0;
        for at in &self.atoms {
            v += at.p * at.x;
        }
        for s in &self.segments {
            v += s.p * 0.5 * (s.lo + s.hi);
        }
        v
    }

    /// Exact mixture second raw moment.
    pub fn second_moment(&self) -> f64 {
        let mut v = 0.0;
        for at in &self.atoms {
            v += at.p * at.x * at.x;
        }
        for s in &self.segments {
            v += s.p * (s.hi * s.hi + s.hi * s.lo + s.lo * s.lo) / 3.0;
        }
        v
    }

    /// Expectation of a closed-form integrable function: atoms evaluate
    /// directly, segments integrate `f` exactly via a caller-supplied
    /// antiderivative.
    pub(crate) fn expect_with(
        &self,
        f: impl Fn(f64) -> f64,
        antiderivative: impl Fn(f64) -> f64,
    ) -> f64 {
        let mut v = 0.0;
        for at in &self.atoms {
            v += at.p * f(at.x);
        }
        for s in &self.segments {
            v += s.p * (antiderivative(s.hi) - antiderivative(s.lo)) / (s.hi - s.lo);
        }
        v
    }
}

/// `∫_lo^c` of the unit-mass uniform CDF on `[lo, hi]`.
fn segment_cdf_integral(lo: f64, hi: f64, c: f64) -> f64 {
    if c <= lo {
        0.0
    } else if c <= hi {
        let t = c - lo;
        t * t / (2.0 * (hi - lo))
    } else {
        0.5 * (hi - lo) + (c - hi)
    }
}

/// Second iterated integral of the unit-mass uniform CDF on `[lo, hi]`.
fn segment_cdf_double_integral(lo: f64, hi: f64, c: f64) -> f64 {
    if c <= lo {
        0.0
    } else if c <= hi {
        let t = c - lo;
        t * t * t / (6.0 * (hi - lo))
    } else {
        let w = hi - lo;
        let t = c - hi;
        w * w / 6.0 + 0.5 * w * t + 0.5 * t * t
    }
}

/// `∫_lo^hi` of a polynomial given by ascending coefficients.
fn poly_integral(coeffs: &[f64], lo: f64, hi: f64) -> f64 {
    // Horner evaluation of the antiderivative at both ends.
    let eval_anti = |x: f64| {
        let mut acc = 0.0;
        for (k, &a) in coeffs.iter().enumerate().rev() {
            acc = acc * x + a / (k as f64 + 1.0);
        }
        acc * x
    };
    eval_anti(hi) - eval_anti(lo)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn rejects_bad_mass_and_bad_support() {
        assert!(Distribution::new(0.0, 1.0, vec![Atom { x: 0.5, p: 0.9 }], vec![]).is_err());
        assert!(Distribution::new(0.0, 1.0, vec![Atom { x: 1.5, p: 1.0 }], vec![]).is_err());
        assert!(Distribution::new(
            0.0,
            1.0,
            vec![],
            vec![Segment { lo: 0.5, hi: 0.5, p: 1.0 }]
        )
        .is_err());
        assert!(Distribution::new(0.0, 1.0, vec![Atom { x: 0.5, p: -0.1 }, Atom { x: 0.6, p: 1.1 }], vec![])
            .is_err());
    }

    #[test]
    fn cdf_examples() {
        let atom = Distribution::degenerate(0.0, 10.0, 5.0).unwrap();
        assert_eq!(atom.cdf(4.0).unwrap(), 0.0);
        assert_eq!(atom.cdf(5.0).unwrap(), 1.0); // right-continuous at the atom

        let unif = Distribution::uniform(0.0, 1.0).unwrap();
        assert!(close(unif.cdf(0.25).unwrap(), 0.25, 1e-15));

        let mix = Distribution::new(
            0.0,
            1.0,
            vec![Atom { x: 0.0, p: 1.0 / 3.0 }],
            vec![Segment { lo: 0.0, hi: 1.0, p: 2.0 / 3.0 }],
        )
        .unwrap();
        assert!(close(mix.cdf(0.5).unwrap(), 2.0 / 3.0, 1e-15));
        assert!(mix.cdf(1.5).is_err());
    }

    #[test]
    fn cdf_integral_examples() {
        let unif = Distribution::uniform(0.0, 1.0).unwrap();
        assert!(close(unif.cdf_integral(1.0).unwrap(), 0.5, 1e-15));

        let (a1, b1) = (0.2, 1.7);
        let u = Distribution::uniform(a1, b1).unwrap();
        for c in [0.3, 0.9, 1.35, 1.7] {
            let expected = (c - a1) * (c - a1) / (2.0 * (b1 - a1));
            assert!(close(u.cdf_integral(c).unwrap(), expected, 1e-14));
        }

        let bin = Distribution::binary(0.0, 1.0, 0.0, 1.0 / 3.0, 1.0).unwrap();
        for c in [0.1, 0.5, 0.99] {
            assert!(close(bin.cdf_integral(c).unwrap(), c / 3.0, 1e-15));
        }
    }

    #[test]
    fn cdf_double_integral_examples() {
        let (a1, b1) = (0.2, 1.7);
        let u = Distribution::uniform(a1, b1).unwrap();
        for c in [0.3, 0.9, 1.7] {
            let expected = (c - a1).powi(3) / (6.0 * (b1 - a1));
            assert!(close(u.cdf_double_integral(c).unwrap(), expected, 1e-14));
        }

        let atom = Distribution::degenerate(0.0, 2.0, 0.0).unwrap();
        for c in [0.4, 1.0, 2.0] {
            assert!(close(atom.cdf_double_integral(c).unwrap(), c * c / 2.0, 1e-15));
        }

        let bin = Distribution::binary(0.0, 1.0, 0.0, 1.0 / 3.0, 1.0).unwrap();
        assert!(close(bin.cdf_double_integral(1.0).unwrap(), 1.0 / 6.0, 1e-15));
    }

    #[test]
    fn partial_moment_examples() {
        let atom = Distribution::degenerate(0.0, 10.0, 5.0).unwrap();
        assert!(close(atom.partial_moment(7.0, 2).unwrap(), 4.0, 1e-15));

        let unif = Distribution::uniform(0.0, 1.0).unwrap();
        assert!(close(unif.partial_moment(1.0, 2).unwrap(), 1.0 / 3.0, 1e-15));

        // k = 0 convention.
        assert_eq!(unif.partial_moment(0.3, 0).unwrap(), 1.0);

        // k = 2 ties to the double integral.
        let mix = Distribution::new(
            0.0,
            1.0,
            vec![Atom { x: 0.25, p: 0.5 }],
            vec![Segment { lo: 0.1, hi: 0.9, p: 0.5 }],
        )
        .unwrap();
        for c in [0.2, 0.5, 0.8, 1.0] {
            let pm = mix.partial_moment(c, 2).unwrap();
            let dd = mix.cdf_double_integral(c).unwrap();
            assert!(close(pm, 2.0 * dd, 1e-14), "pm={pm} dd={dd}");
        }
    }

    #[test]
    fn product_hinge_examples() {
        let unif = Distribution::uniform(0.0, 1.0).unwrap();
        // (0.5, 0.5) reduces to the squared partial moment.
        let got = unif.product_hinge_moment(&[0.5, 0.5]).unwrap();
        assert!(close(got, 1.0 / 24.0, 1e-15));
        // Hinge at the left endpoint vanishes.
        assert_eq!(unif.product_hinge_moment(&[0.0, 0.7, 0.9]).unwrap(), 0.0);
        // Sorted pair matches the integral identity.
        let (c1, c2) = (0.3, 0.8);
        let lhs = unif.product_hinge_moment(&[c1, c2]).unwrap();
        let rhs = (c2 - c1) * unif.cdf_integral(c1).unwrap() + 2.0 * unif.cdf_double_integral(c1).unwrap();
        assert!(close(lhs, rhs, 1e-14));
    }

    #[test]
    fn moment_examples() {
        let bin = Distribution::binary(0.0, 1e6, 0.0, 0.45, 1e6).unwrap();
        assert!(close(bin.expectation(), 550_000.0, 1e-6));

        let unif = Distribution::uniform(2.0, 5.0).unwrap();
        assert!(close(unif.expectation(), 3.5, 1e-14));

        let atom = Distribution::degenerate(0.0, 4.0, 3.0).unwrap();
        assert_eq!(atom.expectation(), 3.0);
        assert_eq!(atom.second_moment(), 9.0);
    }

    #[test]
    fn serde_round_trip_and_schema() {
        let mix = Distribution::new(
            0.0,
            1.0,
            vec![Atom { x: 0.0, p: 1.0 / 3.0 }],
            vec![Segment { lo: 0.0, hi: 1.0, p: 2.0 / 3.0 }],
        )
        .unwrap();
        let js = serde_json::to_string(&mix).unwrap();
        assert!(js.contains("\"atoms\""), "{js}");
        assert!(js.contains("\"segments\""), "{js}");
        assert!(js.contains("\"a\""), "{js}");
        let back: Distribution = serde_json::from_str(&js).unwrap();
        assert_eq!(mix, back);

        // Invalid payloads are rejected at parse time.
        let bad = r#"{"a":0,"b":1,"atoms":[{"x":0.5,"p":0.5}],"segments":[]}"#;
        assert!(serde_json::from_str::<Distribution>(bad).is_err());
    }
}
