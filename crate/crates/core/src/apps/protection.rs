//! Self-protection decision rule.
//!
//! Spending `e_x > e_y` on protection lowers the loss probability from
//! `q` to `p`. Lottery `X` (protect) yields `w - L - e_x` with probability
//! `p` and `w - e_x` otherwise; lottery `Y` (do not protect) yields
//! `w - L - e_y` with probability `q` and `w - e_y` otherwise. Under the
//! expected-value precondition `E[X] >= E[Y]`, the low-protection lottery
//! dominates in the two-concave order exactly when
//!
//! ```text
//! p (e_x - e_y + L)^2 + (1 - p)(e_x - e_y)^2 >= q L^2,
//! ```
//!
//! in which case no decision maker in the order's generator set gains
//! from the extra protection.

use serde::{Deserialize, Serialize};

use crate::checks::{COND_EXPECTATION_PRE, COND_TWO_POINT};
use crate::error::{domain, Error};
use crate::verdict::{OrderVerdict, Outcome, DEFAULT_TOLERANCE};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProtectionProblem {
    pub wealth: f64,
    pub loss: f64,
    /// Expenditure under the protective action, `e_x`.
    pub expense_high: f64,
    /// Expenditure under the status quo, `e_y`.
    pub expense_low: f64,
    /// Loss probability with protection, `p`.
    pub prob_high: f64,
    /// Loss probability without protection, `q > p`.
    pub prob_low: f64,
}

impl ProtectionProblem {
    pub fn validate(&self) -> Result<(), Error> {
        let ProtectionProblem { loss, expense_high: ex, expense_low: ey, prob_high: p, prob_low: q, .. } =
            *self;
        if !(loss > 0.0) {
            return Err(domain(format!("loss must be positive, got {loss}")));
        }
        if !(ey >= 0.0 && ex >= ey) {
            return Err(domain(format!("expenditures must satisfy e_x >= e_y >= 0, got {ex} and {ey}")));
        }
        if !(0.0..=1.0).contains(&p) || !(0.0..=1.0).contains(&q) || q < p {
            return Err(domain(format!("loss probabilities must satisfy 0 <= p <= q <= 1, got {p}, {q}")));
        }
        // Without this the protected worst case is no better than the
        // unprotected best case and the comparison is trivial.
        if !(self.wealth - ex > self.wealth - loss - ey) {
            return Err(domain(format!("non-triviality requires e_x < L + e_y, got e_x = {ex}, L = {loss}, e_y = {ey}")));
        }
        Ok(())
    }

    /// The induced two-point supports `(x1, x2, x3, x4)` on
    /// `[w - L - e_x, w - e_y]`: `X = {x1: p, x3: 1-p}`, `Y = {x2: q, x4: 1-q}`.
    pub fn as_two_point(&self) -> (f64, f64, f64, f64) {
        let w = self.wealth;
        (
            w - self.loss - self.expense_high,
            w - self.loss - self.expense_low,
            w - self.expense_high,
            w - self.expense_low,
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Recommendation {
    /// The unprotected lottery dominates: do not increase self-protection.
    DoNotIncrease,
    /// The order does not rank the lotteries (dominance fails or the
    /// expected-value precondition is silent).
    NotJustifiedByOrder,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProtectionVerdict {
    pub verdict: OrderVerdict,
    pub recommendation: Recommendation,
    /// `E[X] - E[Y]`, the expected-value precondition slack.
    pub expectation_gap: f64,
}

/// Decide whether the low-protection lottery dominates the protective one
/// in the two-concave order on the induced interval.
pub fn self_protection_verdict(problem: &ProtectionProblem) -> Result<ProtectionVerdict, Error> {
    problem.validate()?;
    let ProtectionProblem { loss, expense_high: ex, expense_low: ey, prob_high: p, prob_low: q, .. } =
        *problem;
    let mean_x = -p * loss - ex;
    let mean_y = -q * loss - ey;
    let expectation_gap = mean_x - mean_y;
    if expectation_gap < -1e-12 {
        let verdict = OrderVerdict::inconclusive(
            COND_EXPECTATION_PRE,
            expectation_gap,
            format!(
                "protection raises the expected outcome by {:.6}; the dominance equivalence is stated only when it does not",
                -expectation_gap
            ),
        );
        return Ok(ProtectionVerdict { verdict, recommendation: Recommendation::NotJustifiedByOrder, expectation_gap });
    }
    let de = ex - ey;
    let margin = p * (de + loss) * (de + loss) + (1.0 - p) * de * de - q * loss * loss;
    let (_, _, _, x4) = problem.as_two_point();
    let verdict = OrderVerdict::from_margin(COND_TWO_POINT, margin, vec![x4], DEFAULT_TOLERANCE);
    let recommendation = if verdict.outcome == Outcome::Dominates {
        Recommendation::DoNotIncrease
    } else {
        Recommendation::NotJustifiedByOrder
    };
    Ok(ProtectionVerdict { verdict, recommendation, expectation_gap })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::checks::check_two_point;

    fn problem(ex: f64, p: f64, q: f64) -> ProtectionProblem {
        ProtectionProblem {
            wealth: 2.0,
            loss: 1.0,
            expense_high: ex,
            expense_low: 0.0,
            prob_high: p,
            prob_low: q,
        }
    }

    #[test]
    fn derived_instances() {
        let v1 = self_protection_verdict(&problem(0.4, 0.5, 0.9)).unwrap();
        assert_eq!(v1.recommendation, Recommendation::DoNotIncrease);
        assert!((v1.verdict.margin - 0.16).abs() < 1e-12, "{:?}", v1.verdict);

        let v2 = self_protection_verdict(&problem(0.35, 0.5, 0.9)).unwrap();
        assert_eq!(v2.recommendation, Recommendation::DoNotIncrease);
        assert!((v2.verdict.margin - 0.0725).abs() < 1e-12, "{:?}", v2.verdict);
        // Precondition slack: -0.85 >= -0.9.
        assert!((v2.expectation_gap - 0.05).abs() < 1e-12);
    }

    #[test]
    fn loss_probability_flips_work_through_both_gates() {
        // Raising q tightens the second-moment inequality: at e_x = 0.35
        // the left side is 0.9725, so q = 0.98 breaks dominance.
        let v = self_protection_verdict(&problem(0.35, 0.5, 0.98)).unwrap();
        assert_eq!(v.verdict.outcome, Outcome::FailsAt);
        assert_eq!(v.recommendation, Recommendation::NotJustifiedByOrder);
        // q = 0.95 is not enough on either instance (left sides 1.06, 0.9725).
        for ex in [0.4, 0.35] {
            let keep = self_protection_verdict(&problem(ex, 0.5, 0.95)).unwrap();
            assert_eq!(keep.verdict.outcome, Outcome::Dominates, "e_x = {ex}");
        }
        // Lowering q breaks the expected-value precondition instead: at
        // e_x = 0.4 the gap is q - 0.9.
        let v2 = self_protection_verdict(&problem(0.4, 0.5, 0.85)).unwrap();
        assert_eq!(v2.verdict.outcome, Outcome::Inconclusive);
    }

    #[test]
    fn degenerate_equal_lotteries() {
        let p = ProtectionProblem {
            wealth: 2.0,
            loss: 1.0,
            expense_high: 0.2,
            expense_low: 0.2,
            prob_high: 0.6,
            prob_low: 0.6,
        };
        let v = self_protection_verdict(&p).unwrap();
        assert_eq!(v.verdict.outcome, Outcome::Dominates);
        // Identical lotteries: p L^2 + 0 vs q L^2 with p = q.
        assert_eq!(v.verdict.margin, 0.0);
    }

    #[test]
    fn precondition_failure_is_inconclusive() {
        // Protection so expensive it lowers the expected outcome: the
        // equivalence is silent there.
        let v = self_protection_verdict(&problem(0.5, 0.5, 0.9)).unwrap();
        assert_eq!(v.verdict.outcome, Outcome::Inconclusive);
        assert_eq!(v.recommendation, Recommendation::NotJustifiedByOrder);
    }

    #[test]
    fn invalid_problems_are_rejected() {
        // Protection too expensive: trivial comparison.
        assert!(self_protection_verdict(&problem(1.2, 0.5, 0.9)).is_err());
        // q < p.
        assert!(self_protection_verdict(&problem(0.4, 0.9, 0.5)).is_err());
    }

    #[test]
    fn agrees_with_the_two_point_checker() {
        for (ex, p, q) in [(0.4, 0.5, 0.9), (0.35, 0.5, 0.9), (0.35, 0.5, 0.98), (0.4, 0.5, 0.85), (0.5, 0.5, 0.9)] {
            let pb = problem(ex, p, q);
            let direct = self_protection_verdict(&pb).unwrap();
            let (x1, x2, x3, x4) = pb.as_two_point();
            let reference = check_two_point(x1, x2, x3, x4, p, q).unwrap();
            assert_eq!(direct.verdict.outcome, reference.outcome, "ex={ex} q={q}");
            assert!((direct.verdict.margin - reference.margin).abs() < 1e-12);
        }
    }

    #[test]
    fn agrees_with_the_two_point_checker_on_random_problems() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(808);
        let mut done = 0;
        while done < 100 {
            let loss: f64 = rng.gen_range(0.2..2.0);
            let ey = rng.gen_range(0.0..0.3);
            let ex = ey + rng.gen_range(0.0..loss.min(0.8)) * 0.99;
            let p = rng.gen_range(0.05..0.9);
            let q = rng.gen_range(p..1.0);
            let pb = ProtectionProblem {
                wealth: rng.gen_range(1.5..4.0),
                loss,
                expense_high: ex,
                expense_low: ey,
                prob_high: p,
                prob_low: q,
            };
            if pb.validate().is_err() {
                continue;
            }
            done += 1;
            let direct = self_protection_verdict(&pb).unwrap();
            let (x1, x2, x3, x4) = pb.as_two_point();
            let reference = check_two_point(x1, x2, x3, x4, p, q).unwrap();
            assert_eq!(direct.verdict.outcome, reference.outcome, "{pb:?}");
            if direct.verdict.outcome != Outcome::Inconclusive {
                assert!((direct.verdict.margin - reference.margin).abs() < 1e-12);
            }
        }
    }
}
