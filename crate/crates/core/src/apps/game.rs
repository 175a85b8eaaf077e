//! Two-player search game with one-sided incomplete information.
//!
//! Both players exert effort in `[0, 1]`; a match is worth one and occurs
//! with probability `e1 · e2`. The informed player's cost is
//! `e^(k+1) / ((k+1)(1-θ)^l)` with private type `θ`; the uninformed
//! player's cost is `e^(m+1)/(m+1)` and their belief over `θ` is a
//! distribution on `[0, 1)`. The informed best response is
//! `e2(θ) = e1^(1/k) (1-θ)^(l/k)`, so the uninformed best-response map is
//! `y(e) = (e^(1/k) · M)^(1/m)` with `M = E[(1-θ)^(l/k)]`; iterating from
//! `e = 1` descends monotonically to the greatest fixed point.

use serde::{Deserialize, Serialize};

use crate::checks::{check_sosd, check_two_sufficient};
use crate::distribution::{Distribution, IntervalBounds};
use crate::error::{domain, numeric, precondition, Error};
use crate::oracle::oracle_dominance;
use crate::verdict::{OrderVerdict, Outcome};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchGame {
    /// Informed player's cost curvature.
    pub k: f64,
    /// Informed player's type sensitivity; requires `l >= alpha * k`.
    pub l: f64,
    /// Concavity degree of the belief-shift order.
    pub alpha: f64,
    /// Uninformed player's cost exponent `m` in `e^(m+1)/(m+1)`, `m >= 1`.
    pub cost_exponent: f64,
    /// Belief over the informed player's type on `[0, 1)`; an atom at 1 is
    /// accepted with the zero-effort convention and flagged in the output.
    pub belief: Distribution,
}

impl SearchGame {
    pub fn validate(&self) -> Result<(), Error> {
        if !(self.k > 0.0) || !(self.l > 0.0) {
            return Err(domain(format!("k and l must be positive, got k = {}, l = {}", self.k, self.l)));
        }
        if !(self.alpha >= 1.0) {
            return Err(domain(format!("alpha must be >= 1, got {}", self.alpha)));
        }
        if self.l < self.alpha * self.k {
            return Err(domain(format!(
                "monotone comparative statics require l >= alpha k, got l = {} < {}",
                self.l,
                self.alpha * self.k
            )));
        }
        if !(self.cost_exponent >= 1.0) {
            return Err(domain(format!(
                "cost exponent m must be >= 1 for a strictly convex cost, got {}",
                self.cost_exponent
            )));
        }
        let (lo, hi) = self.belief.support_range();
        if lo < 0.0 || hi > 1.0 {
            return Err(domain(format!("belief support [{lo}, {hi}] must lie within [0, 1]")));
        }
        Ok(())
    }

    /// Mass the belief puts exactly on the boundary type `θ = 1`.
    fn boundary_mass(&self) -> f64 {
        self.belief.atoms().iter().filter(|a| a.x == 1.0).map(|a| a.p).sum()
    }

    /// `M = E[(1-θ)^(l/k)]`, exact per mixture component.
    pub fn hinge_mean(&self) -> f64 {
        let r = self.l / self.k;
        self.belief.expect_with(
            |t| (1.0 - t).powf(r),
            |t| -(1.0 - t).powf(r + 1.0) / (r + 1.0),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Equilibrium {
    /// Greatest fixed point of the uninformed best-response map.
    pub effort_uninformed: f64,
    /// `E[(1-θ)^(l/k)]` under the belief.
    pub hinge_mean: f64,
    /// Type decay exponent `l/k`.
    pub decay: f64,
    /// `1/k`, the informed response elasticity.
    pub inv_k: f64,
    /// `E[match(θ)]` under the belief.
    pub expected_match: f64,
    pub iterations: u64,
    /// Belief mass at the boundary type `θ = 1` (served with zero effort).
    pub boundary_mass: f64,
}

impl Equilibrium {
    /// Informed player's equilibrium effort at type `θ`.
    pub fn informed_effort(&self, theta: f64) -> f64 {
        self.effort_uninformed.powf(self.inv_k) * (1.0 - theta).powf(self.decay)
    }

    /// Equilibrium matching probability at type `θ`.
    pub fn match_probability(&self, theta: f64) -> f64 {
        self.effort_uninformed * self.informed_effort(theta)
    }
}

/// Compute the greatest equilibrium by monotone best-response iteration
/// from `e = 1`.
pub fn diamond_equilibrium(game: &SearchGame) -> Result<Equilibrium, Error> {
    game.validate()?;
    let m = game.cost_exponent;
    let inv_k = 1.0 / game.k;
    let hinge_mean = game.hinge_mean();
    let respond = |e: f64| -> f64 { (e.powf(inv_k) * hinge_mean).powf(1.0 / m).clamp(0.0, 1.0) };
    let mut e = 1.0f64;
    let mut iterations = 0u64;
    const CAP: u64 = 1_000_000;
    loop {
        let next = respond(e);
        iterations += 1;
        if (next - e).abs() < 1e-12 {
            e = next;
            break;
        }
        if next > e + 1e-15 {
            return Err(numeric(format!(
                "best-response iteration increased from {e} to {next}; the map must descend from 1"
            )));
        }
        if iterations >= CAP {
            return Err(numeric(format!(
                "best-response iteration did not converge within {CAP} steps (last step {:.3e})",
                (next - e).abs()
            )));
        }
        e = next;
    }
    let expected_match = e.powf(1.0 + inv_k) * hinge_mean;
    Ok(Equilibrium {
        effort_uninformed: e,
        hinge_mean,
        decay: game.l / game.k,
        inv_k,
        expected_match,
        iterations,
        boundary_mass: game.boundary_mass(),
    })
}

/// Which check certified the belief shift.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GameCertificate {
    /// Second-order dominance (sound for every `alpha >= 1`).
    Sosd,
    /// Two-hinge sufficient dominance (sound for `alpha >= 2`).
    TwoSufficient,
    /// Refutation oracle found no counterexample at the game's `alpha`.
    OracleSupported,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GameComparison {
    pub certificate: GameCertificate,
    pub dominance: OrderVerdict,
    pub shifted: Equilibrium,
    pub base: Equilibrium,
    /// Worst value of `match_shifted(θ) - match_base(θ)` on the grid.
    pub worst_curve_gap: f64,
    pub pointwise_ordered: bool,
    pub expected_ordered: bool,
    /// The two equivalent readings of the comparative statics direction.
    pub readings: [String; 2],
}

/// Compare the greatest-equilibrium match curves under a shifted belief
/// against the game's own belief, certifying first that the shifted
/// belief dominates in the game's concave order.
///
/// The shift direction follows the order: a belief that dominates in the
/// concave order on `[0, 1]` lowers `E[(1-θ)^(l/k)]` whenever
/// `l >= alpha k`, hence lowers both efforts and the match curve
/// pointwise. Equivalently, read through decreasing convex test
/// functions, the base belief dominates the shifted one and raises
/// matching. Both readings are surfaced in the result.
pub fn compare_game(game: &SearchGame, shifted_belief: &Distribution) -> Result<GameComparison, Error> {
    game.validate()?;
    let unit = IntervalBounds::new(0.0, 1.0)?;
    let (lo, hi) = shifted_belief.support_range();
    if lo < 0.0 || hi > 1.0 {
        return Err(domain(format!("shifted belief support [{lo}, {hi}] must lie within [0, 1]")));
    }
    let alpha = game.alpha;
    // Sound certificates: second-order dominance implies every concave
    // order; the two-hinge check implies orders of degree >= 2.
    let sosd = check_sosd(shifted_belief, &game.belief, unit)?;
    let (certificate, dominance) = if sosd.dominates() {
        (GameCertificate::Sosd, sosd)
    } else if alpha >= 2.0 {
        let two = check_two_sufficient(shifted_belief, &game.belief, unit)?;
        if two.dominates() {
            (GameCertificate::TwoSufficient, two)
        } else {
            let orc = oracle_dominance(shifted_belief, &game.belief, alpha, unit, 400, 8, 0x6A3E)?;
            if orc.outcome == Outcome::Inconclusive {
                (GameCertificate::OracleSupported, orc)
            } else {
                return Err(precondition(
                    "belief shift not certified: two-sufficient check fails and the oracle found a counterexample",
                ));
            }
        }
    } else {
        let orc = oracle_dominance(shifted_belief, &game.belief, alpha, unit, 400, 8, 0x6A3E)?;
        if orc.outcome == Outcome::Inconclusive {
            (GameCertificate::OracleSupported, orc)
        } else {
            return Err(precondition(
                "belief shift not certified: second-order check fails and the oracle found a counterexample",
            ));
        }
    };

    let base = diamond_equilibrium(game)?;
    let shifted_game = SearchGame { belief: shifted_belief.clone(), ..game.clone() };
    let shifted = diamond_equilibrium(&shifted_game)?;

    let mut worst_curve_gap = f64::NEG_INFINITY;
    for i in 0..=100 {
        let theta = i as f64 / 100.0;
        worst_curve_gap = worst_curve_gap.max(shifted.match_probability(theta) - base.match_probability(theta));
    }
    let pointwise_ordered = worst_curve_gap <= 1e-9;
    let expected_ordered = shifted.expected_match <= base.expected_match + 1e-9;
    let readings = [
        "shifted belief dominates in the concave order: its highest-equilibrium match curve lies below the base curve".to_string(),
        "equivalently, the base belief dominates in the decreasing-convex order and carries the higher match curve".to_string(),
    ];
    Ok(GameComparison {
        certificate,
        dominance,
        shifted,
        base,
        worst_curve_gap,
        pointwise_ordered,
        expected_ordered,
        readings,
    })
}
