//! Scenario-file schemas for the solver subcommands.
//!
//! Distributions may be given inline (the standard distribution object)
//! or as a path string pointing at a JSON file of the same shape.

use std::path::Path;

use serde::Deserialize;
use stochord::apps::ProtectionProblem;
use stochord::{Distribution, HingePowerFunction, SmoothUtility};

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum DistInput {
    Inline(Distribution),
    Path(String),
}

impl DistInput {
    /// Resolve to a distribution, reading through a file path relative to
    /// `base` when given as a string. Returns the resolved value plus the
    /// bytes that define it (for the input digest).
    pub fn resolve(&self, base: &Path) -> Result<(Distribution, Vec<u8>), String> {
        match self {
            DistInput::Inline(d) => {
                let bytes = serde_json::to_vec(d).expect("distribution serializes");
                Ok((d.clone(), bytes))
            }
            DistInput::Path(p) => {
                let path = base.join(p);
                let bytes = std::fs::read(&path)
                    .map_err(|e| format!("cannot read distribution file {}: {e}", path.display()))?;
                let d: Distribution = serde_json::from_slice(&bytes)
                    .map_err(|e| format!("invalid distribution in {}: {e}", path.display()))?;
                Ok((d, bytes))
            }
        }
    }
}

fn default_savings_tolerance() -> f64 {
    1e-8
}

#[derive(Debug, Clone, Deserialize)]
pub struct SavingsScenario {
    pub utility: SmoothUtility,
    pub wealth: f64,
    pub rate: f64,
    pub income: DistInput,
    /// Alternative income; when present the command compares the two.
    #[serde(default)]
    pub income_alt: Option<DistInput>,
    #[serde(default = "default_savings_tolerance")]
    pub tolerance: f64,
}

pub type ProtectScenario = ProtectionProblem;

#[derive(Debug, Clone, Deserialize)]
pub struct GameScenario {
    pub k: f64,
    pub l: f64,
    pub alpha: f64,
    pub cost_exponent: f64,
    pub belief: DistInput,
    /// Shifted belief; when present the command compares equilibria.
    #[serde(default)]
    pub belief_shifted: Option<DistInput>,
}

fn default_quad_points() -> usize {
    32
}

#[derive(Debug, Clone, Deserialize)]
pub struct HhScenario {
    pub function: HingePowerFunction,
    pub t: f64,
    pub gamma: f64,
    #[serde(default = "default_quad_points")]
    pub quad_points: usize,
}

fn default_sweep_grid() -> usize {
    64
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "target", rename_all = "kebab-case")]
pub enum SweepConfig {
    /// Sweep the outer right endpoint of a nested uniform pair.
    UniformPair { a1: f64, a2: f64, b2: f64, b1_from: f64, b1_to: f64, steps: usize },
    /// Certify a fixed pair at each concavity degree, using every sound
    /// integer-order sufficient check up to the degree.
    AlphaCertify {
        f: DistInput,
        g: DistInput,
        a: f64,
        b: f64,
        alphas: Vec<f64>,
        #[serde(default = "default_sweep_grid")]
        grid: usize,
    },
}
