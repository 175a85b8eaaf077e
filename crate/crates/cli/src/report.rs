//! Machine-readable run reports.
//!
//! Re-running the identical command on identical inputs yields a
//! byte-identical report apart from the `timings_ms` values; maps are
//! ordered so serialization is stable.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use stochord::OrderVerdict;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LabeledVerdict {
    pub label: String,
    #[serde(flatten)]
    pub verdict: OrderVerdict,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    /// Hex SHA-256 over the resolved inputs (file bytes and flags).
    pub inputs_digest: String,
    pub verdicts: Vec<LabeledVerdict>,
    pub solver_outputs: BTreeMap<String, serde_json::Value>,
    pub timings_ms: BTreeMap<String, f64>,
    pub tool_version: String,
}

impl Report {
    pub fn new(command: &str, digest: InputDigest) -> Report {
        Report {
            command: command.to_string(),
            inputs_digest: digest.finish(),
            verdicts: Vec::new(),
            solver_outputs: BTreeMap::new(),
            timings_ms: BTreeMap::new(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn push_verdict(&mut self, label: &str, verdict: OrderVerdict) {
        self.verdicts.push(LabeledVerdict { label: label.to_string(), verdict });
    }

    pub fn set_output(&mut self, key: &str, value: impl Serialize) {
        self.solver_outputs.insert(
            key.to_string(),
            serde_json::to_value(value).expect("solver output serializes"),
        );
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// Accumulates the content hash of every resolved input in a fixed order.
pub struct InputDigest {
    hasher: Sha256,
}

impl InputDigest {
    pub fn new(command: &str) -> InputDigest {
        let mut hasher = Sha256::new();
        hasher.update(command.as_bytes());
        InputDigest { hasher }
    }

    pub fn add(&mut self, label: &str, bytes: &[u8]) {
        self.hasher.update([0u8]);
        self.hasher.update(label.as_bytes());
        self.hasher.update([0u8]);
        self.hasher.update(bytes);
    }

    pub fn add_str(&mut self, label: &str, value: &str) {
        self.add(label, value.as_bytes());
    }

    fn finish(self) -> String {
        hex::encode(self.hasher.finalize())
    }
}

/// Millisecond stopwatch for a report phase.
pub struct Phase {
    start: Instant,
}

impl Phase {
    pub fn start() -> Phase {
        Phase { start: Instant::now() }
    }

    pub fn record(self, report: &mut Report, name: &str) {
        report.timings_ms.insert(name.to_string(), self.start.elapsed().as_secs_f64() * 1e3);
    }
}
