//! Structured run reports with provenance, rendered as JSON or stable text.

use std::fmt::Write as _;

use serde::Serialize;

use crate::engines::{BoundKind, Cost, DimensionResult};
use crate::learner::Trajectory;
use crate::preference::FamilyVerdict;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InputDigest {
    pub role: String,
    pub sha256: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Provenance {
    pub tool: String,
    pub version: String,
    pub inputs: Vec<InputDigest>,
    pub budget_nodes: usize,
    pub initial_target: String,
    pub tie_mode: String,
}

impl Provenance {
    pub fn new(budget_nodes: usize, initial_target: impl Into<String>, tie_mode: impl Into<String>) -> Self {
        Provenance {
            tool: env!("CARGO_PKG_NAME").into(),
            version: env!("CARGO_PKG_VERSION").into(),
            inputs: Vec::new(),
            budget_nodes,
            initial_target: initial_target.into(),
            tie_mode: tie_mode.into(),
        }
    }

    pub fn input(&mut self, role: impl Into<String>, bytes: &[u8]) {
        use sha2::{Digest, Sha256};
        self.inputs.push(InputDigest {
            role: role.into(),
            sha256: hex::encode(Sha256::digest(bytes)),
        });
    }
}

/// `TD(σ)` from one start hypothesis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TdRow {
    pub h0: String,
    pub value: Cost,
    pub per_target: Vec<(String, Cost)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimulationReport {
    pub h0: String,
    pub target: String,
    pub trajectory: Trajectory,
    pub dump: String,
}

/// One expected-versus-actual comparison.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub ok: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, expected: impl ToString, actual: impl ToString) -> Self {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        Check {
            name: name.into(),
            ok: expected == actual,
            expected,
            actual,
        }
    }

    /// A check that passes when `ok`, whatever the rendered values.
    pub fn holds(name: impl Into<String>, expected: impl ToString, actual: impl ToString, ok: bool) -> Self {
        Check {
            name: name.into(),
            expected: expected.to_string(),
            actual: actual.to_string(),
            ok,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub provenance: Provenance,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub results: Vec<DimensionResult>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub td: Vec<TdRow>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub verdicts: Vec<FamilyVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub simulation: Option<SimulationReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(command: impl Into<String>, provenance: Provenance) -> Self {
        Report {
            command: command.into(),
            provenance,
            results: Vec::new(),
            td: Vec::new(),
            verdicts: Vec::new(),
            simulation: None,
            checks: Vec::new(),
            certificate: None,
            notes: Vec::new(),
        }
    }

    pub fn all_checks_pass(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    pub fn all_verdicts_hold(&self) -> bool {
        self.verdicts.iter().all(|v| v.holds)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Human-readable form; contains no timestamps or paths, so it is stable.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} ({} {})", self.command, self.provenance.tool, self.provenance.version);
        for r in &self.results {
            let kind = match r.bound_kind {
                BoundKind::Exact => "",
                BoundKind::Upper => " (upper bound)",
                BoundKind::Lower => " (lower bound)",
            };
            let _ = writeln!(out, "{:<18} {}{kind}", r.measure, r.value);
        }
        if !self.td.is_empty() {
            for row in &self.td {
                let _ = writeln!(out, "TD from {:<8} {}", row.h0, row.value);
            }
            if self.td.len() > 1 {
                let min = self.td.iter().map(|r| r.value).min().expect("nonempty");
                let max = self.td.iter().map(|r| r.value).max().expect("nonempty");
                let _ = writeln!(out, "TD over h0: min {min} max {max}");
            }
        }
        for v in &self.verdicts {
            let _ = writeln!(out, "{:<18} {}", v.property, if v.holds { "holds" } else { "fails" });
            if let Some(cx) = &v.counterexample {
                let _ = writeln!(out, "  counterexample: {}", cx.detail);
                for t in &cx.triples {
                    let _ = writeln!(
                        out,
                        "  sigma(h{}; {:?}, h{}) = {}",
                        t.candidate, t.version_space, t.current, t.rank
                    );
                }
                if !cx.examples.is_empty() {
                    let zs: Vec<String> = cx.examples.iter().map(ToString::to_string).collect();
                    let _ = writeln!(out, "  examples: {}", zs.join(" "));
                }
            }
        }
        if let Some(s) = &self.simulation {
            out.push_str(&s.dump);
            let _ = writeln!(
                out,
                "{} {} -> {} in {} steps",
                if s.trajectory.terminated { "reached" } else { "did not reach" },
                s.h0,
                s.target,
                s.trajectory.steps_used
            );
        }
        for c in &self.checks {
            let _ = writeln!(
                out,
                "{} {}: expected {} got {}",
                if c.ok { "ok  " } else { "FAIL" },
                c.name,
                c.expected,
                c.actual
            );
        }
        for n in &self.notes {
            let _ = writeln!(out, "note: {n}");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engines::Witness;

    #[test]
    fn json_is_deterministic() {
        let mut p = Provenance::new(10, "reteach", "adversarial");
        p.input("class", b"a: 0 1\n");
        let mut r = Report::new("compute", p);
        r.results.push(DimensionResult::exact("vcd", 2, Witness::Shattered(vec![0, 1])));
        r.checks.push(Check::new("vcd", 2, 2));
        assert_eq!(r.to_json(), r.clone().to_json());
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["results"][0]["value"], 2);
        assert!(r.to_text().contains("vcd"));
        assert!(r.all_checks_pass());
    }
}
