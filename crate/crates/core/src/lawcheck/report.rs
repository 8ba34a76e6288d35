//! Serializable law verdicts.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

/// How a law's assignments were chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Mode {
    Exhaustive,
    Sampled { seed: u64, requested: usize },
}

/// A failing assignment with both sides rendered.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    /// Coordinates of the assignment, for standalone re-evaluation.
    pub cell: Vec<usize>,
    pub inputs: String,
    pub lhs: String,
    pub rhs: String,
}

/// The verdict for one law.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawOutcome {
    pub name: String,
    /// Assignments actually evaluated.
    pub checked: u64,
    /// Size of the full assignment space, saturating.
    pub space: u64,
    pub mode: Mode,
    pub failure_count: u64,
    /// The first failing assignments in enumeration order.
    pub failures: Vec<Witness>,
}

impl LawOutcome {
    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }
}

/// Verdicts for every law of a suite.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawReport {
    pub bx: String,
    pub effect: String,
    pub laws: Vec<LawOutcome>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.laws.iter().all(LawOutcome::passed)
    }

    pub fn law(&self, name: &str) -> Option<&LawOutcome> {
        self.laws.iter().find(|l| l.name == name)
    }

    pub fn failed_laws(&self) -> Vec<&str> {
        self.laws
            .iter()
            .filter(|l| !l.passed())
            .map(|l| l.name.as_str())
            .collect()
    }

    /// Concatenates the laws of several reports about the same subject.
    pub fn merge(mut self, other: LawReport) -> LawReport {
        self.laws.extend(other.laws);
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn render_text(&self) -> String {
        let mut out = format!("{} [{}]\n", self.bx, self.effect);
        for l in &self.laws {
            let mode = match l.mode {
                Mode::Exhaustive => "exhaustive".to_string(),
                Mode::Sampled { seed, .. } => format!("sampled, seed {seed}"),
            };
            let verdict = if l.passed() { "PASS" } else { "FAIL" };
            let _ = writeln!(
                out,
                "  {verdict} {} ({} checked, {mode})",
                l.name, l.checked
            );
            for w in &l.failures {
                let _ = writeln!(out, "       inputs: {}", w.inputs);
                let _ = writeln!(out, "       lhs:    {}", w.lhs);
                let _ = writeln!(out, "       rhs:    {}", w.rhs);
            }
            if l.failure_count > l.failures.len() as u64 {
                let _ = writeln!(
                    out,
                    "       ... {} failing assignments in total",
                    l.failure_count
                );
            }
        }
        out
    }
}
