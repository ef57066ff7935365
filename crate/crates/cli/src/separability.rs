//! Shared separability-status block for the game reports.

use std::cmp::Ordering;

use ppsim_core::qstate::{separability_threshold, separability_threshold_denominator, Epsilon};
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct SeparabilityStatus {
    pub total_qubits: usize,
    pub threshold: f64,
    /// Exact form of the threshold, `1/(1 + 2^(2m-1))`.
    pub threshold_exact: Option<String>,
    /// "below" | "at" | "above", compared exactly for rational epsilon.
    pub relation: &'static str,
    /// Separability is guaranteed at every circuit step only strictly below
    /// the threshold.
    pub certified_separable: bool,
}

impl SeparabilityStatus {
    pub fn for_epsilon(epsilon: &Epsilon, total_qubits: usize) -> Self {
        let relation = match epsilon.cmp_separability_threshold(total_qubits) {
            Ordering::Less => "below",
            Ordering::Equal => "at",
            Ordering::Greater => "above",
        };
        SeparabilityStatus {
            total_qubits,
            threshold: separability_threshold(total_qubits).expect("qubit count >= 1"),
            threshold_exact: separability_threshold_denominator(total_qubits)
                .map(|den| format!("1/{den}")),
            relation,
            certified_separable: relation == "below",
        }
    }

    pub fn render(&self) -> String {
        let bound = self
            .threshold_exact
            .clone()
            .unwrap_or_else(|| crate::output::fmt_f64(self.threshold));
        let tail = match self.relation {
            "below" => " (state stays separable at every circuit step)",
            "above" => " (separability not certified)",
            _ => "",
        };
        format!(
            "epsilon is {} separability threshold {} for {} qubits{}",
            self.relation, bound, self.total_qubits, tail
        )
    }
}
