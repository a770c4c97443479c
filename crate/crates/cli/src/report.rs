//! The JSON object emitted once per input: command, class, membership,
//! certificate, auxiliary sections, and instrumentation.

use domcover::Certificate;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerdictReport {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub class: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub input: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub member: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub certificate: Option<Certificate>,
    /// Original label of each dense vertex id, for ingested graph files.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub labels: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub oracle: Option<OracleSection>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub tree: Option<TreeSection>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub grid: Option<GridSection>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub bench: Option<BenchSection>,
    /// Absent on deterministic outputs such as `tree gen`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub stats: Option<Stats>,
}

impl VerdictReport {
    pub fn new(command: &str) -> Self {
        VerdictReport {
            command: command.to_string(),
            class: None,
            input: None,
            member: None,
            certificate: None,
            labels: None,
            oracle: None,
            tree: None,
            grid: None,
            bench: None,
            stats: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stats {
    pub pair_checks: u64,
    pub oracle_nodes: u64,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleEntry {
    pub value: usize,
    pub witness: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleSection {
    pub gamma: OracleEntry,
    pub beta: OracleEntry,
    pub alpha: OracleEntry,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeSection {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub edges: Option<Vec<(usize, usize)>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub script: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub steps: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridSection {
    pub vertical_count: usize,
    pub horizontal_count: usize,
    pub crossing_count: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenchSection {
    pub order: usize,
    pub smaller_side: usize,
}

#[cfg(test)]
mod tests {
    use super::*;
    use domcover::{Certificate, Rule};

    #[test]
    fn report_round_trips_losslessly() {
        let report = VerdictReport {
            command: "recognize".into(),
            class: Some("B".into()),
            input: Some("graph.txt".into()),
            member: Some(false),
            certificate: Some(Certificate::ViolatedCondition {
                rule: Rule::PairWitness,
                vertices: vec![3, 5],
            }),
            labels: Some(vec![10, 20, 30, 40, 50, 60]),
            oracle: None,
            tree: None,
            grid: None,
            bench: None,
            stats: Some(Stats {
                pair_checks: 9,
                oracle_nodes: 0,
                elapsed_ms: 1,
            }),
        };
        let json = serde_json::to_string(&report).unwrap();
        let back: VerdictReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report);

        let sparse = VerdictReport::new("oracle");
        let json = serde_json::to_string(&sparse).unwrap();
        let back: VerdictReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, sparse);
    }
}
