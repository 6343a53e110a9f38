//! The stats record emitted by `--stats` and by `bench`: one flat JSON
//! object per line, schema-stable and locale-independent.

use listcolor3::{bound_value, BranchStats, Decision, SolveResult};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseCountsRecord {
    pub case1: u64,
    pub case2: u64,
    pub case3: u64,
    pub case4: u64,
    pub fallback: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StatsRecord {
    pub decision: String,
    pub nodes: u64,
    pub leaves: u64,
    pub mu_root: f64,
    pub bound_c_pow_mu: f64,
    pub case_counts: CaseCountsRecord,
    pub recurrence_violations: u64,
    pub hypothesis_fallbacks: u64,
    pub max_depth: u64,
    pub elapsed_ms: u64,
    pub seed: u64,
    pub aborted: bool,
    pub warnings: Vec<String>,
}

impl StatsRecord {
    pub fn new(decision: Decision, stats: &BranchStats, elapsed_ms: u64, seed: u64) -> StatsRecord {
        StatsRecord {
            decision: decision.to_string(),
            nodes: stats.nodes,
            leaves: stats.leaves,
            mu_root: stats.mu_root.value(),
            bound_c_pow_mu: bound_value(stats.mu_root),
            case_counts: CaseCountsRecord {
                case1: stats.case_counts.case1,
                case2: stats.case_counts.case2,
                case3: stats.case_counts.case3,
                case4: stats.case_counts.case4,
                fallback: stats.case_counts.fallback,
            },
            recurrence_violations: stats.recurrence_violations,
            hypothesis_fallbacks: stats.hypothesis_fallbacks,
            max_depth: stats.max_depth,
            elapsed_ms,
            seed,
            aborted: decision == Decision::Aborted,
            warnings: stats.warnings.clone(),
        }
    }

    pub fn from_result(result: &SolveResult, elapsed_ms: u64, seed: u64) -> StatsRecord {
        StatsRecord::new(result.decision, &result.stats, elapsed_ms, seed)
    }

    /// One line of JSON, trailing newline included.
    pub fn to_json_line(&self) -> String {
        let mut line = serde_json::to_string(self).expect("record serialization is infallible");
        line.push('\n');
        line
    }
}

/// Summary line closing a bench report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchSummary {
    pub count: usize,
    pub mismatches: usize,
    pub oracle_checked: usize,
    pub violation_free: usize,
    pub max_bound_ratio: Option<f64>,
}

impl BenchSummary {
    pub fn to_json_line(&self) -> String {
        let mut line = serde_json::to_string(self).expect("record serialization is infallible");
        line.push('\n');
        line
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schema_is_pinned() {
        let record = StatsRecord {
            decision: "CHOOSABLE".into(),
            nodes: 12,
            leaves: 9,
            mu_root: 7.5,
            bound_c_pow_mu: 8.015625,
            case_counts: CaseCountsRecord {
                case1: 1,
                case2: 0,
                case3: 4,
                case4: 2,
                fallback: 0,
            },
            recurrence_violations: 0,
            hypothesis_fallbacks: 0,
            max_depth: 5,
            elapsed_ms: 3,
            seed: 7,
            aborted: false,
            warnings: vec!["w".into()],
        };
        assert_eq!(
            record.to_json_line(),
            concat!(
                "{\"decision\":\"CHOOSABLE\",\"nodes\":12,\"leaves\":9,",
                "\"mu_root\":7.5,\"bound_c_pow_mu\":8.015625,",
                "\"case_counts\":{\"case1\":1,\"case2\":0,\"case3\":4,\"case4\":2,\"fallback\":0},",
                "\"recurrence_violations\":0,\"hypothesis_fallbacks\":0,\"max_depth\":5,",
                "\"elapsed_ms\":3,\"seed\":7,\"aborted\":false,\"warnings\":[\"w\"]}\n"
            )
        );
        let parsed: StatsRecord = serde_json::from_str(record.to_json_line().trim()).unwrap();
        assert_eq!(parsed, record);
    }
}
