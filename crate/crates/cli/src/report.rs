//! Machine-readable suite reports.

use serde::Serialize;
use serde_json::Value;

use crate::config::RunConfig;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// One check on one master seed.
#[derive(Clone, Debug, Serialize)]
pub struct SeedRun {
    pub seed: u64,
    pub field: String,
    pub computed: Value,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub budget_exhausted: bool,
    pub timing_ms: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub id: String,
    /// The mathematical statement the expected value comes from.
    pub anchor: String,
    pub expected: Value,
    /// Value computed on the first master seed.
    pub computed: Value,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    /// Seeds on which `computed == expected`.
    pub passes: usize,
    pub required: usize,
    pub runs: Vec<SeedRun>,
    pub timing_ms: u64,
    pub field: String,
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub total: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub tool: &'static str,
    pub version: &'static str,
    pub config: RunConfig,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
}

impl SuiteReport {
    pub fn new(config: RunConfig, mut checks: Vec<CheckRecord>) -> Self {
        checks.sort_by_key(|a| check_order(&a.id));
        let mut summary = Summary {
            total: checks.len(),
            ..Summary::default()
        };
        for c in &checks {
            match c.status {
                Status::Pass => summary.passed += 1,
                Status::Fail => summary.failed += 1,
                Status::Skipped => summary.skipped += 1,
            }
        }
        SuiteReport {
            tool: "el",
            version: env!("CARGO_PKG_VERSION"),
            config,
            checks,
            summary,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }
}

/// `AC-10` sorts after `AC-9`; suffixed ids follow their base id.
fn check_order(id: &str) -> (u32, String) {
    let rest = id.trim_start_matches("AC-");
    let digits: String = rest.chars().take_while(|c| c.is_ascii_digit()).collect();
    (digits.parse().unwrap_or(u32::MAX), rest[digits.len()..].to_string())
}

/// Removes every `timing_ms` and `timings` entry, recursively.
pub fn strip_timings(v: &mut Value) {
    match v {
        Value::Object(map) => {
            map.remove("timing_ms");
            map.remove("timings");
            map.values_mut().for_each(strip_timings);
        }
        Value::Array(items) => items.iter_mut().for_each(strip_timings),
        _ => {}
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn ids_sort_numerically() {
        let mut ids = vec!["AC-10", "AC-2", "AC-5/k3_23", "AC-5", "AC-1"];
        ids.sort_by_key(|id| check_order(id));
        assert_eq!(ids, ["AC-1", "AC-2", "AC-5", "AC-5/k3_23", "AC-10"]);
    }

    #[test]
    fn strips_nested_timings() {
        let mut v = json!({"a": 1, "timing_ms": 3, "b": [{"timings": {"x": 1}, "c": 2}]});
        strip_timings(&mut v);
        assert_eq!(v, json!({"a": 1, "b": [{"c": 2}]}));
    }
}
