//! JSON reports. Field order is fixed by the struct layout and maps are
//! ordered, so identical inputs give byte-identical output. Wall-clock
//! timings are kept out of the JSON and only printed in the summary.

use std::collections::BTreeMap;
use std::time::Duration;

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub check: String,
    /// The formula the check exercises.
    pub anchor: String,
    pub status: Status,
    pub residuals: BTreeMap<String, f64>,
    pub seed: u64,
    pub details: Value,
    /// On failure: the failing fields, or the error that stopped the check.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl CheckReport {
    /// Builds a report from a serializable result whose `passed` field
    /// decides the status. Boolean fields that are `false` become the
    /// witness.
    pub fn from_result<T: Serialize>(check: &str, anchor: &str, seed: u64, result: &T) -> Self {
        let details = serde_json::to_value(result).expect("reports serialize");
        let passed = details.get("passed").and_then(Value::as_bool).unwrap_or(false);
        let witness = (!passed).then(|| {
            let failing: Vec<Value> = details
                .as_object()
                .into_iter()
                .flatten()
                .filter(|(k, v)| *k != "passed" && v.as_bool() == Some(false))
                .map(|(k, _)| Value::String(k.clone()))
                .collect();
            Value::Array(failing)
        });
        Self {
            check: check.to_string(),
            anchor: anchor.to_string(),
            status: if passed { Status::Pass } else { Status::Fail },
            residuals: BTreeMap::new(),
            seed,
            details,
            witness,
            elapsed: Duration::ZERO,
        }
    }

    pub fn from_error(check: &str, anchor: &str, seed: u64, error: impl std::fmt::Display) -> Self {
        Self {
            check: check.to_string(),
            anchor: anchor.to_string(),
            status: Status::Fail,
            residuals: BTreeMap::new(),
            seed,
            details: Value::Null,
            witness: Some(Value::String(error.to_string())),
            elapsed: Duration::ZERO,
        }
    }

    pub fn with_residual(mut self, name: &str, value: f64) -> Self {
        self.residuals.insert(name.to_string(), value);
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub suite: String,
    pub group: String,
    pub seed: u64,
    pub tol: f64,
    pub degree: u32,
    /// `"given"` or `"random"`.
    pub parameters: String,
    pub checks: Vec<CheckReport>,
    pub passed: bool,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn summary(&self) -> String {
        let mut out = format!("suite {} on {} (seed {})\n", self.suite, self.group, self.seed);
        for c in &self.checks {
            let status = if c.passed() { "PASS" } else { "FAIL" };
            out.push_str(&format!(
                "  {status}  {:<26} {:>9.3}s  {}\n",
                c.check,
                c.elapsed.as_secs_f64(),
                c.anchor
            ));
            if let Some(w) = &c.witness {
                out.push_str(&format!("        witness: {w}\n"));
            }
        }
        let failed = self.checks.iter().filter(|c| !c.passed()).count();
        out.push_str(&format!("{} checks, {} failed\n", self.checks.len(), failed));
        out
    }

    /// 0 when every check passed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }
}
