//! The JSON report document.
//!
//! Schema `unireg-report/1`:
//!
//! ```text
//! {
//!   "schema":  "unireg-report/1",
//!   "check":   "<check id>",
//!   "anchor":  "<quoted phrase the check reproduces>",
//!   "status":  "pass" | "fail" | "inconclusive",
//!   "warnings": [string],
//!   "result":  <check-specific object; witnesses and counterexamples>,
//!   "input":   { "ring", "elem", "system", "bound", "radius", "seed", "exec" },
//!   "tool":    { "name": "unireg", "version": "<crate version>" },
//!   "timing":  { "seconds": float }
//! }
//! ```
//!
//! Everything except `timing` is a function of the input: object keys are
//! sorted and per-step timings inside `result` are stripped.

use serde::Serialize;
use serde_json::Value;

pub const SCHEMA: &str = "unireg-report/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl Status {
    /// 0 on pass, 1 on fail, 3 when inconclusive (2 is taken by usage errors).
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Inconclusive => 3,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Inconclusive => "INCONCLUSIVE",
        }
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct InputEcho {
    pub ring: Option<String>,
    pub elem: Option<String>,
    pub system: Option<String>,
    pub bound: Option<u32>,
    pub radius: Option<u32>,
    pub seed: u64,
    pub exec: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct Tool {
    pub name: &'static str,
    pub version: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct Timing {
    pub seconds: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportDocument {
    pub schema: &'static str,
    pub check: String,
    pub anchor: &'static str,
    pub status: Status,
    pub warnings: Vec<String>,
    pub result: Value,
    pub input: InputEcho,
    pub tool: Tool,
    pub timing: Timing,
}

impl ReportDocument {
    pub fn new(
        check: &str,
        anchor: &'static str,
        status: Status,
        warnings: Vec<String>,
        mut result: Value,
        input: InputEcho,
        seconds: f64,
    ) -> Self {
        strip_timings(&mut result);
        ReportDocument {
            schema: SCHEMA,
            check: check.to_string(),
            anchor,
            status,
            warnings,
            result,
            input,
            tool: Tool {
                name: "unireg",
                version: env!("CARGO_PKG_VERSION"),
            },
            timing: Timing { seconds },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }
}

const TIMING_KEYS: [&str; 3] = ["seconds", "elapsed_us", "budget_seconds"];

/// Drops wall-clock fields anywhere below `v`.
pub fn strip_timings(v: &mut Value) {
    match v {
        Value::Object(map) => {
            map.retain(|k, _| !TIMING_KEYS.contains(&k.as_str()));
            map.values_mut().for_each(strip_timings);
        }
        Value::Array(items) => items.iter_mut().for_each(strip_timings),
        _ => {}
    }
}
