//! Machine-readable run reports and exit codes.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use serde_json::Value;

pub const SCHEMA: &str = "forge-report/1";

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Info,
    Pass,
    Warn,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub details: Value,
}

impl Check {
    pub fn new(name: impl Into<String>, status: Status, details: impl Serialize) -> Self {
        let details = serde_json::to_value(details).expect("details serialize");
        Check { name: name.into(), status, details }
    }

    pub fn verdict(name: impl Into<String>, ok: bool, details: impl Serialize) -> Self {
        Self::new(name, if ok { Status::Pass } else { Status::Fail }, details)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Timings {
    pub elapsed_ms: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: String,
    pub config: Value,
    pub status: Status,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
    pub versions: BTreeMap<&'static str, &'static str>,
    pub timings: Timings,
}

impl Report {
    pub fn new(command: &str, config: impl Serialize) -> Self {
        let mut versions = BTreeMap::new();
        versions.insert("forge", env!("CARGO_PKG_VERSION"));
        versions.insert("forge-core", forge_core::VERSION);
        Report {
            schema: SCHEMA,
            command: command.into(),
            config: serde_json::to_value(config).expect("config serializes"),
            status: Status::Pass,
            checks: Vec::new(),
            warnings: Vec::new(),
            versions,
            timings: Timings { elapsed_ms: 0 },
        }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn warn(&mut self, msg: impl Into<String>) {
        self.warnings.push(msg.into());
    }

    /// Worst check status, with warnings lifting an otherwise clean run.
    pub fn finish(&mut self, elapsed_ms: u128) {
        let worst = self.checks.iter().map(|c| c.status).max().unwrap_or(Status::Pass);
        self.status = match worst {
            Status::Fail => Status::Fail,
            Status::Warn => Status::Warn,
            _ if !self.warnings.is_empty() => Status::Warn,
            _ => Status::Pass,
        };
        self.timings.elapsed_ms = elapsed_ms;
    }

    pub fn exit_code(&self) -> i32 {
        if self.status == Status::Fail {
            EXIT_VERIFY
        } else {
            EXIT_OK
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// A run that stopped before producing a report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn config(msg: impl fmt::Display) -> Self {
        CliError { code: EXIT_CONFIG, message: msg.to_string() }
    }

    pub fn internal(msg: impl fmt::Display) -> Self {
        CliError { code: EXIT_INTERNAL, message: msg.to_string() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

/// Drops timing fields so two reports of the same run compare equal.
pub fn strip_timings(v: &mut Value) {
    match v {
        Value::Object(m) => {
            m.retain(|k, _| k != "timings" && k != "elapsed_ms");
            m.values_mut().for_each(strip_timings);
        }
        Value::Array(a) => a.iter_mut().for_each(strip_timings),
        _ => {}
    }
}
