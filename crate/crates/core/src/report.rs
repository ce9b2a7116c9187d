//! Machine-readable check reports.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
        })
    }
}

impl From<bool> for Status {
    fn from(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

/// Wall-clock time, only filled in on request since it breaks byte-identical output.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub total_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub genus: usize,
    pub checks: Vec<Check>,
    pub timing: Option<Timing>,
}

impl Report {
    pub fn new(command: impl Into<String>, genus: usize) -> Self {
        Self { command: command.into(), genus, checks: Vec::new(), timing: None }
    }

    pub fn push(&mut self, name: impl Into<String>, status: Status, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), status, detail: detail.into() });
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    /// `Fail` if any check fails, else `Inconclusive` if any is, else `Pass`.
    pub fn overall(&self) -> Status {
        let has = |s| self.checks.iter().any(|c| c.status == s);
        if has(Status::Fail) {
            Status::Fail
        } else if has(Status::Inconclusive) {
            Status::Inconclusive
        } else {
            Status::Pass
        }
    }

    /// 0 when every check passes, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.all_pass() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_table(&self) -> String {
        let w = self.checks.iter().map(|c| c.name.chars().count()).max().unwrap_or(0).max(5);
        let mut out = if self.genus == 0 {
            format!("{}\n", self.command)
        } else {
            format!("{} (genus {})\n", self.command, self.genus)
        };
        for c in &self.checks {
            out.push_str(&format!("  {:<w$}  {:<12}  {}\n", c.name, c.status.to_string(), c.detail));
        }
        out.push_str(&format!("overall: {}\n", self.overall()));
        if let Some(t) = &self.timing {
            out.push_str(&format!("time: {:.1} ms\n", t.total_ms));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_and_json() {
        let mut r = Report::new("verify", 3);
        r.push("(1)", Status::Pass, "");
        assert_eq!(r.exit_code(), 0);
        r.push("order", Status::Inconclusive, "overflow");
        assert_eq!(r.exit_code(), 1);
        let json = r.to_json();
        assert!(json.contains("\"inconclusive\"") && json.contains("\"timing\": null"));
        let back: Report = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
        assert!(r.to_table().contains("overall: inconclusive"));
        r.push("x", Status::Fail, "");
        assert_eq!(r.overall(), Status::Fail);
    }
}
