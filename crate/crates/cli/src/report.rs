//! Verification reports and their text/JSON rendering.

use std::fmt::Display;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl Status {
    fn label(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error => "error",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub status: Status,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            status: Status::Pass,
            checks: Vec::new(),
        }
    }

    fn push(&mut self, name: &str, status: Status, witness: Option<String>, value: Option<String>) {
        if status == Status::Error || (status == Status::Fail && self.status == Status::Pass) {
            self.status = status;
        }
        self.checks.push(Check {
            name: name.to_string(),
            status,
            witness,
            value,
        });
    }

    pub fn pass(&mut self, name: &str) {
        self.push(name, Status::Pass, None, None);
    }

    pub fn pass_with(&mut self, name: &str, value: impl Display) {
        self.push(name, Status::Pass, None, Some(value.to_string()));
    }

    pub fn fail(&mut self, name: &str, witness: impl Display) {
        self.push(name, Status::Fail, Some(witness.to_string()), None);
    }

    pub fn fail_with(&mut self, name: &str, witness: impl Display, value: impl Display) {
        self.push(name, Status::Fail, Some(witness.to_string()), Some(value.to_string()));
    }

    pub fn error(&mut self, name: &str, message: impl Display) {
        self.push(name, Status::Error, Some(message.to_string()), None);
    }

    /// Records `Ok` as a pass carrying its value and `Err` as a failure.
    pub fn outcome<T: Display, E: Display>(&mut self, name: &str, r: Result<T, E>) {
        match r {
            Ok(v) => self.pass_with(name, v),
            Err(e) => self.fail(name, e),
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self.status {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Error => 2,
        }
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            let mut s = serde_json::to_string_pretty(self).expect("report serializes");
            s.push('\n');
            return s;
        }
        let mut out = format!("{}: {}\n", self.command, self.status.label());
        for c in &self.checks {
            out.push_str(&format!("  [{}] {}", c.status.label(), c.name));
            if let Some(v) = &c.value {
                out.push_str(&format!(": {v}"));
            }
            if let Some(w) = &c.witness {
                out.push_str(&format!(" (witness: {w})"));
            }
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_is_worst_check() {
        let mut r = Report::new("x");
        r.pass("a");
        assert_eq!(r.exit_code(), 0);
        r.fail("b", "cell (0, 1)");
        r.pass("c");
        assert_eq!(r.status, Status::Fail);
        r.error("d", "io");
        assert_eq!(r.exit_code(), 2);
    }

    #[test]
    fn json_omits_missing_fields() {
        let mut r = Report::new("verify hadamard");
        r.pass("HH^T = nI");
        let j = r.render(true);
        assert!(j.contains("\"status\": \"pass\""));
        assert!(!j.contains("witness"));
    }
}
