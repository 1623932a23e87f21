//! Run reports in two renderings: human text and machine JSON lines.
//!
//! The machine form is deterministic for a fixed (config, seed): records
//! appear in check order with stable fields (suite, case_id, status,
//! residual_is_zero, certificate) and no timing, so identical runs emit
//! byte-identical output. Wall-clock time appears only in the text form.

use std::time::Duration;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

/// One certificate entry: a coefficient and the production it multiplies.
#[derive(Debug, Clone, Serialize)]
pub struct CertificatePair {
    pub coefficient: String,
    pub path: String,
}

/// Outcome of one check.
#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub suite: String,
    pub case_id: String,
    pub status: Status,
    pub residual_is_zero: Option<bool>,
    pub certificate: Option<Vec<CertificatePair>>,
    /// Human-facing context: witnesses, counts, hints. Not part of the
    /// machine record.
    #[serde(skip)]
    pub detail: String,
}

impl CheckRecord {
    pub fn new(suite: &str, case_id: impl Into<String>, status: Status) -> CheckRecord {
        CheckRecord {
            suite: suite.to_string(),
            case_id: case_id.into(),
            status,
            residual_is_zero: None,
            certificate: None,
            detail: String::new(),
        }
    }

    pub fn residual(mut self, zero: bool) -> CheckRecord {
        self.residual_is_zero = Some(zero);
        self
    }

    pub fn certificate(mut self, pairs: Vec<CertificatePair>) -> CheckRecord {
        self.certificate = Some(pairs);
        self
    }

    pub fn detail(mut self, text: impl Into<String>) -> CheckRecord {
        self.detail = text.into();
        self
    }
}

#[derive(Debug, Serialize)]
struct Header<'a> {
    command: &'a str,
    config_digest: &'a str,
}

/// A full run: command echo, config digest, records, elapsed time.
#[derive(Debug)]
pub struct RunReport {
    pub command: String,
    pub config_digest: String,
    pub records: Vec<CheckRecord>,
    pub wall_clock: Duration,
}

impl RunReport {
    pub fn worst_status(&self) -> Status {
        let mut worst = Status::Pass;
        for r in &self.records {
            match r.status {
                Status::Fail => return Status::Fail,
                Status::Inconclusive => worst = Status::Inconclusive,
                Status::Pass => {}
            }
        }
        worst
    }

    /// JSON lines: one header record, then one record per check.
    pub fn render_machine(&self) -> String {
        let mut out = String::new();
        let header = Header {
            command: &self.command,
            config_digest: &self.config_digest,
        };
        out.push_str(&serde_json::to_string(&header).expect("header serializes"));
        out.push('\n');
        for r in &self.records {
            out.push_str(&serde_json::to_string(r).expect("record serializes"));
            out.push('\n');
        }
        out
    }

    /// Text form: passing checks are aggregated per suite, failures and
    /// inconclusive runs are listed with their details.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        out.push_str(&format!("config: sha256:{}\n", self.config_digest));
        let mut suite_order: Vec<&str> = Vec::new();
        for r in &self.records {
            if !suite_order.contains(&r.suite.as_str()) {
                suite_order.push(&r.suite);
            }
        }
        for suite in suite_order {
            let in_suite: Vec<&CheckRecord> =
                self.records.iter().filter(|r| r.suite == suite).collect();
            let passed = in_suite.iter().filter(|r| r.status == Status::Pass).count();
            out.push_str(&format!("suite {suite}: {passed}/{} passed\n", in_suite.len()));
            for r in &in_suite {
                if r.status != Status::Pass || !r.detail.is_empty() {
                    let tag = match r.status {
                        Status::Pass => "pass",
                        Status::Fail => "FAIL",
                        Status::Inconclusive => "inconclusive",
                    };
                    out.push_str(&format!("  {} [{tag}]", r.case_id));
                    if !r.detail.is_empty() {
                        out.push_str(&format!(": {}", r.detail));
                    }
                    out.push('\n');
                }
            }
        }
        out.push_str(&format!(
            "wall clock: {:.3}s\n",
            self.wall_clock.as_secs_f64()
        ));
        out
    }
}
