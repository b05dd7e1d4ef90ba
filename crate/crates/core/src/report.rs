//! Machine-readable check records.
//!
//! Every record serializes the keys `check`, `status`, `witness`, `seed`,
//! `samples`, `tolerance` and `detail`, in that order, with `null` for
//! absent values.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Self::Pass
        } else {
            Self::Fail
        }
    }
}

/// A witness: element or point indices, or free text for analytic carriers.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Witness {
    Indices(Vec<usize>),
    Text(String),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub check: String,
    pub status: Status,
    pub witness: Option<Witness>,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    pub tolerance: Option<f64>,
    pub detail: Option<String>,
}

impl CheckRecord {
    pub fn new(check: impl Into<String>, passed: bool) -> Self {
        Self {
            check: check.into(),
            status: Status::from_bool(passed),
            witness: None,
            seed: None,
            samples: None,
            tolerance: None,
            detail: None,
        }
    }

    pub fn witness(mut self, w: Witness) -> Self {
        self.witness = Some(w);
        self
    }

    pub fn indices(self, w: Vec<usize>) -> Self {
        self.witness(Witness::Indices(w))
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn samples(mut self, samples: usize) -> Self {
        self.samples = Some(samples);
        self
    }

    pub fn tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = Some(tolerance);
        self
    }

    pub fn detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub checks: Vec<CheckRecord>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Self {
            command: command.into(),
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, record: CheckRecord) {
        self.checks.push(record);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckRecord::passed)
    }

    /// One line per check: `PASS name [detail]`.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skip => "SKIP",
            };
            out.push_str(tag);
            out.push(' ');
            out.push_str(&c.check);
            if let Some(d) = &c.detail {
                out.push_str(": ");
                out.push_str(d);
            }
            if let (Status::Fail, Some(w)) = (c.status, &c.witness) {
                match w {
                    Witness::Indices(v) => out.push_str(&format!(" (witness {v:?})")),
                    Witness::Text(t) => out.push_str(&format!(" (witness {t})")),
                }
            }
            out.push('\n');
        }
        out
    }
}
