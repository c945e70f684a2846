//! Verdicts and the JSONL report.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Finding,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Finding => "finding",
            Status::Skipped => "skipped",
        })
    }
}

/// One line of the report.
///
/// A passing task is summarized by a single verdict with empty `subjects`
/// and witness `{"checked": n}`; every failing, exploratory or skipped
/// instance gets its own line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub suite: String,
    pub group: String,
    pub partition: String,
    pub subjects: Vec<String>,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub witness: Option<Value>,
    pub elapsed_ms: Option<u64>,
}

impl Verdict {
    fn sort_key(&self) -> (&str, &str, &str, &[String], &Status) {
        (&self.suite, &self.group, &self.partition, &self.subjects, &self.status)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub finding: usize,
    pub skipped: usize,
    /// Instances checked per suite.
    pub checked: BTreeMap<String, u64>,
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub verdicts: Vec<Verdict>,
}

impl Report {
    /// Sorts verdicts by (suite, group, partition, subjects, status), then reason and witness.
    pub fn new(mut verdicts: Vec<Verdict>) -> Self {
        let text = |v: &Verdict| v.witness.as_ref().map(Value::to_string);
        verdicts.sort_by(|a, b| {
            a.sort_key()
                .cmp(&b.sort_key())
                .then_with(|| a.reason.cmp(&b.reason))
                .then_with(|| text(a).cmp(&text(b)))
        });
        Report { verdicts }
    }

    pub fn summary(&self) -> Summary {
        let mut s = Summary::default();
        for v in &self.verdicts {
            match v.status {
                Status::Pass => s.pass += 1,
                Status::Fail => s.fail += 1,
                Status::Finding => s.finding += 1,
                Status::Skipped => s.skipped += 1,
            }
            if v.status == Status::Pass {
                let n = v.witness.as_ref().and_then(|w| w["checked"].as_u64()).unwrap_or(0);
                *s.checked.entry(v.suite.clone()).or_default() += n;
            }
        }
        s
    }

    pub fn has_failures(&self) -> bool {
        self.verdicts.iter().any(|v| v.status == Status::Fail)
    }

    pub fn with_status(&self, status: Status) -> impl Iterator<Item = &Verdict> {
        self.verdicts.iter().filter(move |v| v.status == status)
    }

    pub fn to_jsonl(&self) -> String {
        self.verdicts
            .iter()
            .map(|v| serde_json::to_string(v).expect("verdicts serialize") + "\n")
            .collect()
    }

    pub fn from_jsonl(text: &str) -> serde_json::Result<Self> {
        let verdicts = text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(serde_json::from_str)
            .collect::<serde_json::Result<Vec<Verdict>>>()?;
        Ok(Report { verdicts })
    }
}
