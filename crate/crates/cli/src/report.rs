use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ItemStatus {
    Pass,
    Fail,
    Skipped,
}

impl ItemStatus {
    fn label(self) -> &'static str {
        match self {
            ItemStatus::Pass => "PASS",
            ItemStatus::Fail => "FAIL",
            ItemStatus::Skipped => "SKIP",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Item {
    pub name: String,
    pub status: ItemStatus,
    pub expected: Option<String>,
    pub observed: Option<String>,
    pub digits: Option<u32>,
    /// Extra lines shown in text mode only.
    #[serde(skip)]
    pub detail: Vec<String>,
}

impl Item {
    pub fn new(name: impl Into<String>, status: ItemStatus) -> Self {
        Item {
            name: name.into(),
            status,
            expected: None,
            observed: None,
            digits: None,
            detail: Vec::new(),
        }
    }

    pub fn pass_if(name: impl Into<String>, ok: bool) -> Self {
        Self::new(name, if ok { ItemStatus::Pass } else { ItemStatus::Fail })
    }

    pub fn expected(mut self, v: impl ToString) -> Self {
        self.expected = Some(v.to_string());
        self
    }

    pub fn observed(mut self, v: impl ToString) -> Self {
        self.observed = Some(v.to_string());
        self
    }

    pub fn observed_opt(mut self, v: Option<impl ToString>) -> Self {
        self.observed = v.map(|v| v.to_string());
        self
    }

    pub fn digits(mut self, d: u32) -> Self {
        self.digits = Some(d);
        self
    }

    pub fn detail(mut self, line: impl Into<String>) -> Self {
        self.detail.push(line.into());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub digits: u32,
    pub qmax: u64,
    pub report: String,
    pub registry: Option<String>,
    pub seed_grid: usize,
    pub order: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub config: ConfigEcho,
    pub items: Vec<Item>,
    pub status: ItemStatus,
    pub wall_ms: u64,
    /// Summary lines shown in text mode only.
    #[serde(skip)]
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(command: impl Into<String>, config: ConfigEcho) -> Self {
        Report {
            command: command.into(),
            config,
            items: Vec::new(),
            status: ItemStatus::Pass,
            wall_ms: 0,
            notes: Vec::new(),
        }
    }

    /// Overall status: fail if any item failed.
    pub fn finish(&mut self) {
        self.status = if self.items.iter().any(|i| i.status == ItemStatus::Fail) {
            ItemStatus::Fail
        } else {
            ItemStatus::Pass
        };
    }

    pub fn exit_code(&self) -> i32 {
        match self.status {
            ItemStatus::Fail => 1,
            _ => 0,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{}", self.command);
        for it in &self.items {
            let _ = write!(s, "  {} {}", it.status.label(), it.name);
            if let Some(o) = &it.observed {
                let _ = write!(s, "  observed {o}");
            }
            if let Some(e) = &it.expected {
                let _ = write!(s, "  expected {e}");
            }
            if let Some(d) = it.digits {
                let _ = write!(s, "  [{d} digits]");
            }
            s.push('\n');
            for line in &it.detail {
                let _ = writeln!(s, "      {line}");
            }
        }
        for n in &self.notes {
            let _ = writeln!(s, "  {n}");
        }
        let passed = self.items.iter().filter(|i| i.status == ItemStatus::Pass).count();
        let _ = writeln!(
            s,
            "{}: {passed}/{} passed in {} ms",
            self.status.label(),
            self.items.len(),
            self.wall_ms
        );
        s
    }
}
