use serde::Serialize;

pub const TOOL_VERSION: &str = concat!(env!("CARGO_PKG_NAME"), " ", env!("CARGO_PKG_VERSION"));

/// One verified property.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub paper_anchor: String,
    pub defect: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl CheckResult {
    /// Passes when `defect <= tolerance`.
    pub fn within(name: &str, anchor: &str, defect: f64, tolerance: f64) -> Self {
        let defect = defect + 0.0;
        Self {
            name: name.to_owned(),
            paper_anchor: anchor.to_owned(),
            defect,
            tolerance,
            pass: defect <= tolerance,
        }
    }

    /// Counts failures; passes only with none.
    pub fn count(name: &str, anchor: &str, failures: usize) -> Self {
        Self::within(name, anchor, failures as f64, 0.0)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report<C: Serialize> {
    pub tool_version: &'static str,
    pub config: C,
    pub checks: Vec<CheckResult>,
    pub wall_time_ms: Option<u64>,
}

impl<C: Serialize> Report<C> {
    pub fn new(config: C, checks: Vec<CheckResult>) -> Self {
        Self {
            tool_version: TOOL_VERSION,
            config,
            checks,
            wall_time_ms: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> serde_json::Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }
}
