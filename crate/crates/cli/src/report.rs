//! Report shapes and rendering. Every JSON document is a top-level
//! object with `params`, `results` and `summary`; all quantities are
//! exact integer counts and all verdicts booleans, never floats. The
//! grid CSV has a fixed column order and LF line endings.

use serde::{Deserialize, Serialize};

pub const CSV_HEADER: &str = "n,p,s,family_size,star_size,max_intersecting,regime,holds,elapsed_ms";

/// Human-readable vertex name: bit `2i` is `a{i+1}`, bit `2i+1` is
/// `b{i+1}`, 1-based like the usual matching notation.
pub fn vertex_name(index: usize) -> String {
    let side = if index % 2 == 0 { 'a' } else { 'b' };
    format!("{side}{}", index / 2 + 1)
}

/// Inverse of [`vertex_name`]; returns the 0-based bit index.
#[cfg(test)]
pub fn parse_vertex_name(name: &str) -> Option<usize> {
    let (side, column) = name.split_at(1);
    let column: usize = column.parse().ok()?;
    if column == 0 {
        return None;
    }
    match side {
        "a" => Some(2 * (column - 1)),
        "b" => Some(2 * (column - 1) + 1),
        _ => None,
    }
}

/// Member rendered as its sorted vertex names.
pub fn member_names(bits: u64) -> Vec<String> {
    (0..64).filter(|&i| bits >> i & 1 == 1).map(vertex_name).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsJson {
    pub n: usize,
    pub p: usize,
    pub s: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyResults {
    pub family_size: u64,
    pub star_size: u64,
    pub max_intersecting: u64,
    pub regime: String,
    pub holds: bool,
    pub nodes_explored: u64,
    pub seeded_bound: u64,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifySummary {
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub params: ParamsJson,
    pub results: VerifyResults,
    pub summary: VerifySummary,
}

impl VerifyReport {
    pub fn to_text(&self) -> String {
        let r = &self.results;
        format!(
            "instance n={} p={} s={} ({})\n\
             family size      {}\n\
             star size        {}\n\
             max intersecting {}\n\
             nodes explored   {}\n\
             EKR property     {}\n",
            self.params.n,
            self.params.p,
            self.params.s,
            r.regime,
            r.family_size,
            r.star_size,
            r.max_intersecting,
            r.nodes_explored,
            if r.holds { "holds" } else { "REFUTED" },
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridParams {
    pub max_n: usize,
    pub cap: u64,
    pub seed_star: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridRow {
    pub n: usize,
    pub p: usize,
    pub s: usize,
    pub family_size: u64,
    pub star_size: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_intersecting: Option<u64>,
    pub regime: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub holds: Option<bool>,
    pub elapsed_ms: u64,
    /// Cap reason when the row was skipped rather than solved.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
}

impl GridRow {
    pub fn to_csv_line(&self) -> String {
        let max = self
            .max_intersecting
            .map_or_else(|| "skipped".to_string(), |v| v.to_string());
        let holds = self
            .holds
            .map_or_else(|| "skipped".to_string(), |v| v.to_string());
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.n,
            self.p,
            self.s,
            self.family_size,
            self.star_size,
            max,
            self.regime,
            holds,
            self.elapsed_ms
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridSummary {
    pub instances: usize,
    pub failures: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridReport {
    pub params: GridParams,
    pub results: Vec<GridRow>,
    pub summary: GridSummary,
}

impl GridReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for row in &self.results {
            out.push_str(&row.to_csv_line());
            out.push('\n');
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for row in &self.results {
            let status = match (&row.skipped, row.holds) {
                (Some(reason), _) => format!("skipped ({reason})"),
                (None, Some(true)) => "holds".to_string(),
                (None, Some(false)) => "REFUTED".to_string(),
                (None, None) => "unknown".to_string(),
            };
            let max = row
                .max_intersecting
                .map_or_else(|| "-".to_string(), |v| v.to_string());
            out.push_str(&format!(
                "n={} p={} s={} [{}] family={} star={} max={} {} ({} ms)\n",
                row.n,
                row.p,
                row.s,
                row.regime,
                row.family_size,
                row.star_size,
                max,
                status,
                row.elapsed_ms
            ));
        }
        out.push_str(&format!(
            "{} instances, {} failures, {} skipped\n",
            self.summary.instances, self.summary.failures, self.summary.skipped
        ));
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofcheckParams {
    pub n: usize,
    pub p: usize,
    pub s: usize,
    pub map_cap: usize,
    pub cap: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub status: CheckStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<serde_json::Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub details: Option<serde_json::Value>,
}

impl CheckResult {
    pub fn pass(name: &str, details: Option<serde_json::Value>) -> Self {
        Self {
            name: name.to_string(),
            status: CheckStatus::Pass,
            reason: None,
            counterexample: None,
            details,
        }
    }

    pub fn fail(name: &str, counterexample: serde_json::Value) -> Self {
        Self {
            name: name.to_string(),
            status: CheckStatus::Fail,
            reason: None,
            counterexample: Some(counterexample),
            details: None,
        }
    }

    pub fn skipped(name: &str, reason: &str) -> Self {
        Self {
            name: name.to_string(),
            status: CheckStatus::Skipped,
            reason: Some(reason.to_string()),
            counterexample: None,
            details: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofcheckSummary {
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProofcheckReport {
    pub params: ProofcheckParams,
    pub results: Vec<CheckResult>,
    pub summary: ProofcheckSummary,
}

impl ProofcheckReport {
    pub fn all_executed_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for check in &self.results {
            let line = match check.status {
                CheckStatus::Pass => match &check.details {
                    Some(d) => format!("{:<24} pass  {d}", check.name),
                    None => format!("{:<24} pass", check.name),
                },
                CheckStatus::Fail => format!(
                    "{:<24} FAIL  {}",
                    check.name,
                    check
                        .counterexample
                        .as_ref()
                        .map_or_else(String::new, |c| c.to_string())
                ),
                CheckStatus::Skipped => format!(
                    "{:<24} skipped ({})",
                    check.name,
                    check.reason.as_deref().unwrap_or("")
                ),
            };
            out.push_str(&line);
            out.push('\n');
        }
        out.push_str(&format!(
            "{} passed, {} failed, {} skipped\n",
            self.summary.passed, self.summary.failed, self.summary.skipped
        ));
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessResults {
    pub size: u64,
    pub members: Vec<Vec<String>>,
    pub validated: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessSummary {
    pub size: u64,
    pub validated: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub params: ParamsJson,
    pub results: WitnessResults,
    pub summary: WitnessSummary,
}

impl WitnessReport {
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "maximum intersecting subfamily, {} members:\n",
            self.results.size
        );
        for member in &self.results.members {
            out.push_str(&format!("[{}]\n", member.join(" ")));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerateResults {
    pub count: u64,
    pub members: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerateSummary {
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerateReport {
    pub params: ParamsJson,
    pub results: EnumerateResults,
    pub summary: EnumerateSummary,
}

impl EnumerateReport {
    pub fn to_text(&self) -> String {
        let mut out = format!("{} members:\n", self.results.count);
        for member in &self.results.members {
            out.push_str(&format!("[{}]\n", member.join(" ")));
        }
        out
    }
}
