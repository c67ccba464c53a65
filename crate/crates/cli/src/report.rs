//! Running scenarios and rendering reports as JSON or markdown.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use gmult_core::report::{sort_records, summarize, CheckKind, CheckRecord};
use serde::{Deserialize, Serialize};

use crate::registry::{lookup, verify_registry, RegistryError};
use crate::scenario::{Scenario, ScenarioError};
use crate::wire::real;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct RecordDto {
    pub id: String,
    pub suite: String,
    pub check: String,
    pub trial: u64,
    pub result_ref: String,
    pub instance_digest: String,
    pub kind: String,
    #[serde(with = "real")]
    pub lhs: f64,
    #[serde(with = "real")]
    pub rhs: f64,
    #[serde(with = "real")]
    pub tolerance: f64,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub skipped_reason: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

impl RecordDto {
    pub fn from_core(r: &CheckRecord) -> Self {
        Self {
            id: r.id.clone(),
            suite: r.suite.clone(),
            check: r.check.clone(),
            trial: r.trial,
            result_ref: r.result_ref.clone(),
            instance_digest: r.instance_digest.clone(),
            kind: r.kind.as_str().into(),
            lhs: r.lhs,
            rhs: r.rhs,
            tolerance: r.tolerance,
            pass: r.pass,
            skipped_reason: r.skipped_reason.clone(),
            message: r.message.clone(),
        }
    }

    pub fn is_skipped(&self) -> bool {
        self.skipped_reason.is_some()
    }

    pub fn is_failed(&self) -> bool {
        !self.pass && !self.is_skipped()
    }

    pub fn slack(&self) -> f64 {
        if self.kind == CheckKind::Inequality.as_str() {
            self.rhs + self.tolerance - self.lhs
        } else {
            self.tolerance - (self.lhs - self.rhs).abs()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SummaryDto {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct Report {
    pub scenario: Scenario,
    pub records: Vec<RecordDto>,
    pub summary: SummaryDto,
    pub wall_time_seconds: f64,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RunError {
    #[error(transparent)]
    Scenario(#[from] ScenarioError),
    #[error(transparent)]
    Registry(#[from] RegistryError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Markdown,
}

impl Report {
    pub fn has_failures(&self) -> bool {
        self.summary.failed > 0
    }

    /// JSON with `wallTimeSeconds` zeroed, for determinism comparisons.
    pub fn json_without_wall_time(&self) -> String {
        let mut r = self.clone();
        r.wall_time_seconds = 0.0;
        r.to_json()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn emit(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Markdown => self.to_markdown(),
        }
    }

    /// One table row per result: pass counts and worst slack, then the failures.
    pub fn to_markdown(&self) -> String {
        #[derive(Default)]
        struct Row {
            suites: Vec<String>,
            passed: usize,
            failed: usize,
            skipped: usize,
            worst: Option<f64>,
        }
        let mut rows: BTreeMap<&str, Row> = BTreeMap::new();
        for r in &self.records {
            let row = rows.entry(r.result_ref.as_str()).or_default();
            if !row.suites.contains(&r.suite) {
                row.suites.push(r.suite.clone());
            }
            if r.is_skipped() {
                row.skipped += 1;
                continue;
            }
            if r.pass {
                row.passed += 1;
            } else {
                row.failed += 1;
            }
            let s = r.slack();
            row.worst = Some(match row.worst {
                Some(w) if !(s < w) => w,
                _ => s,
            });
        }
        let sc = &self.scenario;
        let mut out = String::new();
        let _ = writeln!(out, "# Verification report\n");
        let _ = writeln!(
            out,
            "seed {} | d={} d0={} n={} | trials {} | tolerance {:e}\n",
            sc.seed,
            sc.dims.d,
            sc.dims.d0,
            sc.dims.n,
            sc.trials,
            sc.tolerance.unwrap_or(gmult_core::DEFAULT_TOL)
        );
        let s = self.summary;
        let _ = writeln!(out, "**{} checks: {} passed, {} failed, {} skipped**\n", s.total, s.passed, s.failed, s.skipped);
        let _ = writeln!(out, "| Result | Suites | Passed | Failed | Skipped | Worst slack |");
        let _ = writeln!(out, "|---|---|---:|---:|---:|---:|");
        for (rr, row) in &rows {
            let worst = row.worst.map(|w| format!("{w:.3e}")).unwrap_or_else(|| "-".into());
            let _ = writeln!(
                out,
                "| {rr} | {} | {} | {} | {} | {worst} |",
                row.suites.join(", "),
                row.passed,
                row.failed,
                row.skipped
            );
        }
        let failed: Vec<&RecordDto> = self.records.iter().filter(|r| r.is_failed()).collect();
        if !failed.is_empty() {
            let _ = writeln!(out, "\n## Failures\n");
            let _ = writeln!(out, "| Check | Result | lhs | rhs | tolerance | Message |");
            let _ = writeln!(out, "|---|---|---:|---:|---:|---|");
            for r in failed {
                let _ = writeln!(
                    out,
                    "| {} | {} | {:.6e} | {:.6e} | {:.3e} | {} |",
                    r.id,
                    r.result_ref,
                    r.lhs,
                    r.rhs,
                    r.tolerance,
                    r.message.as_deref().unwrap_or("")
                );
            }
        }
        out
    }
}

/// Builds a report from already computed records.
pub fn assemble_report(scenario: Scenario, mut records: Vec<CheckRecord>, wall_time_seconds: f64) -> Report {
    sort_records(&mut records);
    let s = summarize(&records);
    Report {
        scenario,
        records: records.iter().map(RecordDto::from_core).collect(),
        summary: SummaryDto {
            total: s.total,
            passed: s.passed,
            failed: s.failed,
            skipped: s.skipped,
        },
        wall_time_seconds,
    }
}

/// Runs every selected suite at tolerance `tol`. The echoed scenario carries `tol`.
pub fn run_scenario(scenario: &Scenario, tol: f64) -> Result<Report, RunError> {
    run_scenario_with(scenario, tol, None)
}

/// As [`run_scenario`], with the sweep sizes replaced by `sizes` if given.
pub fn run_scenario_with(scenario: &Scenario, tol: f64, sizes: Option<&[usize]>) -> Result<Report, RunError> {
    verify_registry()?;
    scenario.validate()?;
    let start = Instant::now();
    let mut params = scenario.params(tol)?;
    if let Some(s) = sizes {
        params.sizes = s.to_vec();
    }
    let mut records = Vec::new();
    for id in &scenario.suites {
        let entry = lookup(id).expect("validated");
        records.extend((entry.run)(&params));
    }
    let mut echo = scenario.clone();
    echo.tolerance = Some(tol);
    Ok(assemble_report(echo, records, start.elapsed().as_secs_f64()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::Dims;

    fn tiny(suites: &[&str]) -> Scenario {
        Scenario {
            seed: 7,
            dims: Dims { d: 4, d0: 2, n: 2 },
            trials: 2,
            tolerance: None,
            suites: suites.iter().map(|s| s.to_string()).collect(),
            generator_overrides: None,
            lambda_law: None,
        }
    }

    #[test]
    fn empty_suites_give_empty_report() {
        let r = run_scenario(&tiny(&[]), 1e-9).unwrap();
        assert!(r.records.is_empty());
        assert_eq!(r.summary, SummaryDto::default());
        let back = Report::from_json(&r.to_json()).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn records_sorted_and_counted() {
        let r = run_scenario(&tiny(&["random_onb", "existence_bound"]), 1e-9).unwrap();
        assert_eq!(r.records[0].suite, "existence_bound");
        assert_eq!(r.summary.total, r.records.len());
        assert_eq!(r.summary.passed + r.summary.failed + r.summary.skipped, r.summary.total);
        assert!(!r.has_failures());
        assert_eq!(Report::from_json(&r.to_json()).unwrap(), r);
    }

    #[test]
    fn markdown_lists_failures() {
        let mut recs = vec![CheckRecord::checked("s", "ok", 0, "result one", "d", CheckKind::Identity, 1.0, 1.0, 1e-9)];
        recs.push(CheckRecord::checked("s", "bad", 0, "result two", "d", CheckKind::Inequality, 2.0, 1.0, 1e-9));
        let r = assemble_report(tiny(&[]), recs, 0.0);
        let md = r.to_markdown();
        assert!(md.contains("| result one | s | 1 | 0 | 0 |"));
        assert!(md.contains("## Failures"));
        assert!(md.contains("s/bad/0 | result two"));
        assert!(r.has_failures());
    }
}
