//! Check results, per-suite reports, and the three renderings. JSON output
//! is byte-stable for a fixed configuration: parameters are ordered maps and
//! the timings block stays empty unless timing capture was requested.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    pub fn from_bool(name: impl Into<String>, ok: bool, witness: impl Into<String>) -> Self {
        if ok {
            Check::pass(name)
        } else {
            Check::fail(name, witness)
        }
    }

    pub fn pass(name: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: Status::Pass,
            witness: None,
        }
    }

    pub fn pass_note(name: impl Into<String>, note: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: Status::Pass,
            witness: Some(note.into()),
        }
    }

    pub fn fail(name: impl Into<String>, witness: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: Status::Fail,
            witness: Some(witness.into()),
        }
    }

    pub fn skip(name: impl Into<String>, reason: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: Status::Skipped,
            witness: Some(reason.into()),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub parameters: BTreeMap<String, String>,
    pub checks: Vec<Check>,
    pub timings: BTreeMap<String, u64>,
}

impl SuiteReport {
    pub fn failed(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::Fail)
    }
}

pub fn any_failure(reports: &[SuiteReport]) -> bool {
    reports.iter().any(SuiteReport::failed)
}

pub fn render_json(reports: &[SuiteReport]) -> String {
    let mut out = serde_json::to_string_pretty(reports).expect("reports serialize");
    out.push('\n');
    out
}

pub fn render_csv(reports: &[SuiteReport]) -> String {
    let mut out = String::from("suite,check,status,witness\n");
    for r in reports {
        for c in &r.checks {
            out.push_str(&format!(
                "{},{},{},{}\n",
                csv_field(&r.suite),
                csv_field(&c.name),
                csv_field(&c.status.to_string()),
                csv_field(c.witness.as_deref().unwrap_or("")),
            ));
        }
    }
    out
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn render_table(reports: &[SuiteReport]) -> String {
    let mut rows: Vec<[String; 4]> = Vec::new();
    for r in reports {
        for c in &r.checks {
            rows.push([
                r.suite.clone(),
                c.name.clone(),
                c.status.to_string(),
                c.witness.clone().unwrap_or_default(),
            ]);
        }
    }
    let mut widths = [5usize, 5, 6, 0];
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row.iter()).take(3) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = format!(
        "{:<w0$}  {:<w1$}  {:<w2$}  {}\n",
        "suite",
        "check",
        "status",
        "witness",
        w0 = widths[0],
        w1 = widths[1],
        w2 = widths[2],
    );
    for row in &rows {
        out.push_str(&format!(
            "{:<w0$}  {:<w1$}  {:<w2$}  {}\n",
            row[0],
            row[1],
            row[2],
            row[3],
            w0 = widths[0],
            w1 = widths[1],
            w2 = widths[2],
        ));
    }
    let (mut pass, mut fail, mut skip) = (0, 0, 0);
    for r in reports {
        for c in &r.checks {
            match c.status {
                Status::Pass => pass += 1,
                Status::Fail => fail += 1,
                Status::Skipped => skip += 1,
            }
        }
    }
    out.push_str(&format!(
        "\n{} suites, {} checks: {pass} pass, {fail} fail, {skip} skipped\n",
        reports.len(),
        rows.len(),
    ));
    for r in reports {
        if let Some(ms) = r.timings.get("millis") {
            out.push_str(&format!("{}: {ms} ms\n", r.suite));
        }
    }
    out
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Format {
    Table,
    Json,
    Csv,
}

pub fn render(reports: &[SuiteReport], format: Format) -> String {
    match format {
        Format::Table => render_table(reports),
        Format::Json => render_json(reports),
        Format::Csv => render_csv(reports),
    }
}
