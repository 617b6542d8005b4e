use serde_json::Value;

use nvs_core::Report;

/// Rendered command result.
pub struct Output {
    pub text: String,
    pub pass: bool,
    pub diagnostics: Vec<String>,
}

impl Output {
    pub fn new(text: String, reports: &[&Report]) -> Output {
        let diagnostics = reports
            .iter()
            .filter(|r| !r.pass)
            .flat_map(|r| r.violations.iter().map(move |v| format!("{}: {v}", r.check)))
            .collect();
        Output {
            text,
            pass: reports.iter().all(|r| r.pass),
            diagnostics,
        }
    }

    pub fn failing(text: String, pass: bool, diagnostic: impl Into<String>) -> Output {
        Output {
            text,
            pass,
            diagnostics: if pass { Vec::new() } else { vec![diagnostic.into()] },
        }
    }
}

pub fn json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

/// Scalars and nested values as compact text for TSV cells.
pub fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

pub fn tsv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut s = header.join("\t");
    s.push('\n');
    for r in rows {
        s.push_str(&r.join("\t"));
        s.push('\n');
    }
    s
}

pub fn report_rows(reports: &[&Report]) -> Vec<Vec<String>> {
    reports
        .iter()
        .map(|r| {
            vec![
                r.check.clone(),
                if r.pass { "pass" } else { "fail" }.to_string(),
                r.checked.to_string(),
                r.violation_count.to_string(),
                r.violations.first().cloned().unwrap_or_default(),
            ]
        })
        .collect()
}

pub const REPORT_HEADER: [&str; 5] = ["check", "status", "checked", "violations", "first_violation"];
