//! Machine-readable check records and deterministic report emission.
//!
//! The JSON form is byte-deterministic for a fixed configuration and seed:
//! keys are emitted in a fixed order and run timings are reported only in
//! the human-readable table form.

use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    Inconclusive,
}

impl CheckStatus {
    pub fn text(&self) -> &'static str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Clone)]
pub struct CheckRecord {
    pub id: String,
    pub params: BTreeMap<String, String>,
    pub status: CheckStatus,
    pub witness: Option<String>,
    pub runtime_ms: u64,
}

impl CheckRecord {
    pub fn new(id: impl Into<String>) -> Self {
        CheckRecord {
            id: id.into(),
            params: BTreeMap::new(),
            status: CheckStatus::Pass,
            witness: None,
            runtime_ms: 0,
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<String>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn fail(mut self, witness: impl Into<String>) -> Self {
        self.status = CheckStatus::Fail;
        self.witness = Some(witness.into());
        self
    }

    pub fn inconclusive(mut self, witness: impl Into<String>) -> Self {
        self.status = CheckStatus::Inconclusive;
        self.witness = Some(witness.into());
        self
    }
}

pub const REPORT_VERSION: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Table,
}

pub fn emit_report(records: &[CheckRecord], format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => emit_json(records),
        ReportFormat::Table => emit_table(records),
    }
}

fn json_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            '\r' => out.push_str("\\r"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out
}

fn emit_json(records: &[CheckRecord]) -> String {
    let mut out = String::new();
    out.push_str("{\"version\":\"");
    out.push_str(REPORT_VERSION);
    out.push_str("\",\"checks\":[");
    for (i, r) in records.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str("{\"id\":\"");
        out.push_str(&json_escape(&r.id));
        out.push_str("\",\"params\":{");
        for (j, (k, v)) in r.params.iter().enumerate() {
            if j > 0 {
                out.push(',');
            }
            out.push('"');
            out.push_str(&json_escape(k));
            out.push_str("\":\"");
            out.push_str(&json_escape(v));
            out.push('"');
        }
        out.push_str("},\"status\":\"");
        out.push_str(r.status.text());
        out.push('"');
        if let Some(w) = &r.witness {
            out.push_str(",\"witness\":\"");
            out.push_str(&json_escape(w));
            out.push('"');
        }
        out.push('}');
    }
    out.push_str("]}");
    out
}

fn emit_table(records: &[CheckRecord]) -> String {
    let mut rows: Vec<[String; 4]> = vec![[
        "check".to_string(),
        "params".to_string(),
        "status".to_string(),
        "ms".to_string(),
    ]];
    for r in records {
        let params = r
            .params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(" ");
        rows.push([
            r.id.clone(),
            params,
            r.status.text().to_string(),
            r.runtime_ms.to_string(),
        ]);
    }
    let mut widths = [0usize; 4];
    for row in &rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let mut out = String::new();
    for row in &rows {
        let line: Vec<String> = row
            .iter()
            .enumerate()
            .map(|(i, cell)| format!("{cell:<width$}", width = widths[i]))
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    for r in records {
        if let Some(w) = &r.witness {
            out.push_str(&format!("  [{}] {}\n", r.id, w));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_report() {
        assert_eq!(emit_json(&[]), "{\"version\":\"1\",\"checks\":[]}");
    }

    #[test]
    fn single_pass_record() {
        let r = CheckRecord::new("relations").param("n", "2");
        let json = emit_json(&[r]);
        assert_eq!(
            json,
            "{\"version\":\"1\",\"checks\":[{\"id\":\"relations\",\"params\":{\"n\":\"2\"},\"status\":\"pass\"}]}"
        );
    }

    #[test]
    fn failures_carry_witnesses() {
        let r = CheckRecord::new("x").fail("residual: t1*d1");
        let json = emit_json(&[r.clone()]);
        assert!(json.contains("\"witness\":\"residual: t1*d1\""));
        let table = emit_table(&[r]);
        assert!(table.contains("fail"));
        assert!(table.contains("residual"));
    }

    #[test]
    fn json_is_runtime_independent() {
        let mut a = CheckRecord::new("x").param("k", "v");
        let mut b = a.clone();
        a.runtime_ms = 17;
        b.runtime_ms = 9000;
        assert_eq!(emit_json(&[a]), emit_json(&[b]));
    }
}
