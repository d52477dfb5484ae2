//! Named checks with explicit slack. Every verification in the crate
//! reports the quantities it compared, never just a boolean, and flags
//! values that were computed over a grade cutoff (those are certified
//! lower bounds of the untruncated quantities).

use std::collections::BTreeMap;
use std::fmt::Write as _;

/// One named check: `pass` holds exactly when `rhs - lhs >= -tolerance`.
#[derive(Debug, Clone)]
pub struct CheckReport {
    pub name: String,
    pub params: BTreeMap<String, String>,
    pub lhs: f64,
    pub rhs: f64,
    pub tolerance: f64,
    pub truncation_flag: bool,
    pub notes: String,
}

impl CheckReport {
    pub fn new(name: impl Into<String>, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        CheckReport {
            name: name.into(),
            params: BTreeMap::new(),
            lhs,
            rhs,
            tolerance,
            truncation_flag: false,
            notes: String::new(),
        }
    }

    /// Encodes "residual <= tolerance" as lhs = residual against rhs = 0.
    pub fn residual(name: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        CheckReport::new(name, residual, 0.0, tolerance)
    }

    pub fn with_param(mut self, key: impl Into<String>, value: impl ToString) -> Self {
        self.params.insert(key.into(), value.to_string());
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        let note = note.into();
        if self.notes.is_empty() {
            self.notes = note;
        } else {
            self.notes.push_str("; ");
            self.notes.push_str(&note);
        }
        self
    }

    pub fn truncated(mut self, flag: bool) -> Self {
        self.truncation_flag = flag;
        self
    }

    pub fn slack(&self) -> f64 {
        self.rhs - self.lhs
    }

    pub fn pass(&self) -> bool {
        self.slack() >= -self.tolerance
    }

    /// One-line human-readable form.
    pub fn summary(&self) -> String {
        let params = self
            .params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(" ");
        format!(
            "{} {} [{}] lhs={} rhs={} slack={}{}",
            if self.pass() { "PASS" } else { "FAIL" },
            self.name,
            params,
            format_float(self.lhs),
            format_float(self.rhs),
            format_float(self.slack()),
            if self.truncation_flag {
                " (cutoff lower bound)"
            } else {
                ""
            }
        )
    }
}

/// 15 significant digits, scientific notation; deterministic across
/// runs for the IEEE doubles produced here.
pub fn format_float(value: f64) -> String {
    if value == 0.0 {
        return "0.0e0".to_string();
    }
    if value.is_nan() {
        return "\"nan\"".to_string();
    }
    if value.is_infinite() {
        return if value > 0.0 {
            "\"inf\"".to_string()
        } else {
            "\"-inf\"".to_string()
        };
    }
    format!("{value:.14e}")
}

fn escape_json(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            '\r' => out.push_str("\\r"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out
}

/// JSON array of check objects with stable field names. Contains no
/// timestamps, so identical inputs serialize byte-identically.
pub fn to_json(reports: &[CheckReport]) -> String {
    let mut out = String::from("[");
    for (i, r) in reports.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str("\n  {");
        let _ = write!(out, "\"name\": \"{}\", ", escape_json(&r.name));
        out.push_str("\"params\": {");
        for (j, (k, v)) in r.params.iter().enumerate() {
            if j > 0 {
                out.push_str(", ");
            }
            let _ = write!(out, "\"{}\": \"{}\"", escape_json(k), escape_json(v));
        }
        out.push_str("}, ");
        let _ = write!(out, "\"lhs\": {}, ", format_float(r.lhs));
        let _ = write!(out, "\"rhs\": {}, ", format_float(r.rhs));
        let _ = write!(out, "\"slack\": {}, ", format_float(r.slack()));
        let _ = write!(out, "\"tolerance\": {}, ", format_float(r.tolerance));
        let _ = write!(out, "\"pass\": {}, ", r.pass());
        let _ = write!(out, "\"truncation_flag\": {}, ", r.truncation_flag);
        let _ = write!(out, "\"notes\": \"{}\"", escape_json(&r.notes));
        out.push('}');
    }
    if !reports.is_empty() {
        out.push('\n');
    }
    out.push(']');
    out
}

fn escape_csv(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// CSV with the same columns as the JSON objects; params flattened into
/// `key=value` pairs joined by `;`.
pub fn to_csv(reports: &[CheckReport]) -> String {
    let mut out = String::from("name,params,lhs,rhs,slack,tolerance,pass,truncation_flag,notes\n");
    for r in reports {
        let params = r
            .params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(";");
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            escape_csv(&r.name),
            escape_csv(&params),
            format_float(r.lhs),
            format_float(r.rhs),
            format_float(r.slack()),
            format_float(r.tolerance),
            r.pass(),
            r.truncation_flag,
            escape_csv(&r.notes)
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_report_is_bare_array() {
        assert_eq!(to_json(&[]), "[]");
    }

    #[test]
    fn pass_iff_slack_above_negative_tolerance() {
        let ok = CheckReport::new("bound", 1.0, 1.0 - 5e-10, 1e-9);
        assert!(ok.pass());
        let bad = CheckReport::new("bound", 1.0, 1.0 - 2e-9, 1e-9);
        assert!(!bad.pass());
    }

    #[test]
    fn json_shape_single_check() {
        let r = CheckReport::new("demo", 0.5, 1.0, 1e-8)
            .with_param("q", 0.5)
            .with_note("example");
        let s = to_json(&[r]);
        assert!(s.starts_with('['));
        assert!(s.contains("\"name\": \"demo\""));
        assert!(s.contains("\"pass\": true"));
        assert!(s.contains("\"slack\": 5.00000000000000e-1"));
        assert!(s.ends_with(']'));
    }

    #[test]
    fn csv_has_header_and_rows() {
        let r = CheckReport::residual("res", 1e-12, 1e-10);
        let s = to_csv(&[r]);
        let mut lines = s.lines();
        assert_eq!(
            lines.next().unwrap(),
            "name,params,lhs,rhs,slack,tolerance,pass,truncation_flag,notes"
        );
        assert!(lines.next().unwrap().starts_with("res,"));
    }

    #[test]
    fn float_formatting_significant_digits() {
        assert_eq!(format_float(1.0), "1.00000000000000e0");
        assert_eq!(format_float(0.0), "0.0e0");
        let c = 3.462746619455063;
        assert_eq!(format_float(c), "3.46274661945506e0");
    }
}
