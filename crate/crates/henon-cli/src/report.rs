//! Output assembly: one [`Report`] per command run, rendered as JSON
//! (`{"config", "results", "checks"}`) or CSV. Rendering is fully
//! deterministic — fixed float formatting, no timestamps — so identical
//! configs produce byte-identical files.

use serde::Serialize;
use serde_json::Value;

/// One verified comparison: the computed left side, the reference right
/// side, their relative discrepancy, and the pass verdict.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub rel_error: f64,
    pub pass: bool,
}

impl Check {
    /// Equality-style check: pass iff the relative error is within tol.
    pub fn rel(name: impl Into<String>, lhs: f64, rhs: f64, tol: f64) -> Self {
        let rel_error = (lhs - rhs).abs() / rhs.abs().max(1e-300);
        Check { name: name.into(), lhs, rhs, rel_error, pass: rel_error <= tol }
    }

    /// Bound-style check: records the witnessed value against the bound it
    /// must stay on the right side of; `pass` is supplied by the caller.
    pub fn bound(name: impl Into<String>, value: f64, bound: f64, pass: bool) -> Self {
        let rel_error = (value - bound).abs() / bound.abs().max(1.0);
        Check { name: name.into(), lhs: value, rhs: bound, rel_error, pass }
    }
}

/// Everything a command produces. `columns` fixes the CSV column order of
/// the result rows; JSON serializes the rows as-is.
pub struct Report {
    pub command: &'static str,
    pub config: Value,
    pub columns: Vec<&'static str>,
    pub results: Vec<Value>,
    pub checks: Vec<Check>,
}

#[derive(Serialize)]
struct JsonView<'a> {
    config: &'a Value,
    results: &'a [Value],
    checks: &'a [Check],
}

impl Report {
    pub fn to_json(&self) -> String {
        let view = JsonView { config: &self.config, results: &self.results, checks: &self.checks };
        let mut s = serde_json::to_string_pretty(&view).expect("report serialization");
        s.push('\n');
        s
    }

    /// Leading `#` comment lines carry the command and config echo; the
    /// first non-comment line is the column header. When checks exist they
    /// follow as a second comment-separated table.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# henon {}\n", self.command));
        out.push_str(&format!("# config {}\n", self.config));
        if !self.columns.is_empty() {
            out.push_str(&self.columns.join(","));
            out.push('\n');
            for row in &self.results {
                let cells: Vec<String> =
                    self.columns.iter().map(|c| csv_cell(&row[*c])).collect();
                out.push_str(&cells.join(","));
                out.push('\n');
            }
        }
        if !self.checks.is_empty() {
            out.push_str("# checks\n");
            out.push_str("name,lhs,rhs,rel_error,pass\n");
            for c in &self.checks {
                out.push_str(&format!(
                    "{},{},{},{},{}\n",
                    csv_escape(&c.name),
                    fmt_float(c.lhs),
                    fmt_float(c.rhs),
                    fmt_float(c.rel_error),
                    c.pass
                ));
            }
        }
        out
    }
}

/// 17 significant digits, enough to round-trip any f64.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn csv_cell(v: &Value) -> String {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                i.to_string()
            } else if let Some(u) = n.as_u64() {
                u.to_string()
            } else {
                fmt_float(n.as_f64().unwrap_or(f64::NAN))
            }
        }
        Value::String(s) => csv_escape(s),
        Value::Bool(b) => b.to_string(),
        Value::Null => String::new(),
        other => csv_escape(&other.to_string()),
    }
}

fn csv_escape(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
