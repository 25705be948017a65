//! Deterministic machine-readable reports.
//!
//! A report is an ordered list of `key = value` records under a fixed
//! header. Every floating value renders with 17 significant digits, so a
//! report is a pure function of its inputs byte for byte.

use std::fmt::Write as _;

use sha2::{Digest, Sha256};

/// 17 significant digits: one leading digit plus 16 after the point in
/// scientific notation. Round-trips every finite `f64`.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Clone, Debug)]
pub enum Value {
    Text(String),
    Float(f64),
    Int(i64),
    Bool(bool),
    FloatList(Vec<f64>),
}

impl Value {
    fn render(&self) -> String {
        match self {
            Value::Text(s) => s.clone(),
            Value::Float(x) => fmt_f64(*x),
            Value::Int(i) => i.to_string(),
            Value::Bool(b) => b.to_string(),
            Value::FloatList(xs) => {
                let inner: Vec<String> = xs.iter().map(|&x| fmt_f64(x)).collect();
                format!("[{}]", inner.join(", "))
            }
        }
    }
}

/// Ordered report of one command run.
#[derive(Clone, Debug, Default)]
pub struct Report {
    entries: Vec<(String, Value)>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        let mut r = Report::default();
        r.push_text("command", command);
        r
    }

    pub fn push(&mut self, key: impl Into<String>, value: Value) {
        self.entries.push((key.into(), value));
    }

    pub fn push_text(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.push(key, Value::Text(value.into()));
    }

    pub fn push_float(&mut self, key: impl Into<String>, value: f64) {
        self.push(key, Value::Float(value));
    }

    pub fn push_int(&mut self, key: impl Into<String>, value: i64) {
        self.push(key, Value::Int(value));
    }

    pub fn push_bool(&mut self, key: impl Into<String>, value: bool) {
        self.push(key, Value::Bool(value));
    }

    pub fn push_floats(&mut self, key: impl Into<String>, values: Vec<f64>) {
        self.push(key, Value::FloatList(values));
    }

    /// Records a named input file by content digest.
    pub fn push_input(&mut self, name: &str, bytes: &[u8]) {
        let mut hasher = Sha256::new();
        hasher.update(bytes);
        self.push_text(format!("input.{name}"), format!("sha256:{:x}", hasher.finalize()));
    }

    /// Records the tolerance set in force.
    pub fn push_tolerances(&mut self, tol: &crate::tol::Tol) {
        for (name, value) in tol.entries() {
            self.push_float(format!("tol.{name}"), value);
        }
    }

    pub fn entries(&self) -> &[(String, Value)] {
        &self.entries
    }

    pub fn get_text(&self, key: &str) -> Option<&str> {
        self.entries.iter().find_map(|(k, v)| {
            if k == key {
                match v {
                    Value::Text(s) => Some(s.as_str()),
                    _ => None,
                }
            } else {
                None
            }
        })
    }

    pub fn render(&self) -> String {
        let mut out = String::from("qframes-report/1\n");
        for (key, value) in &self.entries {
            let _ = writeln!(out, "{key} = {}", value.render());
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_formatting_has_17_significant_digits() {
        assert_eq!(fmt_f64(1.0), "1.0000000000000000e0");
        assert_eq!(fmt_f64(-0.5), "-5.0000000000000000e-1");
        let x = 0.1 + 0.2;
        let s = fmt_f64(x);
        let back: f64 = s.parse().unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn rendering_is_deterministic() {
        let build = || {
            let mut r = Report::new("analyze");
            r.push_float("metric.m", 1.0 / 3.0);
            r.push_bool("verdict.tight", false);
            r.push_int("frame.points", 3);
            r.render()
        };
        assert_eq!(build(), build());
        assert!(build().starts_with("qframes-report/1\ncommand = analyze\n"));
    }
}
