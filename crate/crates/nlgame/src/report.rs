//! Run reports: what a command consumed, what it computed, and what it
//! wrote, in a human-readable text form or a machine-readable JSON form.
//!
//! Every numeric result carries a precision annotation: exact values print
//! as rationals, floating-point values carry the tolerance they were
//! computed to.

use std::fmt::Write as _;

/// FNV-1a 64-bit content digest; stable and dependency-free.
pub fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut hash: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x100000001b3);
    }
    hash
}

#[derive(Clone, Debug)]
pub enum ReportValue {
    /// Exact rational or integer, rendered as text.
    Exact(String),
    /// Floating-point value with its tolerance annotation.
    Approx { value: f64, tolerance: f64 },
    Count(u128),
    Text(String),
    Flag(bool),
}

#[derive(Clone, Debug)]
pub struct ReportItem {
    pub name: String,
    pub value: ReportValue,
}

/// Record of one command invocation.
#[derive(Clone, Debug, Default)]
pub struct RunReport {
    pub command: String,
    /// `(path, digest)` pairs for every input file.
    pub inputs: Vec<(String, String)>,
    pub results: Vec<ReportItem>,
    /// Paths written by the command.
    pub artifacts: Vec<String>,
    pub timings_ms: Vec<(String, u128)>,
    /// Number of validation diagnostics raised (drives the exit code).
    pub validation_failures: usize,
}

impl RunReport {
    pub fn new(command: impl Into<String>) -> Self {
        RunReport { command: command.into(), ..Default::default() }
    }

    pub fn add_input(&mut self, path: &str, contents: &[u8]) {
        self.inputs.push((path.to_string(), format!("fnv1a64:{:016x}", fnv1a64(contents))));
    }

    pub fn exact(&mut self, name: impl Into<String>, value: impl ToString) {
        self.results.push(ReportItem {
            name: name.into(),
            value: ReportValue::Exact(value.to_string()),
        });
    }

    pub fn approx(&mut self, name: impl Into<String>, value: f64, tolerance: f64) {
        self.results.push(ReportItem {
            name: name.into(),
            value: ReportValue::Approx { value, tolerance },
        });
    }

    pub fn count(&mut self, name: impl Into<String>, value: u128) {
        self.results.push(ReportItem { name: name.into(), value: ReportValue::Count(value) });
    }

    pub fn text(&mut self, name: impl Into<String>, value: impl Into<String>) {
        self.results.push(ReportItem { name: name.into(), value: ReportValue::Text(value.into()) });
    }

    pub fn flag(&mut self, name: impl Into<String>, value: bool) {
        self.results.push(ReportItem { name: name.into(), value: ReportValue::Flag(value) });
    }

    pub fn artifact(&mut self, path: impl Into<String>) {
        self.artifacts.push(path.into());
    }

    pub fn timing(&mut self, name: impl Into<String>, millis: u128) {
        self.timings_ms.push((name.into(), millis));
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        for (path, digest) in &self.inputs {
            let _ = writeln!(out, "input: {path} ({digest})");
        }
        for item in &self.results {
            match &item.value {
                ReportValue::Exact(v) => {
                    let _ = writeln!(out, "{}: {} (exact)", item.name, v);
                }
                ReportValue::Approx { value, tolerance } => {
                    let _ = writeln!(out, "{}: {:.12} (tolerance {:.0e})", item.name, value, tolerance);
                }
                ReportValue::Count(v) => {
                    let _ = writeln!(out, "{}: {} (exact)", item.name, v);
                }
                ReportValue::Text(v) => {
                    let _ = writeln!(out, "{}: {}", item.name, v);
                }
                ReportValue::Flag(v) => {
                    let _ = writeln!(out, "{}: {}", item.name, v);
                }
            }
        }
        for path in &self.artifacts {
            let _ = writeln!(out, "wrote: {path}");
        }
        for (name, ms) in &self.timings_ms {
            let _ = writeln!(out, "timing: {name} {ms}ms");
        }
        if self.validation_failures > 0 {
            let _ = writeln!(out, "validation failures: {}", self.validation_failures);
        }
        out
    }

    pub fn to_structured(&self) -> String {
        let mut out = String::from("{");
        let _ = write!(out, "\"command\":{}", json_string(&self.command));
        out.push_str(",\"inputs\":[");
        for (i, (path, digest)) in self.inputs.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            let _ = write!(out, "{{\"path\":{},\"digest\":{}}}", json_string(path), json_string(digest));
        }
        out.push_str("],\"results\":[");
        for (i, item) in self.results.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            let _ = write!(out, "{{\"name\":{},", json_string(&item.name));
            match &item.value {
                ReportValue::Exact(v) => {
                    let _ = write!(out, "\"kind\":\"exact\",\"value\":{}", json_string(v));
                }
                ReportValue::Approx { value, tolerance } => {
                    let _ = write!(
                        out,
                        "\"kind\":\"approx\",\"value\":{},\"tolerance\":{}",
                        json_number(*value),
                        json_number(*tolerance)
                    );
                }
                ReportValue::Count(v) => {
                    let _ = write!(out, "\"kind\":\"count\",\"value\":{v}");
                }
                ReportValue::Text(v) => {
                    let _ = write!(out, "\"kind\":\"text\",\"value\":{}", json_string(v));
                }
                ReportValue::Flag(v) => {
                    let _ = write!(out, "\"kind\":\"flag\",\"value\":{v}");
                }
            }
            out.push('}');
        }
        out.push_str("],\"artifacts\":[");
        for (i, path) in self.artifacts.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str(&json_string(path));
        }
        out.push_str("],\"timings_ms\":[");
        for (i, (name, ms)) in self.timings_ms.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            let _ = write!(out, "{{\"name\":{},\"millis\":{ms}}}", json_string(name));
        }
        let _ = write!(out, "],\"validation_failures\":{}", self.validation_failures);
        out.push('}');
        out
    }
}

fn json_string(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn json_number(x: f64) -> String {
    if x.is_finite() {
        format!("{x}")
    } else {
        // JSON has no infinities; encode as strings.
        format!("\"{x}\"")
    }
}
