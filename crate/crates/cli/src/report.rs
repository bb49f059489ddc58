//! Machine-readable reports with a text rendering. Objects are
//! `serde_json::Map`s, which keep keys sorted, so output is canonical.

use num_rational::BigRational;
use serde_json::{json, Map, Value};

use kirwan::linalg::Subspace;
use kirwan::symcore::rational_string;

#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub digest: Option<String>,
    pub parameters: Map<String, Value>,
    pub results: Map<String, Value>,
    pub warnings: Vec<String>,
    /// Named verdicts.
    pub checks: Map<String, Value>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            digest: None,
            parameters: Map::new(),
            results: Map::new(),
            warnings: Vec::new(),
            checks: Map::new(),
        }
    }

    pub fn param(&mut self, key: &str, v: impl Into<Value>) {
        self.parameters.insert(key.to_string(), v.into());
    }

    pub fn result(&mut self, key: &str, v: impl Into<Value>) {
        self.results.insert(key.to_string(), v.into());
    }

    pub fn check(&mut self, key: &str, pass: bool) {
        self.checks.insert(key.to_string(), Value::Bool(pass));
    }

    pub fn pass(&self) -> bool {
        self.checks.values().all(|v| v.as_bool() == Some(true))
    }

    pub fn to_value(&self) -> Value {
        json!({
            "command": self.command,
            "input_digest": self.digest,
            "parameters": self.parameters,
            "results": self.results,
            "warnings": self.warnings,
            "checks": self.checks,
            "pass": self.pass(),
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("values serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("{}: {}\n", self.command, if self.pass() { "PASS" } else { "FAIL" }));
        if let Some(d) = &self.digest {
            out.push_str(&format!("input sha256 {d}\n"));
        }
        for (title, map) in [("parameters", &self.parameters), ("checks", &self.checks), ("results", &self.results)] {
            if map.is_empty() {
                continue;
            }
            out.push_str(&format!("{title}:\n"));
            for (k, v) in map {
                render(&mut out, k, v, 1);
            }
        }
        for w in &self.warnings {
            out.push_str(&format!("warning: {w}\n"));
        }
        out
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(if *b { "pass".into() } else { "FAIL".into() }),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| scalar(x).is_some() && !x.is_array() && !x.is_object()) => {
            Some(format!("[{}]", a.iter().map(|x| scalar(x).unwrap()).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

fn render(out: &mut String, key: &str, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    if let Some(s) = scalar(v) {
        out.push_str(&format!("{pad}{key}: {s}\n"));
        return;
    }
    out.push_str(&format!("{pad}{key}:\n"));
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                render(out, k, x, depth + 1);
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                render(out, &format!("[{i}]"), x, depth + 1);
            }
        }
        _ => unreachable!(),
    }
}

pub fn q(r: &BigRational) -> Value {
    Value::String(rational_string(r))
}

pub fn vector(v: &[BigRational]) -> Value {
    Value::Array(v.iter().map(q).collect())
}

pub fn subspace(s: &Subspace) -> Value {
    json!({ "dim": s.dim(), "basis": s.basis().iter().map(|v| vector(v)).collect::<Vec<_>>() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_are_sorted_and_rationals_are_strings() {
        let mut r = Report::new("t");
        r.result("zeta", 1);
        r.result("alpha", q(&BigRational::new((-2).into(), 4.into())));
        r.check("ok", true);
        let s = r.to_json();
        assert!(s.find("alpha").unwrap() < s.find("zeta").unwrap());
        assert!(s.contains("\"-1/2\""));
        assert!(r.to_text().starts_with("t: PASS"));
        r.check("bad", false);
        assert!(!r.pass());
    }
}
