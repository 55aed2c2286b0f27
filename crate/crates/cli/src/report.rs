//! Reports: the same content rendered as JSON or as plain text.

use std::fmt::Write as _;

use jordanis::Matrix;
use serde::Serialize;
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Tensor {
    pub shape: Vec<usize>,
    pub data: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub columns: Option<Vec<String>>,
}

impl Tensor {
    pub fn matrix(m: &Matrix<f64>) -> Self {
        Tensor {
            shape: vec![m.rows(), m.cols()],
            data: m.as_slice().to_vec(),
            columns: None,
        }
    }

    pub fn vector(v: &[f64]) -> Self {
        Tensor {
            shape: vec![v.len()],
            data: v.to_vec(),
            columns: None,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub input_digest: String,
    pub seed: u64,
    pub tolerances: Map<String, Value>,
    pub verdicts: Map<String, Value>,
    pub values: Map<String, Value>,
    pub tensors: Map<String, Value>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

pub fn digest(bytes: &[u8]) -> String {
    format!("sha256:{}", hex::encode(Sha256::digest(bytes)))
}

fn num(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        format!("{x}")
    }
}

fn render_value(v: &Value) -> String {
    match v {
        Value::Number(n) if n.is_f64() => num(n.as_f64().unwrap()),
        Value::String(s) => s.clone(),
        Value::Null => "null".into(),
        other => other.to_string(),
    }
}

impl Report {
    pub fn new(command: impl Into<String>, input_digest: String, seed: u64, tol: f64) -> Self {
        let mut r = Report {
            command: command.into(),
            input_digest,
            seed,
            ..Default::default()
        };
        r.tolerance("tol", tol);
        r
    }

    pub fn tolerance(&mut self, name: &str, v: f64) {
        self.tolerances.insert(name.into(), v.into());
    }

    pub fn verdict(&mut self, name: &str, v: impl Into<Value>) {
        self.verdicts.insert(name.into(), v.into());
    }

    pub fn value(&mut self, name: &str, v: impl Into<Value>) {
        self.values.insert(name.into(), v.into());
    }

    pub fn tensor(&mut self, name: &str, t: Tensor) {
        self.tensors
            .insert(name.into(), serde_json::to_value(t).expect("tensor serializes"));
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "command: {}", self.command);
        let _ = writeln!(s, "input digest: {}", self.input_digest);
        let _ = writeln!(s, "seed: {}", self.seed);
        if let Some(e) = &self.error {
            let _ = writeln!(s, "error: {e}");
        }
        for (title, map) in [
            ("tolerances", &self.tolerances),
            ("verdicts", &self.verdicts),
            ("values", &self.values),
        ] {
            if map.is_empty() {
                continue;
            }
            let _ = writeln!(s, "{title}:");
            for (k, v) in map {
                let _ = writeln!(s, "  {k}: {}", render_value(v));
            }
        }
        if !self.tensors.is_empty() {
            let _ = writeln!(s, "tensors:");
        }
        for (k, v) in &self.tensors {
            let shape: Vec<usize> = serde_json::from_value(v["shape"].clone()).unwrap_or_default();
            let data: Vec<Option<f64>> = serde_json::from_value(v["data"].clone()).unwrap_or_default();
            let dims: Vec<String> = shape.iter().map(|d| d.to_string()).collect();
            let _ = writeln!(s, "  {k} [{}]:", dims.join("x"));
            if let Some(cols) = v.get("columns").and_then(|c| c.as_array()) {
                let names: Vec<&str> = cols.iter().filter_map(|c| c.as_str()).collect();
                let _ = writeln!(s, "    {}", names.join("  "));
            }
            let width = *shape.last().unwrap_or(&1);
            for row in data.chunks(width.max(1)) {
                let cells: Vec<String> = row.iter().map(|x| x.map_or("nan".into(), num)).collect();
                let _ = writeln!(s, "    {}", cells.join("  "));
            }
        }
        for n in &self.notes {
            let _ = writeln!(s, "note: {n}");
        }
        s
    }
}
