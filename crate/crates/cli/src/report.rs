use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use supertriple::linalg::rational::{format, zero};
use supertriple::tensor::decode_tuple;
use supertriple::{Matrix, MultiLinearMap, TripleSystem};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Violations,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Violations => 1,
            Status::Error => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Violations => "violations",
            Status::Error => "error",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InputDigest {
    pub role: String,
    pub path: String,
    /// Hex SHA-256 of the file contents; absent if it could not be read.
    pub sha256: Option<String>,
}

impl InputDigest {
    pub fn of(role: &str, path: &Path) -> Self {
        let sha256 = std::fs::read(path).ok().map(|bytes| hex::encode(Sha256::digest(&bytes)));
        InputDigest { role: role.into(), path: path.display().to_string(), sha256 }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Vec<InputDigest>,
    pub status: Status,
    pub results: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

/// Input digests plus, for files that name a system by relative path,
/// the digest of that system file too.
pub fn digests(inputs: &[(&str, &Path)]) -> Vec<InputDigest> {
    let mut out = Vec::new();
    for (role, path) in inputs {
        out.push(InputDigest::of(role, path));
        if let Some(sys) = referenced_system(path) {
            out.push(InputDigest::of("referenced-system", &sys));
        }
    }
    out
}

fn referenced_system(path: &Path) -> Option<PathBuf> {
    let text = std::fs::read_to_string(path).ok()?;
    let v: Value = serde_json::from_str(&text).ok()?;
    let rel = v.get("system")?.as_str()?;
    Some(path.parent().unwrap_or(Path::new("")).join(rel))
}

pub fn system_summary(t: &TripleSystem) -> Value {
    let (p, q) = t.space().counts();
    json!({
        "name": t.name(),
        "dim": t.dim(),
        "even": p,
        "odd": q,
        "delta": t.delta().as_i64(),
        "parity": t.space().parities(),
    })
}

pub fn system_line(t: &TripleSystem) -> String {
    let (p, q) = t.space().counts();
    let sign = if t.delta().is_minus() { "-1" } else { "+1" };
    format!("system {}: dim {} ({p} even, {q} odd), delta {sign}", t.name(), t.dim())
}

pub fn matrix_json(m: &Matrix) -> Value {
    Value::Array(m.iter_rows().map(|r| Value::Array(r.iter().map(|c| Value::String(format(c))).collect())).collect())
}

pub fn vector_json(v: &[supertriple::Rational]) -> Value {
    Value::Array(v.iter().map(|c| Value::String(format(c))).collect())
}

/// Nonzero values of a multilinear map as `{args, value: {index: coeff}}`.
pub fn sparse_json(map: &MultiLinearMap) -> Value {
    let mut entries = Vec::new();
    for ti in 0..map.num_tuples() {
        let v = map.value_at(ti);
        let value: serde_json::Map<String, Value> =
            v.iter().enumerate().filter(|(_, c)| **c != zero()).map(|(l, c)| (l.to_string(), Value::String(format(c)))).collect();
        if !value.is_empty() {
            entries.push(json!({ "args": decode_tuple(ti, map.arity(), map.in_dim()), "value": value }));
        }
    }
    Value::Array(entries)
}

pub fn sparse_lines(map: &MultiLinearMap) -> Vec<String> {
    let mut out = Vec::new();
    for ti in 0..map.num_tuples() {
        let v = map.value_at(ti);
        let terms: Vec<String> = v.iter().enumerate().filter(|(_, c)| **c != zero()).map(|(l, c)| format!("{} e{l}", format(c))).collect();
        if !terms.is_empty() {
            out.push(format!("{:?} -> {}", decode_tuple(ti, map.arity(), map.in_dim()), terms.join(" + ")));
        }
    }
    if out.is_empty() {
        out.push("0".into());
    }
    out
}

pub fn matrix_lines(m: &Matrix) -> Vec<String> {
    m.iter_rows().map(|r| format!("[{}]", r.iter().map(format).collect::<Vec<_>>().join(", "))).collect()
}

pub fn mark(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}
