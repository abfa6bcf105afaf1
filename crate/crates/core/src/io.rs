//! Canonical JSON encodings of every record the toolkit exchanges: knots,
//! angles, jump functions, rho values, patterns, axes, linking forms,
//! certificates and verdicts. Emission is deterministic (alphabetical
//! object keys through `serde_json`'s BTreeMap representation), rationals
//! travel as reduced `"p/q"` strings, and no floating-point value appears
//! anywhere.

use crate::exact::rat::{rat_from_str, rat_to_string};
use crate::seifert::SeifertMatrix;
use crate::{Error, Result};
use num::bigint::BigInt;
use num::rational::BigRational;
use serde_json::{json, Map, Value};

fn schema_err(msg: impl Into<String>) -> Error {
    Error::Schema(msg.into())
}

/// Parse a JSON text into a value with parse errors surfaced.
pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))
}

pub fn rational_to_value(r: &BigRational) -> Value {
    Value::String(rat_to_string(r))
}

pub fn rational_from_value(v: &Value) -> Result<BigRational> {
    match v {
        Value::String(s) => rat_from_str(s),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigRational::from(BigInt::from(i)))
            } else {
                Err(schema_err(format!(
                    "rational must be an integer or \"p/q\" string, got {n}"
                )))
            }
        }
        other => Err(schema_err(format!("expected rational, got {other}"))),
    }
}

pub fn bigint_from_value(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| schema_err(format!("integer out of range: {n}"))),
        Value::String(s) => s
            .parse()
            .map_err(|_| schema_err(format!("bad integer {s:?}"))),
        other => Err(schema_err(format!("expected integer, got {other}"))),
    }
}

// ---------------------------------------------------------------------------
// Knots and catalogs

pub fn knot_to_value(k: &SeifertMatrix) -> Value {
    let rows: Vec<Value> = k
        .entries()
        .iter()
        .map(|row| {
            Value::Array(
                row.iter()
                    .map(|x| serde_json::to_value(x.to_string().parse::<i64>().ok()).unwrap_or(Value::String(x.to_string())))
                    .collect(),
            )
        })
        .collect();
    let mut m = Map::new();
    if let Some(name) = k.name() {
        m.insert("name".into(), Value::String(name.to_string()));
    }
    m.insert("seifert".into(), Value::Array(rows));
    Value::Object(m)
}

pub fn knot_from_value(v: &Value) -> Result<SeifertMatrix> {
    let obj = v
        .as_object()
        .ok_or_else(|| schema_err("knot record must be an object"))?;
    let name = obj
        .get("name")
        .and_then(|n| n.as_str())
        .map(|s| s.to_string());
    let rows_v = obj
        .get("seifert")
        .ok_or_else(|| schema_err("knot record missing field \"seifert\""))?
        .as_array()
        .ok_or_else(|| schema_err("\"seifert\" must be an array of rows"))?;
    let mut entries = vec![];
    for row in rows_v {
        let row = row
            .as_array()
            .ok_or_else(|| schema_err("matrix row must be an array"))?;
        let mut out = vec![];
        for x in row {
            out.push(bigint_from_value(x)?);
        }
        entries.push(out);
    }
    SeifertMatrix::new(entries, name)
}

/// Parse a catalog file: a JSON array of knot records.
pub fn parse_catalog(text: &str) -> Result<Vec<SeifertMatrix>> {
    let v = parse_json(text)?;
    let arr = v
        .as_array()
        .ok_or_else(|| schema_err("catalog must be a JSON array"))?;
    arr.iter().map(knot_from_value).collect()
}

pub fn catalog_to_value(knots: &[SeifertMatrix]) -> Value {
    Value::Array(knots.iter().map(knot_to_value).collect())
}

/// Canonical serialization: compact JSON with sorted keys.
pub fn to_canonical_string(v: &Value) -> String {
    serde_json::to_string(v).expect("serialization cannot fail")
}

pub fn to_pretty_string(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serialization cannot fail")
}

#[allow(unused)]
fn placeholder() -> Value {
    json!({})
}
