use rug::{Float, Rational};
use serde_json::{json, Map, Value};

use crate::hyperseries::ZPowerSeries;
use crate::numerics::{format_decimal, ExactKind, RecognizedConstant};

/// Significant digits printed for unrecognized values.
pub const DECIMAL_DIGITS: usize = 40;
/// Significant digits printed for residuals.
pub const RESIDUAL_DIGITS: usize = 6;

pub fn rational(r: &Rational) -> Value {
    Value::String(r.to_string())
}

/// "p/q", {"sqrt": "r"}, {"quadratic": {...}} or {"decimal": ..., "digits": n}.
pub fn exact(kind: &ExactKind, value: &Float) -> Value {
    match kind {
        ExactKind::Rational(r) => rational(r),
        ExactKind::Sqrt(r) => json!({ "sqrt": r.to_string() }),
        ExactKind::Affine { p, q, d } => json!({ "quadratic": { "p": p.to_string(), "q": q.to_string(), "d": d } }),
        ExactKind::Unrecognized => decimal(value, DECIMAL_DIGITS),
    }
}

pub fn recognized(rc: &RecognizedConstant, value: &Float) -> Value {
    exact(&rc.kind, value)
}

pub fn decimal(x: &Float, digits: usize) -> Value {
    json!({ "decimal": format_decimal(x, digits), "digits": digits })
}

pub fn residual(x: &Float) -> Value {
    Value::String(format_decimal(x, RESIDUAL_DIGITS))
}

pub fn series(s: &ZPowerSeries<Rational>) -> Value {
    Value::Array(s.coeffs().iter().map(rational).collect())
}

pub fn object(entries: Vec<(&str, Value)>) -> Value {
    let mut m = Map::new();
    for (k, v) in entries {
        m.insert(k.to_string(), v);
    }
    Value::Object(m)
}

/// Text form of a JSON value for the plain output mode.
pub fn text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Object(m) if m.contains_key("sqrt") => format!("sqrt({})", text(&m["sqrt"])),
        Value::Object(m) if m.contains_key("decimal") => text(&m["decimal"]),
        Value::Object(m) if m.contains_key("quadratic") => {
            let q = &m["quadratic"];
            format!("{} + {}*sqrt({})", text(&q["p"]), text(&q["q"]), q["d"])
        }
        Value::Array(items) => items.iter().map(text).collect::<Vec<_>>().join(", "),
        other => other.to_string(),
    }
}

/// Flattens a JSON object into "key = value" lines.
pub fn lines(v: &Value, prefix: &str, out: &mut Vec<String>) {
    match v {
        Value::Object(m) if !is_leaf(m) => {
            for (k, item) in m {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                lines(item, &key, out);
            }
        }
        Value::Array(items) if items.iter().any(|i| matches!(i, Value::Object(_))) => {
            for (i, item) in items.iter().enumerate() {
                lines(item, &format!("{prefix}[{i}]"), out);
            }
        }
        _ => out.push(format!("{prefix} = {}", text(v))),
    }
}

fn is_leaf(m: &Map<String, Value>) -> bool {
    m.contains_key("sqrt") || m.contains_key("decimal") || m.contains_key("quadratic")
}
