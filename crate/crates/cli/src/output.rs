//! Number formatting and file output shared by the subcommands.

use std::fs;
use std::path::Path;

use anyhow::Context;
use serde::Serialize;
use serde_json::Value;

/// `v` rounded to 9 significant digits.
pub fn round_sig(v: f64) -> f64 {
    if !v.is_finite() || v == 0.0 {
        return v;
    }
    format!("{v:.8e}").parse().unwrap_or(v)
}

/// Text form of `v` with at most 9 significant digits.
pub fn fmt_float(v: f64) -> String {
    let r = round_sig(v);
    if r == 0.0 || (1e-4..1e15).contains(&r.abs()) {
        r.to_string()
    } else {
        format!("{r:e}")
    }
}

/// Rounds every float in `value` to 9 significant digits.
pub fn canonical(value: Value) -> Value {
    match value {
        Value::Number(n) if n.is_f64() => {
            let v = n.as_f64().unwrap_or(f64::NAN);
            serde_json::Number::from_f64(round_sig(v)).map_or(Value::Null, Value::Number)
        }
        Value::Array(items) => Value::Array(items.into_iter().map(canonical).collect()),
        Value::Object(map) => Value::Object(map.into_iter().map(|(k, v)| (k, canonical(v))).collect()),
        other => other,
    }
}

pub fn to_json<T: Serialize>(value: &T) -> anyhow::Result<String> {
    let v = canonical(serde_json::to_value(value)?);
    Ok(serde_json::to_string_pretty(&v)? + "\n")
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> anyhow::Result<()> {
    fs::write(path, to_json(value)?).with_context(|| format!("writing {}", path.display()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nine_digits() {
        assert_eq!(fmt_float(1.7066950526114237), "1.70669505");
        assert_eq!(fmt_float(1.1699250014423124), "1.169925");
        assert_eq!(fmt_float(2.0), "2");
        assert_eq!(fmt_float(2.907397114420867e-29), "2.90739711e-29");
    }

    #[test]
    fn json_floats_rounded() {
        let v = canonical(serde_json::json!({"a": [0.1234567891234, 3], "b": null}));
        assert_eq!(v.to_string(), r#"{"a":[0.123456789,3],"b":null}"#);
    }
}
