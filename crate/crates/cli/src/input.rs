//! Weierstrass input files: one `{"n", "A", "B"}` object or an array of
//! them, coefficients ascending in `t` as `"p/q"` strings or integers.

use anyhow::{anyhow, bail, Context, Result};
use ellchow_core::weierstrass::WeierstrassPair;
use serde_json::Value;

pub fn parse_pairs(text: &str) -> Result<Vec<WeierstrassPair>> {
    let value: Value = serde_json::from_str(text)
        .map_err(|e| anyhow!("malformed JSON at line {}, column {}: {e}", e.line(), e.column()))?;
    match value {
        Value::Array(items) => items
            .iter()
            .enumerate()
            .map(|(i, item)| parse_pair(item).with_context(|| format!("record [{i}]")))
            .collect(),
        obj @ Value::Object(_) => Ok(vec![parse_pair(&obj).context("record")?]),
        _ => bail!("expected an object or an array of objects"),
    }
}

fn coefficient_strings(obj: &serde_json::Map<String, Value>, field: &str) -> Result<Vec<String>> {
    let items = obj
        .get(field)
        .ok_or_else(|| anyhow!("missing field \"{field}\""))?
        .as_array()
        .ok_or_else(|| anyhow!("field \"{field}\" must be an array"))?;
    items
        .iter()
        .enumerate()
        .map(|(i, v)| match v {
            Value::String(s) => Ok(s.clone()),
            Value::Number(n) if n.is_i64() => Ok(n.to_string()),
            _ => bail!("{field}[{i}]: expected a \"p/q\" string or an integer"),
        })
        .collect()
}

fn parse_pair(v: &Value) -> Result<WeierstrassPair> {
    let obj = v.as_object().ok_or_else(|| anyhow!("expected an object"))?;
    let n = obj
        .get("n")
        .ok_or_else(|| anyhow!("missing field \"n\""))?
        .as_i64()
        .ok_or_else(|| anyhow!("field \"n\" must be an integer"))?;
    let a = coefficient_strings(obj, "A")?;
    let b = coefficient_strings(obj, "B")?;
    Ok(WeierstrassPair::from_strings(n, &a, &b)?)
}
