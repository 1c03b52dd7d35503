//! Table rings loaded from JSON.
//!
//! ```json
//! {"elements": ["0", "1"], "add": [[0, 1], [1, 0]], "mul": [["0", "0"], ["0", "1"]]}
//! ```
//!
//! Table entries are either element indices or element names.

use super::FiniteRing;
use crate::error::{Error, Result};
use serde_json::Value;

/// Largest accepted table ring.
pub const TABLE_RING_LIMIT: usize = 64;

/// Name of the built-in table for F₂[x,y]/(x², xy, y²).
pub const BUILTIN_F2XY: &str = "builtin:f2xy";

fn table_err(detail: impl Into<String>) -> Error {
    Error::TableAxiom {
        law: "table format",
        detail: detail.into(),
    }
}

/// Parses a JSON table description into a validated ring.
pub fn load_table_json(spec: &str, text: &str) -> Result<FiniteRing> {
    let v: Value = serde_json::from_str(text)?;
    let names: Vec<String> = v
        .get("elements")
        .and_then(Value::as_array)
        .ok_or_else(|| table_err("missing `elements` array"))?
        .iter()
        .map(|x| match x {
            Value::String(s) => Ok(s.clone()),
            Value::Number(k) => Ok(k.to_string()),
            _ => Err(table_err("element names must be strings")),
        })
        .collect::<Result<_>>()?;
    let n = names.len();
    if n > TABLE_RING_LIMIT {
        return Err(Error::TooLarge {
            what: "table ring",
            size: n,
            limit: TABLE_RING_LIMIT,
        });
    }
    if n == 0 {
        return Err(table_err("no elements"));
    }
    for (i, a) in names.iter().enumerate() {
        if names[..i].contains(a) {
            return Err(table_err(format!("duplicate element name `{a}`")));
        }
    }
    let read = |key: &str| -> Result<Vec<u16>> {
        let rows = v
            .get(key)
            .and_then(Value::as_array)
            .ok_or_else(|| table_err(format!("missing `{key}` table")))?;
        if rows.len() != n {
            return Err(table_err(format!("`{key}` needs {n} rows")));
        }
        let mut out = Vec::with_capacity(n * n);
        for row in rows {
            let row = row
                .as_array()
                .filter(|r| r.len() == n)
                .ok_or_else(|| table_err(format!("`{key}` rows need {n} entries")))?;
            for x in row {
                let k = match x {
                    Value::Number(k) => k.as_u64().map(|k| k as usize),
                    Value::String(s) => names.iter().position(|m| m == s),
                    _ => None,
                }
                .filter(|&k| k < n)
                .ok_or_else(|| table_err(format!("bad `{key}` entry {x}")))?;
                out.push(k as u16);
            }
        }
        Ok(out)
    };
    let add = read("add")?;
    let mul = read("mul")?;
    FiniteRing::from_tables(spec.to_string(), names, add, mul)
}

/// F₂[x,y]/(x², xy, y²) with element `a + b·x + c·y` at index `a + 2b + 4c`.
pub(crate) fn builtin_f2xy(spec: &str) -> Result<FiniteRing> {
    let names: Vec<String> = ["0", "1", "x", "1+x", "y", "1+y", "x+y", "1+x+y"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let mut add = vec![0u16; 64];
    let mut mul = vec![0u16; 64];
    for i in 0..8usize {
        for j in 0..8usize {
            add[i * 8 + j] = (i ^ j) as u16;
            let (a, b, c) = (i & 1, (i >> 1) & 1, (i >> 2) & 1);
            let (d, e, f) = (j & 1, (j >> 1) & 1, (j >> 2) & 1);
            let k0 = a * d;
            let k1 = (a * e + b * d) % 2;
            let k2 = (a * f + c * d) % 2;
            mul[i * 8 + j] = (k0 + 2 * k1 + 4 * k2) as u16;
        }
    }
    FiniteRing::from_tables(spec.to_string(), names, add, mul)
}
