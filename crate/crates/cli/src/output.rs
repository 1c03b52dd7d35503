//! Rendering of command results as JSON, CSV or indented text.

use anyhow::Result;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

/// Rows for CSV output.
#[derive(Clone, Debug, Default)]
pub struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: Vec<String>) -> Self {
        Table {
            header,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    /// One `key,value` row per top-level field; nested values stay as JSON text.
    pub fn from_object(v: &Value) -> Self {
        let mut t = Table::new(vec!["key".into(), "value".into()]);
        if let Value::Object(map) = v {
            for (k, x) in map {
                t.push(vec![k.clone(), scalar(x)]);
            }
        }
        t
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn render(format: Format, value: &Value, table: &Table) -> Result<String> {
    Ok(match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(value)?;
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&table.header)?;
            for row in &table.rows {
                w.write_record(row)?;
            }
            String::from_utf8(w.into_inner()?)?
        }
        Format::Pretty => {
            let mut out = String::new();
            pretty(value, 0, &mut out);
            out
        }
    })
}

fn is_leaf(v: &Value) -> bool {
    match v {
        Value::Array(a) => a.iter().all(|x| !x.is_object() && !x.is_array()),
        Value::Object(m) => m.is_empty(),
        _ => true,
    }
}

fn leaf(v: &Value) -> String {
    match v {
        Value::Array(a) => {
            let parts: Vec<String> = a.iter().map(scalar).collect();
            format!("[{}]", parts.join(", "))
        }
        Value::Null => "-".into(),
        other => scalar(other),
    }
}

fn pretty(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                if is_leaf(x) {
                    out.push_str(&format!("{pad}{k}: {}\n", leaf(x)));
                } else {
                    out.push_str(&format!("{pad}{k}:\n"));
                    pretty(x, depth + 1, out);
                }
            }
        }
        Value::Array(items) => {
            for (i, x) in items.iter().enumerate() {
                if is_leaf(x) {
                    out.push_str(&format!("{pad}- {}\n", leaf(x)));
                } else {
                    out.push_str(&format!("{pad}[{i}]\n"));
                    pretty(x, depth + 1, out);
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", leaf(other))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn csv_quotes_embedded_commas() {
        let mut t = Table::new(vec!["a".into(), "b".into()]);
        t.push(vec!["x,y".into(), "1".into()]);
        let s = render(Format::Csv, &Value::Null, &t).unwrap();
        assert_eq!(s, "a,b\n\"x,y\",1\n");
    }

    #[test]
    fn pretty_nests_objects() {
        let v = json!({ "ring": "Zmod:6", "flags": { "edr": "true" }, "list": [1, 2] });
        let s = render(Format::Pretty, &v, &Table::default()).unwrap();
        assert_eq!(s, "flags:\n  edr: true\nlist: [1, 2]\nring: Zmod:6\n");
    }
}
