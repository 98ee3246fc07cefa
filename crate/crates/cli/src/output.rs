//! Result documents and their two renderings.

use std::fmt::Write as _;

use serde_json::{Map, Number, Value};
use wsim_core::C64;

/// Significant digits of every printed float.
pub const DIGITS: usize = 15;

pub struct ResultDocument {
    pub command: &'static str,
    pub inputs: Map<String, Value>,
    pub results: Map<String, Value>,
    pub tolerances: Map<String, Value>,
    pub warnings: Vec<String>,
}

impl ResultDocument {
    pub fn new(command: &'static str) -> Self {
        Self {
            command,
            inputs: Map::new(),
            results: Map::new(),
            tolerances: Map::new(),
            warnings: Vec::new(),
        }
    }

    pub fn into_value(self) -> Value {
        let mut doc = Map::new();
        doc.insert("command".into(), Value::String(self.command.into()));
        doc.insert("inputs".into(), Value::Object(self.inputs));
        doc.insert("results".into(), Value::Object(self.results));
        doc.insert("tolerances".into(), Value::Object(self.tolerances));
        doc.insert(
            "warnings".into(),
            Value::Array(self.warnings.into_iter().map(Value::String).collect()),
        );
        Value::Object(doc)
    }
}

/// `x` rounded to [`DIGITS`] significant digits. Plain notation between
/// `1e-5` and `1e15`, exponent notation outside; trailing zeros dropped.
pub fn format_float(x: f64) -> String {
    if x == 0.0 {
        return "0.0".into();
    }
    let sci = format!("{:.*e}", DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..15).contains(&exp) {
        let decimals = (DIGITS as i32 - 1 - exp).max(0) as usize;
        trim(&format!("{:.*}", decimals, x))
    } else {
        format!("{}e{}", trim(mantissa), exp)
    }
}

fn trim(s: &str) -> String {
    if !s.contains('.') {
        return format!("{s}.0");
    }
    let t = s.trim_end_matches('0');
    if t.ends_with('.') {
        format!("{t}0")
    } else {
        t.to_string()
    }
}

pub fn num(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    let text = format_float(x);
    Value::Number(Number::from_string_unchecked(text))
}

pub fn cnum(z: C64) -> Value {
    Value::Array(vec![num(z.re), num(z.im)])
}

pub fn nums(xs: impl IntoIterator<Item = f64>) -> Value {
    Value::Array(xs.into_iter().map(num).collect())
}

pub fn cnums<'a>(zs: impl IntoIterator<Item = &'a C64>) -> Value {
    Value::Array(zs.into_iter().map(|&z| cnum(z)).collect())
}

pub fn json(doc: &Value) -> String {
    let mut text = serde_json::to_string_pretty(doc).expect("serializable document");
    text.push('\n');
    text
}

/// Indented outline; arrays of flat objects with identical keys become tables.
pub fn pretty(doc: &Value) -> String {
    let mut out = String::new();
    if let Value::Object(map) = doc {
        for (key, value) in map {
            render(&mut out, key, value, 0);
        }
    }
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.iter().all(|i| !i.is_array() && !i.is_object()) => {
            let parts: Vec<String> = items.iter().filter_map(scalar).collect();
            Some(format!("[{}]", parts.join(", ")))
        }
        _ => None,
    }
}

fn table_keys(items: &[Value]) -> Option<Vec<String>> {
    let first = items.first()?.as_object()?;
    let keys: Vec<String> = first.keys().cloned().collect();
    let flat = items.iter().all(|item| {
        item.as_object()
            .is_some_and(|o| o.keys().eq(keys.iter()) && o.values().all(|v| scalar(v).is_some()))
    });
    flat.then_some(keys)
}

fn render(out: &mut String, key: &str, value: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    if let Some(text) = scalar(value) {
        let _ = writeln!(out, "{pad}{key}: {text}");
        return;
    }
    match value {
        Value::Object(map) => {
            let _ = writeln!(out, "{pad}{key}:");
            for (k, v) in map {
                render(out, k, v, depth + 1);
            }
        }
        Value::Array(items) => {
            let _ = writeln!(out, "{pad}{key}:");
            if let Some(keys) = table_keys(items) {
                let rows: Vec<Vec<String>> = items
                    .iter()
                    .map(|item| {
                        keys.iter()
                            .map(|k| scalar(&item[k]).unwrap_or_default())
                            .collect()
                    })
                    .collect();
                let widths: Vec<usize> = keys
                    .iter()
                    .enumerate()
                    .map(|(i, k)| {
                        rows.iter()
                            .map(|r| r[i].len())
                            .max()
                            .unwrap_or(0)
                            .max(k.len())
                    })
                    .collect();
                let line = |cells: Vec<&str>| {
                    cells
                        .iter()
                        .zip(&widths)
                        .map(|(c, w)| format!("{c:<w$}"))
                        .collect::<Vec<_>>()
                        .join("  ")
                };
                let _ = writeln!(
                    out,
                    "{pad}  {}",
                    line(keys.iter().map(String::as_str).collect()).trim_end()
                );
                for row in &rows {
                    let _ = writeln!(
                        out,
                        "{pad}  {}",
                        line(row.iter().map(String::as_str).collect()).trim_end()
                    );
                }
            } else {
                for (i, item) in items.iter().enumerate() {
                    render(out, &format!("[{i}]"), item, depth + 1);
                }
            }
        }
        _ => {}
    }
}
