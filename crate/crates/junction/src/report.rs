//! Deterministic flat JSON reports.
//!
//! Keys keep insertion order, floats are written with 17 significant digits
//! (`{:.16e}`, exact f64 round-trip), and non-finite floats become `null`.
//! Equal inputs therefore produce byte-identical documents.

use std::fmt::Write as _;

#[derive(Clone, Debug, PartialEq)]
pub enum JsonValue {
    Num(f64),
    Int(i64),
    Bool(bool),
    Str(String),
    Null,
}

#[derive(Clone, Debug, Default)]
pub struct JsonReport {
    entries: Vec<(String, JsonValue)>,
}

impl JsonReport {
    pub fn new() -> Self {
        JsonReport { entries: Vec::new() }
    }

    pub fn push(&mut self, key: &str, value: JsonValue) -> &mut Self {
        self.entries.push((key.to_string(), value));
        self
    }

    pub fn num(&mut self, key: &str, v: f64) -> &mut Self {
        self.push(key, JsonValue::Num(v))
    }

    pub fn int(&mut self, key: &str, v: i64) -> &mut Self {
        self.push(key, JsonValue::Int(v))
    }

    pub fn bool(&mut self, key: &str, v: bool) -> &mut Self {
        self.push(key, JsonValue::Bool(v))
    }

    pub fn str(&mut self, key: &str, v: &str) -> &mut Self {
        self.push(key, JsonValue::Str(v.to_string()))
    }

    pub fn opt_num(&mut self, key: &str, v: Option<f64>) -> &mut Self {
        match v {
            Some(x) => self.num(key, x),
            None => self.push(key, JsonValue::Null),
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::from("{\n");
        for (i, (k, v)) in self.entries.iter().enumerate() {
            out.push_str("  ");
            write_json_string(&mut out, k);
            out.push_str(": ");
            match v {
                JsonValue::Num(x) => {
                    if x.is_finite() {
                        let _ = write!(out, "{x:.16e}");
                    } else {
                        out.push_str("null");
                    }
                }
                JsonValue::Int(x) => {
                    let _ = write!(out, "{x}");
                }
                JsonValue::Bool(x) => out.push_str(if *x { "true" } else { "false" }),
                JsonValue::Str(s) => write_json_string(&mut out, s),
                JsonValue::Null => out.push_str("null"),
            }
            if i + 1 < self.entries.len() {
                out.push(',');
            }
            out.push('\n');
        }
        out.push_str("}\n");
        out
    }
}

fn write_json_string(out: &mut String, s: &str) {
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
}
