//! CSV and JSON rendering with fixed float formatting.

use serde_json::{Map, Number, Value};

use crate::args::Format;

/// Shortest string that parses back to `x`, in exponent form when
/// |x| < 1e-5 or |x| >= 1e16.
pub fn format_f64(x: f64) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.into();
    }
    let a = x.abs();
    if a != 0.0 && !(1e-5..1e16).contains(&a) {
        format!("{x:e}")
    } else {
        format!("{x}")
    }
}

/// A JSON number, or a string for values JSON cannot hold.
pub fn json_f64(x: f64) -> Value {
    match Number::from_f64(x) {
        Some(n) => Value::Number(n),
        None => Value::String(format_f64(x)),
    }
}

pub struct Artifact {
    pub meta: Map<String, Value>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<f64>>,
    pub summary: Map<String, Value>,
}

impl Artifact {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Artifact {
            meta: Map::new(),
            columns,
            rows: Vec::new(),
            summary: Map::new(),
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.csv(),
            Format::Json => self.json(),
        }
    }

    fn csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|&x| format_f64(x)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    fn json(&self) -> String {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(c, &x)| (c.to_string(), json_f64(x)))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        let mut doc = Map::new();
        doc.insert("meta".into(), Value::Object(self.meta.clone()));
        doc.insert("rows".into(), Value::Array(rows));
        doc.insert("summary".into(), Value::Object(self.summary.clone()));
        let mut out =
            serde_json::to_string_pretty(&Value::Object(doc)).expect("JSON values serialize");
        out.push('\n');
        out
    }
}
