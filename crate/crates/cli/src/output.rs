//! Deterministic rendering of command results.
//!
//! Every command produces one uniform table. CSV prints a header row and the
//! cells, floats always with 17 significant digits so values round-trip;
//! JSON wraps the same rows in `{command, params, results, pass}`; text is a
//! line of `key=value` pairs per row plus optional `#`-prefixed summary
//! lines. Row order is fixed by construction, so repeated runs are
//! byte-identical.

use serde_json::{json, Map, Value as Json};

#[derive(Clone, Debug)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Str(String),
    Bool(bool),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => format_float(*v),
            Cell::Str(v) => csv_quote(v),
            Cell::Bool(v) => v.to_string(),
        }
    }

    fn text(&self) -> String {
        match self {
            Cell::Str(v) => v.clone(),
            other => other.csv(),
        }
    }

    fn json(&self) -> Json {
        match self {
            Cell::Int(v) => json!(v),
            Cell::Float(v) => json!(v),
            Cell::Str(v) => json!(v),
            Cell::Bool(v) => json!(v),
        }
    }
}

/// 17 significant digits; enough for exact f64 round-trips.
pub fn format_float(v: f64) -> String {
    format!("{:.16e}", v)
}

fn csv_quote(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[derive(Clone, Debug)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    /// Extra summary objects appended to JSON results and emitted as
    /// `#`-prefixed lines in text output; not part of the CSV table.
    pub summaries: Vec<Map<String, Json>>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Self {
            columns,
            rows: Vec::new(),
            summaries: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(Cell::csv).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_text(&self, command: &str, params: &Map<String, Json>, pass: bool) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", command));
        let params_line: Vec<String> = params.iter().map(|(k, v)| format!("{}={}", k, v)).collect();
        out.push_str(&format!("params: {}\n", params_line.join(" ")));
        for row in &self.rows {
            let line: Vec<String> = self
                .columns
                .iter()
                .zip(row)
                .map(|(c, v)| format!("{}={}", c, v.text()))
                .collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        for summary in &self.summaries {
            let line: Vec<String> = summary
                .iter()
                .map(|(k, v)| format!("{}={}", k, v))
                .collect();
            out.push_str(&format!("# {}\n", line.join(" ")));
        }
        out.push_str(&format!("pass: {}\n", pass));
        out
    }

    pub fn to_json(&self, command: &str, params: &Map<String, Json>, pass: bool) -> String {
        let mut results: Vec<Json> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = Map::new();
                for (col, cell) in self.columns.iter().zip(row) {
                    obj.insert((*col).to_string(), cell.json());
                }
                Json::Object(obj)
            })
            .collect();
        for summary in &self.summaries {
            results.push(Json::Object(summary.clone()));
        }
        let doc = json!({
            "command": command,
            "params": Json::Object(params.clone()),
            "results": results,
            "pass": pass,
        });
        let mut text = serde_json::to_string_pretty(&doc).expect("serializable");
        text.push('\n');
        text
    }
}
