use crate::{Failure, EXIT_IO};
use clap::ValueEnum;
use serde_json::{json, Map};
use std::io::Write;
use std::path::PathBuf;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Clone)]
pub enum Value {
    Num(f64),
    Text(String),
    Bool(bool),
    Null,
}

impl Value {
    pub fn opt(v: Option<f64>) -> Value {
        v.map_or(Value::Null, Value::Num)
    }

    fn text(&self) -> String {
        match self {
            Value::Num(v) => format!("{v:.15e}"),
            Value::Text(s) => s.clone(),
            Value::Bool(b) => if *b { "pass" } else { "fail" }.to_string(),
            Value::Null => String::new(),
        }
    }

    fn short(&self) -> String {
        match self {
            Value::Num(v) if *v == 0.0 || (1e-3..1e6).contains(&v.abs()) => format!("{v:.10}"),
            Value::Num(v) => format!("{v:.6e}"),
            Value::Null => "-".into(),
            other => other.text(),
        }
    }

    fn json(&self) -> serde_json::Value {
        match self {
            Value::Num(v) if v.is_finite() => json!(v),
            Value::Text(s) => json!(s),
            Value::Bool(b) => json!(b),
            _ => serde_json::Value::Null,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Row(pub Vec<Value>);

#[derive(Debug, Clone)]
pub struct Report {
    pub command: &'static str,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Row>,
    pub notes: Vec<String>,
    /// Full structured results, emitted only in JSON.
    pub details: Vec<serde_json::Value>,
    pub pass: Option<bool>,
}

impl Report {
    pub fn new(command: &'static str, columns: &[&'static str]) -> Self {
        Report {
            command,
            columns: columns.to_vec(),
            rows: Vec::new(),
            notes: Vec::new(),
            details: Vec::new(),
            pass: None,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.csv(),
            Format::Json => self.json(),
            Format::Table => self.table(),
        }
    }

    fn csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.0.iter().map(|v| v.text()).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    fn table(&self) -> String {
        let cells: Vec<Vec<String>> = self.rows.iter().map(|r| r.0.iter().map(|v| v.short()).collect()).collect();
        let widths: Vec<usize> = self
            .columns
            .iter()
            .enumerate()
            .map(|(i, c)| cells.iter().map(|r| r[i].len()).chain([c.len()]).max().unwrap())
            .collect();
        let line = |items: Vec<String>| -> String {
            let padded: Vec<String> = items.iter().zip(&widths).map(|(s, w)| format!("{s:>w$}")).collect();
            padded.join("  ").trim_end().to_string() + "\n"
        };
        let mut out = line(self.columns.iter().map(|c| c.to_string()).collect());
        for r in cells {
            out.push_str(&line(r));
        }
        for n in &self.notes {
            out.push_str(&format!("note: {n}\n"));
        }
        if let Some(p) = self.pass {
            out.push_str(if p { "overall: PASS\n" } else { "overall: FAIL\n" });
        }
        out
    }

    fn json(&self) -> String {
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|r| {
                let mut m = Map::new();
                for (c, v) in self.columns.iter().zip(&r.0) {
                    m.insert(c.to_string(), v.json());
                }
                serde_json::Value::Object(m)
            })
            .collect();
        let generated_at = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        let doc = json!({
            "schema": 1,
            "command": self.command,
            "generated_at": generated_at,
            "rows": rows,
            "notes": self.notes,
            "details": self.details,
            "pass": self.pass,
        });
        serde_json::to_string_pretty(&doc).unwrap() + "\n"
    }
}

pub fn write(out: Option<&PathBuf>, text: &str) -> Result<(), Failure> {
    let io = |e: std::io::Error, what: &str| Failure {
        code: EXIT_IO,
        message: format!("{what}: {e}"),
    };
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| io(e, &path.display().to_string())),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| io(e, "stdout")),
    }
}
