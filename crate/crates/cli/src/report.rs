//! Reports are ordered key/value rows, rendered either as an aligned table or
//! as one JSON object.

use serde_json::{Map, Value};

pub struct Report {
    pub command: &'static str,
    rows: Vec<(String, Value)>,
}

impl Report {
    pub fn new(command: &'static str) -> Self {
        Report {
            command,
            rows: Vec::new(),
        }
    }

    pub fn row(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.rows.push((key.to_string(), value.into()));
        self
    }

    /// A row whose value is a list of displayable items.
    pub fn list<T: ToString>(&mut self, key: &str, items: impl IntoIterator<Item = T>) -> &mut Self {
        let v: Vec<Value> = items.into_iter().map(|t| Value::String(t.to_string())).collect();
        self.row(key, Value::Array(v))
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("command".into(), Value::String(self.command.into()));
        for (k, v) in &self.rows {
            m.insert(k.clone(), v.clone());
        }
        Value::Object(m)
    }

    pub fn to_text(&self) -> String {
        let w = self.rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        let mut out = format!("== {} ==\n", self.command);
        for (k, v) in &self.rows {
            let cell = render(v);
            let mut lines = cell.lines();
            let first = lines.next().unwrap_or("");
            out.push_str(format!("{k:<w$}  {first}").trim_end());
            out.push('\n');
            for l in lines {
                out.push_str(format!("{:<w$}  {l}", "").trim_end());
                out.push('\n');
            }
        }
        out
    }
}

fn render(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::Bool(b) => if *b { "yes" } else { "no" }.into(),
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        Value::Array(a) if a.is_empty() => "(none)".into(),
        Value::Array(a) if a.iter().all(Value::is_number) => a.iter().map(render).collect::<Vec<_>>().join(", "),
        Value::Array(a) => a.iter().map(render).collect::<Vec<_>>().join("\n"),
        Value::Object(m) => m
            .iter()
            .map(|(k, v)| format!("{k}: {}", render(v)))
            .collect::<Vec<_>>()
            .join(", "),
    }
}
