use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Output of one command. Rationals appear as strings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub verb: String,
    pub truncation: Option<String>,
    pub ok: bool,
    pub result: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

pub fn render_table(report: &Report) -> String {
    let mut out = String::new();
    out.push_str(&format!("verb        {}\n", report.verb));
    if let Some(t) = &report.truncation {
        out.push_str(&format!("truncation  {t}\n"));
    }
    out.push_str(&format!("status      {}\n", if report.ok { "ok" } else { "FAILED" }));
    if let Some(e) = &report.error {
        out.push_str(&format!("error       {e}\n"));
    }
    out.push_str("result\n");
    render(&report.result, 1, &mut out);
    if let Some(c) = &report.certificate {
        out.push_str("certificate\n");
        render(c, 1, &mut out);
    }
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.iter().all(|i| matches!(i, Value::Number(_) | Value::String(_) | Value::Bool(_))) => {
            Some(format!(
                "[{}]",
                items.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")
            ))
        }
        _ => None,
    }
}

fn render(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            let width = map.keys().map(|k| k.chars().count()).max().unwrap_or(0);
            for (k, item) in map {
                match scalar(item) {
                    Some(s) => out.push_str(&format!("{pad}{k:<width$}  {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}\n"));
                        render(item, depth + 1, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match scalar(item) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        render(item, depth + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}
