//! Aligned plain-text rendering of JSON output.

use serde_json::Value;

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn header(text: &str, colour: bool) -> String {
    if colour {
        format!("\x1b[1m{text}\x1b[0m")
    } else {
        text.to_owned()
    }
}

fn grid(columns: &[String], rows: &[Vec<String>], colour: bool) -> String {
    let mut widths: Vec<usize> = columns.iter().map(|c| c.chars().count()).collect();
    for row in rows {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: &[String]| {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        padded.join("  ").trim_end().to_owned()
    };
    let mut out = header(&line(columns), colour);
    out.push('\n');
    for row in rows {
        out.push_str(&line(row));
        out.push('\n');
    }
    out
}

/// Objects become key/value rows; arrays of objects become one row each,
/// with columns taken from the first element.
pub fn render(value: &Value, colour: bool) -> String {
    match value {
        Value::Object(map) => {
            let rows: Vec<Vec<String>> = map.iter().map(|(k, v)| vec![k.clone(), cell(v)]).collect();
            grid(&["key".into(), "value".into()], &rows, colour)
        }
        Value::Array(items) => {
            let columns: Vec<String> = match items.first() {
                Some(Value::Object(first)) => first.keys().cloned().collect(),
                _ => vec!["value".into()],
            };
            let rows: Vec<Vec<String>> = items
                .iter()
                .map(|item| match item {
                    Value::Object(m) => columns.iter().map(|c| m.get(c).map_or_else(String::new, cell)).collect(),
                    other => vec![cell(other)],
                })
                .collect();
            grid(&columns, &rows, colour)
        }
        other => format!("{}\n", cell(other)),
    }
}
