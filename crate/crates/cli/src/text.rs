//! Plain-text rendering of report values as aligned tables.

use serde_json::Value;

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn pad_rows(rows: &[Vec<String>], indent: &str, out: &mut String) {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| {
            rows.iter()
                .filter_map(|r| r.get(c))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    for r in rows {
        let mut line = String::from(indent);
        for (c, s) in r.iter().enumerate() {
            if c + 1 == r.len() {
                line.push_str(s);
            } else {
                line.push_str(s);
                line.extend(std::iter::repeat_n(' ', widths[c] - s.chars().count() + 2));
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
}

fn table(items: &[Value], out: &mut String) {
    let mut header: Vec<String> = Vec::new();
    for item in items {
        if let Value::Object(m) = item {
            for k in m.keys() {
                if !header.contains(k) {
                    header.push(k.clone());
                }
            }
        }
    }
    let mut rows = vec![header.clone()];
    for item in items {
        rows.push(header.iter().map(|k| item.get(k).map(cell).unwrap_or_default()).collect());
    }
    pad_rows(&rows, "  ", out);
}

/// Scalars and flat arrays become `key  value` lines, arrays of objects
/// become tables, nested objects become indented key/value blocks.
pub fn render(v: &Value) -> String {
    let mut out = String::new();
    let Value::Object(m) = v else {
        out.push_str(&cell(v));
        out.push('\n');
        return out;
    };
    let mut flat: Vec<Vec<String>> = Vec::new();
    let mut blocks: Vec<(&String, &Value)> = Vec::new();
    for (k, x) in m {
        let is_table = matches!(x, Value::Array(a) if !a.is_empty() && a.iter().all(Value::is_object));
        if is_table || x.is_object() {
            blocks.push((k, x));
        } else {
            flat.push(vec![k.clone(), cell(x)]);
        }
    }
    pad_rows(&flat, "", &mut out);
    for (k, x) in blocks {
        out.push_str(k);
        out.push_str(":\n");
        match x {
            Value::Array(a) => table(a, &mut out),
            Value::Object(o) => {
                let rows: Vec<Vec<String>> = o.iter().map(|(k, v)| vec![k.clone(), cell(v)]).collect();
                pad_rows(&rows, "  ", &mut out);
            }
            _ => {}
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn aligns_columns() {
        let s = render(&json!({"f_vector": [3, 3, 1], "euler": 1}));
        assert_eq!(s, "f_vector  [3,3,1]\neuler     1\n");
        let s = render(&json!({"rows": [{"k": 1, "name": "ab"}, {"k": 10, "name": "c"}]}));
        assert_eq!(s, "rows:\n  k   name\n  1   ab\n  10  c\n");
    }
}
