//! CSV rendering of a JSON report, and the flattening both formats share for
//! consistency checks.
//!
//! A document is a sequence of tables separated by blank lines, each
//! introduced by a `# <name>` line and a header row:
//!
//! * `fields`: `field,value` for scalars, nested objects (dotted keys) and
//!   scalar arrays (joined with `;`);
//! * `polynomial`: `index,coefficient`;
//! * one table per nonempty array of objects, headed by the object keys.

use std::collections::BTreeMap;

use serde_json::{Map, Value};

const LIST_SEP: &str = ";";

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(scalar).collect::<Vec<_>>().join(LIST_SEP),
        other => other.to_string(),
    }
}

fn is_table(v: &Value) -> bool {
    matches!(v, Value::Array(items) if items.iter().any(Value::is_object))
        || matches!(v, Value::Array(items) if items.is_empty())
}

fn collect_fields(prefix: &str, obj: &Map<String, Value>, out: &mut Vec<(String, String)>) {
    for (k, v) in obj {
        let key = if prefix.is_empty() {
            k.clone()
        } else {
            format!("{prefix}.{k}")
        };
        match v {
            Value::Object(inner) => collect_fields(&key, inner, out),
            _ if prefix.is_empty() && (k == "polynomial" || is_table(v)) => {}
            _ => out.push((key, scalar(v))),
        }
    }
}

fn write_table(
    out: &mut String,
    name: &str,
    header: &[String],
    rows: &[Vec<String>],
) -> csv::Result<()> {
    if !out.is_empty() {
        out.push('\n');
    }
    out.push_str("# ");
    out.push_str(name);
    out.push('\n');
    let mut w = csv::Writer::from_writer(Vec::new());
    if !header.is_empty() {
        w.write_record(header)?;
    }
    for r in rows {
        w.write_record(r)?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    out.push_str(&String::from_utf8_lossy(&bytes));
    Ok(())
}

/// Renders a report object as a multi-table CSV document.
pub fn to_csv(report: &Value) -> csv::Result<String> {
    let obj = report.as_object().cloned().unwrap_or_default();
    let mut out = String::new();

    let mut fields = Vec::new();
    collect_fields("", &obj, &mut fields);
    let rows: Vec<Vec<String>> = fields.into_iter().map(|(k, v)| vec![k, v]).collect();
    write_table(&mut out, "fields", &["field".into(), "value".into()], &rows)?;

    if let Some(Value::Array(coeffs)) = obj.get("polynomial") {
        let rows: Vec<Vec<String>> = coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| vec![i.to_string(), scalar(c)])
            .collect();
        write_table(
            &mut out,
            "polynomial",
            &["index".into(), "coefficient".into()],
            &rows,
        )?;
    }

    for (name, v) in &obj {
        let Value::Array(items) = v else { continue };
        if name == "polynomial" || items.is_empty() || !is_table(v) {
            continue;
        }
        let header: Vec<String> = items
            .first()
            .and_then(Value::as_object)
            .map(|o| o.keys().cloned().collect())
            .unwrap_or_default();
        let rows: Vec<Vec<String>> = items
            .iter()
            .map(|item| {
                header
                    .iter()
                    .map(|h| item.get(h).map(scalar).unwrap_or_default())
                    .collect()
            })
            .collect();
        write_table(&mut out, name, &header, &rows)?;
    }
    Ok(out)
}

/// Canonical `path -> text` view of a report: `a.b` for nested fields,
/// `polynomial.3`, `roots.2.re`, and `;`-joined scalar arrays.
pub fn flatten_json(report: &Value) -> BTreeMap<String, String> {
    let mut map = BTreeMap::new();
    let Some(obj) = report.as_object() else {
        return map;
    };
    let mut fields = Vec::new();
    collect_fields("", obj, &mut fields);
    map.extend(fields);
    for (name, v) in obj {
        let Value::Array(items) = v else { continue };
        if name == "polynomial" {
            for (i, c) in items.iter().enumerate() {
                map.insert(format!("polynomial.{i}"), scalar(c));
            }
        } else if is_table(v) {
            for (i, item) in items.iter().enumerate() {
                for (k, x) in item.as_object().into_iter().flatten() {
                    map.insert(format!("{name}.{i}.{k}"), scalar(x));
                }
            }
        }
    }
    map
}

/// Parses a document written by [`to_csv`] into the [`flatten_json`] view.
pub fn flatten_csv(text: &str) -> csv::Result<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for block in text.split("\n\n") {
        let Some((title, body)) = block.split_once('\n') else {
            continue;
        };
        let name = title.trim_start_matches('#').trim();
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(true)
            .from_reader(body.as_bytes());
        let header = reader.headers()?.clone();
        for (i, record) in reader.records().enumerate() {
            let record = record?;
            match name {
                "fields" => {
                    map.insert(record[0].to_string(), record[1].to_string());
                }
                "polynomial" => {
                    map.insert(format!("polynomial.{}", &record[0]), record[1].to_string());
                }
                _ => {
                    for (h, v) in header.iter().zip(record.iter()) {
                        map.insert(format!("{name}.{i}.{h}"), v.to_string());
                    }
                }
            }
        }
    }
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn roundtrip_view() {
        let v = json!({
            "n": 4,
            "polynomial": ["0", "2", "5"],
            "shape": {"unimodal": true, "modes": [1, 2], "first": null},
            "roots": [{"re": -1.5, "im": 0.25, "residual": null}],
            "discrepancies": [],
            "detail": "a, \"quoted\" value",
        });
        let csv = to_csv(&v).unwrap();
        assert!(csv.contains("index,coefficient\n0,0\n1,2\n2,5\n"));
        assert_eq!(flatten_csv(&csv).unwrap(), flatten_json(&v));
    }
}
