//! Partial comparison of an expected report against a computed one.

use serde_json::Value;

/// Field-level differences between `expected` and `actual`.
///
/// Objects are compared on the keys `expected` lists, skipping keys that
/// start with `_`; arrays must have equal length and match elementwise;
/// everything else must be equal.
pub fn diff(expected: &Value, actual: &Value) -> Vec<String> {
    let mut out = Vec::new();
    walk("$", expected, actual, &mut out);
    out
}

fn walk(path: &str, expected: &Value, actual: &Value, out: &mut Vec<String>) {
    match (expected, actual) {
        (Value::Object(e), Value::Object(a)) => {
            for (k, ev) in e {
                if k.starts_with('_') {
                    continue;
                }
                let p = format!("{path}.{k}");
                match a.get(k) {
                    Some(av) => walk(&p, ev, av, out),
                    None => out.push(format!("{p}: expected {ev}, field missing")),
                }
            }
        }
        (Value::Array(e), Value::Array(a)) => {
            if e.len() != a.len() {
                out.push(format!("{path}: expected {} entries, found {}", e.len(), a.len()));
                return;
            }
            for (i, (ev, av)) in e.iter().zip(a).enumerate() {
                walk(&format!("{path}[{i}]"), ev, av, out);
            }
        }
        (e, a) if e == a => {}
        (e, a) => out.push(format!("{path}: expected {e}, found {a}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn partial_objects_and_arrays() {
        let actual = json!({"a": true, "b": [{"x": 1, "y": 2}, {"x": 3, "y": 4}], "c": "z"});
        assert!(diff(&json!({"a": true}), &actual).is_empty());
        assert!(diff(&json!({"b": [{"x": 1}, {"y": 4}], "_note": "ignored"}), &actual).is_empty());
        assert_eq!(
            diff(&json!({"a": false}), &actual),
            vec!["$.a: expected false, found true"]
        );
        assert_eq!(
            diff(&json!({"b": [{}]}), &actual),
            vec!["$.b: expected 1 entries, found 2"]
        );
        assert_eq!(diff(&json!({"q": 1}), &actual), vec!["$.q: expected 1, field missing"]);
        assert_eq!(
            diff(&json!({"b": [{"x": 1}, {"x": 0}]}), &actual),
            vec!["$.b[1].x: expected 0, found 3"]
        );
    }
}
