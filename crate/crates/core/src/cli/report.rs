use serde_json::{Map, Value};

/// Version and invocation echoed at the top of every output.
#[derive(Clone, Debug)]
pub struct Header {
    pub version: &'static str,
    pub invocation: String,
    pub seed: u64,
}

impl Header {
    pub fn to_text(&self) -> String {
        format!("# obstructor {}\n# invocation: {}\n# seed: {}\n", self.version, self.invocation, self.seed)
    }

    pub fn to_value(&self) -> Value {
        serde_json::json!({ "version": self.version, "invocation": self.invocation, "seed": self.seed })
    }
}

/// An ordered key-value report. Text output flattens nested objects into dotted keys;
/// JSON output keeps the nesting. Both come from the same map.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    fields: Map<String, Value>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn put(&mut self, key: impl Into<String>, value: impl Into<Value>) -> &mut Self {
        self.fields.insert(key.into(), value.into());
        self
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.fields.get(key)
    }

    pub fn fields(&self) -> &Map<String, Value> {
        &self.fields
    }

    pub fn to_value(&self) -> Value {
        Value::Object(self.fields.clone())
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.fields {
            flatten(k, v, &mut out);
        }
        out
    }

    /// The `key: value` pairs the text form shows, in order.
    pub fn flat_pairs(&self) -> Vec<(String, String)> {
        parse_text(&self.to_text())
    }
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Object(_) => false,
        Value::Array(xs) => xs.iter().all(|x| !x.is_object() && is_flat(x)),
        _ => true,
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn flatten(key: &str, v: &Value, out: &mut String) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                flatten(&format!("{key}.{k}"), x, out);
            }
        }
        Value::Array(xs) if !is_flat(v) => {
            for (i, x) in xs.iter().enumerate() {
                flatten(&format!("{key}.{i}"), x, out);
            }
        }
        _ => {
            out.push_str(key);
            out.push_str(": ");
            out.push_str(&scalar(v));
            out.push('\n');
        }
    }
}

/// Splits report text into pairs, skipping header comments.
pub fn parse_text(text: &str) -> Vec<(String, String)> {
    text.lines()
        .filter(|l| !l.starts_with('#') && !l.is_empty())
        .filter_map(|l| l.split_once(": ").map(|(k, v)| (k.to_string(), v.to_string())))
        .collect()
}

/// The pairs a JSON report flattens to, for comparing against the text form.
pub fn flatten_value(v: &Value) -> Vec<(String, String)> {
    let mut out = String::new();
    if let Value::Object(m) = v {
        for (k, x) in m {
            flatten(k, x, &mut out);
        }
    }
    parse_text(&out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn nested_keys_flatten() {
        let mut r = Report::new();
        r.put("m", 2).put("betti", json!([1, 0, 1])).put("level", json!([{ "radius": 1, "f": [3, 2] }]));
        r.put("name", "k5");
        assert_eq!(r.to_text(), "m: 2\nbetti: [1,0,1]\nlevel.0.radius: 1\nlevel.0.f: [3,2]\nname: k5\n");
        assert_eq!(flatten_value(&r.to_value()), r.flat_pairs());
    }

    #[test]
    fn header_lines_are_comments() {
        let h = Header { version: "0.1.0", invocation: "obstructor homology a.cplx".into(), seed: 7 };
        assert!(h.to_text().lines().all(|l| l.starts_with("# ")));
        assert!(parse_text(&h.to_text()).is_empty());
    }
}
