//! Line-oriented complex format and its JSON mirror.
//!
//! ```text
//! # comment
//! v a 0 0
//! v b 1 0
//! v c 0 1/2
//! s a b c
//! ```
//!
//! `v` declares a vertex with optional coordinates, `s` declares a simplex whose faces
//! are implied. Vertices first seen on an `s` line are declared implicitly.

use std::path::Path;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use super::{RawComplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::rational::{format_rat, parse_rat};

pub fn parse_complex_text(text: &str) -> Result<SimplicialComplex> {
    parse_raw_text(text)?.close()
}

struct Builder {
    raw: RawComplex,
    ids: FxHashMap<String, u32>,
}

impl Builder {
    fn new() -> Self {
        Builder { raw: RawComplex::default(), ids: FxHashMap::default() }
    }

    fn has(&self, label: &str) -> bool {
        self.ids.contains_key(label)
    }

    fn id(&mut self, label: &str) -> u32 {
        if let Some(&i) = self.ids.get(label) {
            return i;
        }
        let i = self.raw.labels.len() as u32;
        self.raw.labels.push(label.to_string());
        self.raw.coords.push(None);
        self.ids.insert(label.to_string(), i);
        i
    }
}

pub(crate) fn parse_raw_text(text: &str) -> Result<RawComplex> {
    let mut b = Builder::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| Error::Parse { line: lineno + 1, msg };
        let mut toks = line.split_whitespace();
        match toks.next() {
            Some("v") => {
                let id = toks.next().ok_or_else(|| err("vertex line without identifier".into()))?;
                if b.has(id) {
                    return Err(err(format!("vertex `{id}` declared twice")));
                }
                let v = b.id(id) as usize;
                let coords: Vec<_> = toks.map(|t| parse_rat(t).map_err(|_| err(format!("bad coordinate `{t}`")))).collect::<Result<_>>()?;
                if !coords.is_empty() {
                    b.raw.coords[v] = Some(coords);
                }
            }
            Some("s") => {
                let ids: Vec<u32> = toks.map(|t| b.id(t)).collect();
                if ids.is_empty() {
                    return Err(err("empty simplex".into()));
                }
                let mut sorted = ids.clone();
                sorted.sort_unstable();
                if sorted.windows(2).any(|w| w[0] == w[1]) {
                    return Err(err("repeated vertex in simplex".into()));
                }
                b.raw.simplices.push(ids);
            }
            Some(other) => return Err(err(format!("unknown record `{other}`"))),
            None => {}
        }
    }
    Ok(b.raw)
}

#[derive(Serialize, Deserialize)]
struct JsonVertex {
    id: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    coords: Vec<serde_json::Value>,
}

#[derive(Serialize, Deserialize)]
struct JsonComplex {
    vertices: Vec<JsonVertex>,
    simplices: Vec<Vec<String>>,
}

pub fn parse_complex_json(text: &str) -> Result<SimplicialComplex> {
    complex_from_json(serde_json::from_str(text)?)
}

/// Reads a complex embedded in a larger JSON document.
pub fn complex_from_value(v: &serde_json::Value) -> Result<SimplicialComplex> {
    complex_from_json(serde_json::from_value(v.clone())?)
}

pub fn complex_to_value(c: &SimplicialComplex) -> serde_json::Value {
    serde_json::to_value(to_json(c)).expect("complex serializes")
}

fn complex_from_json(j: JsonComplex) -> Result<SimplicialComplex> {
    let mut b = Builder::new();
    for v in &j.vertices {
        if b.has(&v.id) {
            return Err(Error::Parse { line: 0, msg: format!("vertex `{}` declared twice", v.id) });
        }
        let id = b.id(&v.id) as usize;
        if !v.coords.is_empty() {
            let c = v
                .coords
                .iter()
                .map(|x| match x {
                    serde_json::Value::String(s) => parse_rat(s),
                    serde_json::Value::Number(n) => parse_rat(&n.to_string()),
                    other => Err(Error::Parse { line: 0, msg: format!("bad coordinate {other}") }),
                })
                .collect::<Result<Vec<_>>>()?;
            b.raw.coords[id] = Some(c);
        }
    }
    for s in &j.simplices {
        let ids = s.iter().map(|t| b.id(t)).collect();
        b.raw.simplices.push(ids);
    }
    b.raw.close()
}

/// Parses by content: JSON when `is_json`, the line format otherwise.
pub fn parse_complex(text: &str, is_json: bool) -> Result<SimplicialComplex> {
    if is_json {
        parse_complex_json(text)
    } else {
        parse_complex_text(text)
    }
}

pub fn parse_complex_file(path: &Path) -> Result<SimplicialComplex> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_complex(&text, path.extension().is_some_and(|e| e == "json"))
}

/// Writes vertices in identifier order followed by facets in sorted order.
pub fn write_complex_text(c: &SimplicialComplex) -> String {
    let mut out = String::new();
    for v in c.vertices() {
        out.push_str("v ");
        out.push_str(c.label(v));
        if let Some(x) = c.coord(v) {
            for t in x {
                out.push(' ');
                out.push_str(&format_rat(t));
            }
        }
        out.push('\n');
    }
    for f in c.facets() {
        if f.dim() == 0 {
            continue;
        }
        out.push_str("s ");
        out.push_str(&c.format_simplex(&f));
        out.push('\n');
    }
    out
}

pub fn write_complex_json(c: &SimplicialComplex) -> String {
    serde_json::to_string_pretty(&to_json(c)).expect("complex serializes")
}

fn to_json(c: &SimplicialComplex) -> JsonComplex {
    JsonComplex {
        vertices: c
            .vertices()
            .map(|v| JsonVertex {
                id: c.label(v).to_string(),
                coords: c.coord(v).map(|x| x.iter().map(|t| serde_json::Value::String(format_rat(t))).collect()).unwrap_or_default(),
            })
            .collect(),
        simplices: c.facets().iter().map(|f| f.vertices().iter().map(|&v| c.label(v).to_string()).collect()).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::fixtures;

    #[test]
    fn text_round_trip() {
        let o = fixtures::cross_polytope(2);
        let t = write_complex_text(&o);
        let back = parse_complex_text(&t).unwrap();
        assert_eq!(back.f_vector(), vec![6, 12, 8]);
        assert_eq!(write_complex_text(&back), t);
    }

    #[test]
    fn json_round_trip() {
        let o = fixtures::cross_polytope(1);
        let j = write_complex_json(&o);
        let back = parse_complex_json(&j).unwrap();
        assert_eq!(write_complex_json(&back), j);
        assert_eq!(back.coord(0).unwrap().len(), 2);
    }

    #[test]
    fn implied_faces_and_errors() {
        let c = parse_complex_text("# tri\nv a\nv b\nv c\ns a b c\n").unwrap();
        assert_eq!(c.f_vector(), vec![3, 3, 1]);
        assert!(matches!(parse_complex_text("x a"), Err(Error::Parse { line: 1, .. })));
        assert!(parse_complex_text("s a a").is_err());
        assert!(parse_complex_text("v a 0\nv b\ns a b").is_err());
    }
}
