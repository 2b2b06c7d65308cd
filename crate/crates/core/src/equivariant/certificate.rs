use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{check_involution, is_mod2_cycle, SphereMap};
use crate::complex::{complex_from_value, complex_to_value, is_product_simplex, Simplex, SimplicialComplex, Vertex};
use crate::deleted::diagonal_distances;
use crate::error::{Error, Result};
use crate::rational::{format_rat, parse_rat};

/// An equivariant map of the certificate complex into the level `Y_r` of a window `Y`.
#[derive(Clone, Debug)]
pub struct TargetMap {
    pub window: SimplicialComplex,
    pub radius: usize,
    /// Per certificate identifier, the window pair `(u, w)`; unused identifiers hold
    /// `(u32::MAX, u32::MAX)`.
    pub map: Vec<(Vertex, Vertex)>,
}

/// The data of an essential Z₂-m-cycle: a mod-2 cycle complex, a free involution, an
/// equivariant map to a sphere and optionally an equivariant map into a diagonal
/// complement.
#[derive(Clone, Debug)]
pub struct EssentialCycleCertificate {
    pub complex: SimplicialComplex,
    pub involution: Vec<Vertex>,
    pub sphere: SphereMap,
    pub target: Option<TargetMap>,
    /// Free-form provenance: which construction produced the certificate.
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub m: Option<usize>,
    pub deg2: Option<u8>,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("essential: {}\n", self.passed());
        match self.m {
            Some(m) => out.push_str(&format!("m: {m}\n")),
            None => out.push_str("m: none\n"),
        }
        match self.deg2 {
            Some(d) => out.push_str(&format!("deg2: {d}\n")),
            None => out.push_str("deg2: none\n"),
        }
        for c in &self.checks {
            let status = if c.passed { "pass" } else { "fail" };
            if c.detail.is_empty() {
                out.push_str(&format!("check {}: {status}\n", c.name));
            } else {
                out.push_str(&format!("check {}: {status} ({})\n", c.name, c.detail));
            }
        }
        out
    }
}

fn check(name: &'static str, passed: bool, detail: impl Into<String>) -> Check {
    Check { name, passed, detail: detail.into() }
}

/// Runs every condition and reports all of them; nothing short-circuits except checks
/// whose inputs are missing.
pub fn verify_essential_cycle(cert: &EssentialCycleCertificate) -> VerificationReport {
    let c = &cert.complex;
    let m = c.dim();
    let mut checks = Vec::new();

    let pure = c.is_pure() && !c.is_empty();
    let even = pure && is_mod2_cycle(c);
    let detail = if !pure {
        "complex is empty or not pure".to_string()
    } else if !even {
        let m = m.unwrap();
        let odd = c.coface_counts(m - 1).iter().filter(|n| *n % 2 == 1).count();
        format!("{odd} codimension-one simplices have odd incidence")
    } else {
        String::new()
    };
    checks.push(check("even-incidence", even, detail));

    let inv = check_involution(c, &cert.involution);
    checks.push(match &inv {
        Ok(_) => check("free-involution", true, ""),
        Err(e) => check("free-involution", false, e.to_string()),
    });

    let mut deg = None;
    if cert.sphere.sphere_dim() != m {
        checks.push(check("sphere-dimension", false, format!("sphere has dimension {:?}, cycle {:?}", cert.sphere.sphere_dim(), m)));
    } else if inv.is_ok() {
        let bad = cert.sphere.equivariance_failures(c, &cert.involution);
        checks.push(check("sphere-equivariant", bad.is_empty(), failed_vertices(c, &bad)));
        if bad.is_empty() && even {
            match cert.sphere.degree(c) {
                Ok(d) => {
                    deg = Some(d);
                    checks.push(check("deg2", d == 1, format!("deg2 = {d}")));
                }
                Err(e) => checks.push(check("deg2", false, e.to_string())),
            }
        }
    }

    if let Some(t) = &cert.target {
        checks.extend(check_target(c, &cert.involution, t));
    }
    VerificationReport { m, deg2: deg, checks }
}

fn failed_vertices(c: &SimplicialComplex, bad: &[Vertex]) -> String {
    if bad.is_empty() {
        return String::new();
    }
    let shown: Vec<&str> = bad.iter().take(5).map(|&v| c.label(v)).collect();
    format!("{} vertices, first: {}", bad.len(), shown.join(" "))
}

fn check_target(c: &SimplicialComplex, perm: &[Vertex], t: &TargetMap) -> Vec<Check> {
    let y = &t.window;
    let n = y.id_space() as u32;
    let is_vertex = |v: Vertex| (v as usize) < y.id_space() && y.contains(&Simplex::vertex(v));
    let missing: Vec<Vertex> = c
        .vertices()
        .filter(|&v| {
            let (a, b) = t.map.get(v as usize).copied().unwrap_or((u32::MAX, u32::MAX));
            !is_vertex(a) || !is_vertex(b)
        })
        .collect();
    if !missing.is_empty() {
        return vec![check("target-defined", false, failed_vertices(c, &missing))];
    }
    let bad_eq: Vec<Vertex> = c
        .vertices()
        .filter(|&v| {
            let (a, b) = t.map[v as usize];
            perm.get(v as usize).and_then(|&w| t.map.get(w as usize)) != Some(&(b, a))
        })
        .collect();
    let dist = diagonal_distances(y);
    let mut outside = 0usize;
    let mut first = None;
    for f in c.facets() {
        let img = Simplex::spanned_by(f.vertices().iter().map(|&v| {
            let (a, b) = t.map[v as usize];
            a * n + b
        }));
        let near = img.vertices().iter().any(|&p| dist[p as usize] == u32::MAX || (dist[p as usize] as usize) < t.radius);
        if near || !is_product_simplex(y, y, &img) {
            outside += 1;
            first.get_or_insert_with(|| c.format_simplex(&f));
        }
    }
    let detail = first.map(|s| format!("{outside} facets leave the level, first: {s}")).unwrap_or_default();
    vec![check("target-equivariant", bad_eq.is_empty(), failed_vertices(c, &bad_eq)), check("target-in-level", outside == 0, detail)]
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum JsonSphere {
    CrossPolytope { dim: usize, map: Vec<(String, Vertex)> },
    Vectors { vectors: Vec<(String, Vec<String>)> },
}

#[derive(Serialize, Deserialize)]
struct JsonTarget {
    window: Value,
    radius: usize,
    map: Vec<(String, String, String)>,
}

#[derive(Serialize, Deserialize)]
struct JsonBundle {
    complex: Value,
    involution: Vec<(String, String)>,
    sphere: JsonSphere,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    target: Option<JsonTarget>,
    #[serde(default)]
    note: String,
}

impl EssentialCycleCertificate {
    /// The bundle format: one JSON document keyed by vertex labels.
    pub fn to_json(&self) -> String {
        let c = &self.complex;
        let label = |v: Vertex| c.label(v).to_string();
        let sphere = match &self.sphere {
            SphereMap::CrossPolytope { dim, map } => {
                JsonSphere::CrossPolytope { dim: *dim, map: c.vertices().map(|v| (label(v), map[v as usize])).collect() }
            }
            SphereMap::Vectors(x) => JsonSphere::Vectors {
                vectors: c.vertices().map(|v| (label(v), x[v as usize].iter().map(format_rat).collect())).collect(),
            },
        };
        let target = self.target.as_ref().map(|t| JsonTarget {
            window: complex_to_value(&t.window),
            radius: t.radius,
            map: c
                .vertices()
                .map(|v| {
                    let (a, b) = t.map[v as usize];
                    (label(v), t.window.label(a).to_string(), t.window.label(b).to_string())
                })
                .collect(),
        });
        let bundle = JsonBundle {
            complex: complex_to_value(c),
            involution: c
                .vertices()
                .filter(|&v| v < self.involution[v as usize])
                .map(|v| (label(v), label(self.involution[v as usize])))
                .collect(),
            sphere,
            target,
            note: self.note.clone(),
        };
        serde_json::to_string_pretty(&bundle).expect("bundle serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let b: JsonBundle = serde_json::from_str(text)?;
        let complex = complex_from_value(&b.complex)?;
        let lookup = complex.label_lookup();
        let get = |l: &str| lookup.get(l).copied().ok_or_else(|| Error::UnknownVertex(l.to_string()));
        let n = complex.id_space();
        let mut involution: Vec<Vertex> = (0..n as u32).collect();
        for (x, y) in &b.involution {
            let (x, y) = (get(x)?, get(y)?);
            involution[x as usize] = y;
            involution[y as usize] = x;
        }
        let sphere = match b.sphere {
            JsonSphere::CrossPolytope { dim, map } => {
                let mut out = vec![0; n];
                for (l, t) in map {
                    out[get(&l)? as usize] = t;
                }
                SphereMap::CrossPolytope { dim, map: out }
            }
            JsonSphere::Vectors { vectors } => {
                let mut out = vec![Vec::new(); n];
                for (l, xs) in vectors {
                    out[get(&l)? as usize] = xs.iter().map(|s| parse_rat(s)).collect::<Result<_>>()?;
                }
                SphereMap::Vectors(out)
            }
        };
        let target = match b.target {
            None => None,
            Some(t) => {
                let window = complex_from_value(&t.window)?;
                let wl = window.label_lookup();
                let wget = |l: &str| wl.get(l).copied().ok_or_else(|| Error::UnknownVertex(l.to_string()));
                let mut map = vec![(u32::MAX, u32::MAX); n];
                for (l, a, bb) in &t.map {
                    map[get(l)? as usize] = (wget(a)?, wget(bb)?);
                }
                Some(TargetMap { window, radius: t.radius, map })
            }
        };
        Ok(EssentialCycleCertificate { complex, involution, sphere, target, note: b.note })
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn dim(&self) -> Option<usize> {
        self.complex.dim()
    }
}
