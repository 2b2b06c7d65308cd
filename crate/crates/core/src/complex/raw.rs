use rustc_hash::{FxHashMap, FxHashSet};

use super::{Simplex, SimplicialComplex, Vertex};
use crate::error::{Error, Result};
use crate::rational::Rat;

/// An unchecked complex description: declared vertices, an explicit simplex list and
/// optional coordinates. Nothing is assumed about closure.
#[derive(Clone, Debug, Default)]
pub struct RawComplex {
    pub labels: Vec<String>,
    pub coords: Vec<Option<Vec<Rat>>>,
    pub simplices: Vec<Vec<Vertex>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub vertices: usize,
    pub f_vector: Vec<usize>,
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl RawComplex {
    pub fn vertex_id(&mut self, label: &str) -> Vertex {
        if let Some(i) = self.labels.iter().position(|l| l == label) {
            return i as Vertex;
        }
        self.labels.push(label.to_string());
        self.coords.push(None);
        (self.labels.len() - 1) as Vertex
    }

    /// Closes the simplex list downward and attaches coordinates.
    pub fn close(&self) -> Result<SimplicialComplex> {
        let mut gens = Vec::new();
        let mut used = vec![false; self.labels.len()];
        for s in &self.simplices {
            for &v in s {
                used[v as usize] = true;
            }
            gens.push(Simplex::new(s.clone())?);
        }
        for (v, u) in used.iter().enumerate() {
            if !u {
                gens.push(Simplex::vertex(v as Vertex));
            }
        }
        let c = SimplicialComplex::from_generators(self.labels.clone().into(), None, gens, None);
        let given = self.coords.iter().filter(|c| c.is_some()).count();
        if given == 0 {
            return Ok(c);
        }
        if given != self.coords.len() {
            return Err(Error::Precondition("coordinates given for some vertices but not all".into()));
        }
        c.with_coords(self.coords.iter().map(|c| c.clone().unwrap()).collect())
    }
}

/// Checks downward closure and coordinate consistency, listing every violation.
pub fn validate_complex(raw: &RawComplex) -> ValidationReport {
    let mut violations = Vec::new();
    let n = raw.labels.len();
    let mut present: FxHashSet<Vec<Vertex>> = FxHashSet::default();
    let mut in_simplex = vec![false; n];
    for s in &raw.simplices {
        let mut v = s.clone();
        v.sort_unstable();
        if v.is_empty() {
            violations.push("empty simplex".to_string());
            continue;
        }
        if v.windows(2).any(|w| w[0] == w[1]) {
            violations.push(format!("repeated vertex in simplex {}", fmt(raw, &v)));
            continue;
        }
        if let Some(&bad) = v.iter().find(|&&x| x as usize >= n) {
            violations.push(format!("unknown vertex id {bad}"));
            continue;
        }
        for &x in &v {
            in_simplex[x as usize] = true;
        }
        present.insert(v);
    }
    let mut sorted: Vec<&Vec<Vertex>> = present.iter().collect();
    sorted.sort();
    for s in &sorted {
        if s.len() < 2 {
            continue;
        }
        for i in 0..s.len() {
            let mut f = (*s).clone();
            f.remove(i);
            if f.len() > 1 && !present.contains(&f) {
                violations.push(format!("missing face {} of {}", fmt(raw, &f), fmt(raw, s)));
            }
        }
    }
    for (v, used) in in_simplex.iter().enumerate() {
        if !used {
            violations.push(format!("vertex {} belongs to no simplex", raw.labels[v]));
        }
    }
    let dims: FxHashMap<usize, usize> = raw.coords.iter().flatten().map(|c| c.len()).fold(FxHashMap::default(), |mut m, d| {
        *m.entry(d).or_default() += 1;
        m
    });
    let with = raw.coords.iter().filter(|c| c.is_some()).count();
    if with > 0 && with < n {
        violations.push(format!("{} of {} vertices lack coordinates", n - with, n));
    }
    if dims.len() > 1 {
        let mut ds: Vec<usize> = dims.keys().copied().collect();
        ds.sort_unstable();
        violations.push(format!("coordinates of differing dimensions {ds:?}"));
    }
    let mut f_vector = Vec::new();
    for s in &present {
        let d = s.len() - 1;
        if f_vector.len() <= d {
            f_vector.resize(d + 1, 0);
        }
        f_vector[d] += 1;
    }
    ValidationReport { vertices: n, f_vector, violations }
}

fn fmt(raw: &RawComplex, s: &[Vertex]) -> String {
    format!("{{{}}}", s.iter().map(|&v| raw.labels[v as usize].as_str()).collect::<Vec<_>>().join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn raw(labels: &[&str], simplices: &[&[u32]]) -> RawComplex {
        RawComplex {
            labels: labels.iter().map(|s| s.to_string()).collect(),
            coords: vec![None; labels.len()],
            simplices: simplices.iter().map(|s| s.to_vec()).collect(),
        }
    }

    #[test]
    fn triangle_boundary_is_valid() {
        let r = raw(&["a", "b", "c"], &[&[0], &[1], &[2], &[0, 1], &[1, 2], &[0, 2]]);
        let rep = validate_complex(&r);
        assert!(rep.is_valid(), "{:?}", rep.violations);
        assert_eq!(rep.f_vector, vec![3, 3]);
    }

    #[test]
    fn triangle_without_edges_reports_missing_faces() {
        let r = raw(&["a", "b", "c"], &[&[0, 1, 2]]);
        let rep = validate_complex(&r);
        assert_eq!(rep.violations.iter().filter(|v| v.starts_with("missing face")).count(), 3);
    }

    #[test]
    fn orphan_vertex_and_mixed_coords() {
        let mut r = raw(&["a", "b", "c"], &[&[0, 1]]);
        r.coords[0] = Some(vec![crate::rational::int(0)]);
        let rep = validate_complex(&r);
        assert!(rep.violations.iter().any(|v| v.contains("belongs to no simplex")));
        assert!(rep.violations.iter().any(|v| v.contains("lack coordinates")));
    }
}
