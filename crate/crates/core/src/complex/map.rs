use super::{Simplex, SimplicialComplex, Vertex};
use crate::error::{Error, Result};

/// A vertex assignment that sends every simplex of the source onto a (possibly
/// lower-dimensional) simplex of the target.
#[derive(Clone, Debug)]
pub struct SimplicialMap {
    source: SimplicialComplex,
    target: SimplicialComplex,
    /// Indexed by source identifier; `u32::MAX` where the identifier is not a vertex.
    vertex_map: Vec<Vertex>,
}

impl SimplicialMap {
    /// Validates that every source simplex maps to a target simplex.
    pub fn new(source: SimplicialComplex, target: SimplicialComplex, vertex_map: Vec<Vertex>) -> Result<Self> {
        let m = Self::new_unchecked(source, target, vertex_map)?;
        for s in m.source.all_simplices() {
            let img = m.image(s);
            if !m.target.contains(&img) {
                return Err(Error::NotSimplicial(format!(
                    "{} maps to {}, which is not a simplex",
                    m.source.format_simplex(s),
                    m.target.format_simplex(&img)
                )));
            }
        }
        Ok(m)
    }

    /// Checks only that every source vertex has an image vertex in the target.
    pub fn new_unchecked(source: SimplicialComplex, target: SimplicialComplex, mut vertex_map: Vec<Vertex>) -> Result<Self> {
        vertex_map.resize(source.id_space(), u32::MAX);
        for v in source.vertices() {
            let w = vertex_map[v as usize];
            if w == u32::MAX || !target.contains(&Simplex::vertex(w)) {
                return Err(Error::NotSimplicial(format!("vertex {} has no image vertex", source.label(v))));
            }
        }
        Ok(SimplicialMap { source, target, vertex_map })
    }

    /// The inclusion of a subcomplex sharing identifiers with `target`.
    pub fn inclusion(source: &SimplicialComplex, target: &SimplicialComplex) -> Result<Self> {
        if !source.shares_labels_with(target) {
            return Err(Error::NotAnInclusion("complexes do not share a vertex table".into()));
        }
        if let Some(s) = source.all_simplices().find(|s| !target.contains(s)) {
            return Err(Error::NotAnInclusion(format!("{} is not a simplex of the target", source.format_simplex(s))));
        }
        let vertex_map = (0..source.id_space() as u32).collect();
        Ok(SimplicialMap { source: source.clone(), target: target.clone(), vertex_map })
    }

    pub fn source(&self) -> &SimplicialComplex {
        &self.source
    }

    pub fn target(&self) -> &SimplicialComplex {
        &self.target
    }

    pub fn vertex_map(&self) -> &[Vertex] {
        &self.vertex_map
    }

    pub fn apply(&self, v: Vertex) -> Vertex {
        self.vertex_map[v as usize]
    }

    pub fn image(&self, s: &Simplex) -> Simplex {
        Simplex::spanned_by(s.vertices().iter().map(|&v| self.vertex_map[v as usize]))
    }

    /// Whether the map is injective on vertices and hence maps simplices isomorphically.
    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.id_space()];
        for v in self.source.vertices() {
            let w = self.apply(v) as usize;
            if seen[w] {
                return false;
            }
            seen[w] = true;
        }
        true
    }

    pub fn compose(&self, after: &SimplicialMap) -> Result<SimplicialMap> {
        let vm = (0..self.source.id_space())
            .map(|v| {
                let w = self.vertex_map[v];
                if w == u32::MAX {
                    u32::MAX
                } else {
                    after.vertex_map.get(w as usize).copied().unwrap_or(u32::MAX)
                }
            })
            .collect();
        SimplicialMap::new_unchecked(self.source.clone(), after.target.clone(), vm)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::fixtures;

    #[test]
    fn constant_map_is_simplicial() {
        let o = fixtures::cross_polytope(2);
        let m = SimplicialMap::new(o.clone(), o.clone(), vec![0; 6]).unwrap();
        assert_eq!(m.image(&o.simplices(2)[0]).dim(), 0);
        assert!(!m.is_injective());
    }

    #[test]
    fn folding_onto_antipode_not_simplicial() {
        let o = fixtures::cross_polytope(2);
        // +1 goes to -0, so the edge {+0,+1} lands on the non-edge {+0,-0}
        let mut vm: Vec<u32> = (0..6).collect();
        vm[2] = 1;
        assert!(SimplicialMap::new(o.clone(), o, vm).is_err());
    }

    #[test]
    fn inclusion_checks_simplices() {
        let t = fixtures::simplex(2);
        let b = fixtures::simplex_boundary(2);
        assert!(SimplicialMap::inclusion(&b, &t).is_ok());
        assert!(matches!(SimplicialMap::inclusion(&t, &b), Err(Error::NotAnInclusion(_))));
    }
}
