use std::fmt;

use crate::error::{Error, Result};

/// Vertex identifier. Identifiers are dense indices into a complex's label table and
/// their numeric order is the global total order used by every ordered construction
/// (staircase products, cup products, Δ-complex orientations).
pub type Vertex = u32;

/// A nonempty, strictly sorted set of vertices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex(Vec<Vertex>);

impl Simplex {
    pub fn new(mut vertices: Vec<Vertex>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::InvalidSimplex("empty simplex".into()));
        }
        vertices.sort_unstable();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidSimplex(format!("repeated vertex in {vertices:?}")));
        }
        Ok(Simplex(vertices))
    }

    /// Builds a simplex from an arbitrary vertex list, dropping repeats. Used for images
    /// of simplices under (possibly degenerate) simplicial maps.
    pub fn spanned_by(vertices: impl IntoIterator<Item = Vertex>) -> Self {
        let mut v: Vec<Vertex> = vertices.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        assert!(!v.is_empty(), "spanned_by needs at least one vertex");
        Simplex(v)
    }

    pub fn from_sorted(vertices: Vec<Vertex>) -> Self {
        debug_assert!(!vertices.is_empty() && vertices.windows(2).all(|w| w[0] < w[1]));
        Simplex(vertices)
    }

    pub fn vertex(v: Vertex) -> Self {
        Simplex(vec![v])
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn into_vertices(self) -> Vec<Vertex> {
        self.0
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// Codimension-one face opposite the `i`-th vertex.
    pub fn face(&self, i: usize) -> Simplex {
        let mut v = self.0.clone();
        v.remove(i);
        Simplex(v)
    }

    pub fn faces(&self) -> impl Iterator<Item = Simplex> + '_ {
        let n = if self.0.len() > 1 { self.0.len() } else { 0 };
        (0..n).map(move |i| self.face(i))
    }

    /// All nonempty faces including the simplex itself.
    pub fn all_faces(&self) -> impl Iterator<Item = Simplex> + '_ {
        let n = self.0.len();
        (1u64..(1u64 << n)).map(move |mask| Simplex((0..n).filter(|i| mask >> i & 1 == 1).map(|i| self.0[i]).collect()))
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| other.contains(*v))
    }

    pub fn meets(&self, other: &Simplex) -> bool {
        self.0.iter().any(|v| other.contains(*v))
    }

    pub fn union(&self, other: &Simplex) -> Simplex {
        Simplex::spanned_by(self.0.iter().chain(other.0.iter()).copied())
    }

    /// Position of `v` in the sorted vertex list.
    pub fn position(&self, v: Vertex) -> Option<usize> {
        self.0.binary_search(&v).ok()
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}
