//! Finite simplicial and Δ-complexes and the constructions built on them.

mod delta;
mod io;
mod map;
mod ops;
mod product;
mod raw;
mod simplex;
mod subdivide;

use std::sync::Arc;

use rustc_hash::{FxHashMap, FxHashSet};

use crate::error::{Error, Result};
use crate::rational::Rat;

pub use delta::{DeltaComplex, DeltaIsomorphism, DeltaMap};
pub use io::{complex_from_value, complex_to_value, parse_complex, parse_complex_file, parse_complex_json, parse_complex_text, write_complex_json, write_complex_text};
pub use map::SimplicialMap;
pub use ops::{cone, iterated_star_neighborhood, join_complexes, JoinedComplex};
pub use product::{for_each_product_facet, is_product_simplex, product_full_subcomplex, product_triangulation, ProductComplex};
pub(crate) use product::product_labels;
pub use raw::{validate_complex, RawComplex, ValidationReport};
pub use simplex::{Simplex, Vertex};
pub use subdivide::{barycentric_subdivide, barycentric_subdivide_delta, Subdivision};

/// A finite, downward-closed simplicial complex.
///
/// Vertex identifiers index a label table that may be shared between a complex and its
/// subcomplexes, so that inclusions are identities on identifiers.
#[derive(Clone)]
pub struct SimplicialComplex {
    labels: Arc<[String]>,
    coords: Option<Arc<[Vec<Rat>]>>,
    by_dim: Vec<Vec<Simplex>>,
    index: Vec<FxHashMap<Simplex, usize>>,
}

impl std::fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SimplicialComplex").field("f_vector", &self.f_vector()).finish()
    }
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.by_dim == other.by_dim && self.labels_of_vertices() == other.labels_of_vertices()
    }
}

impl SimplicialComplex {
    /// Builds the closure of `maximal` over a fresh label table.
    pub fn new(labels: Vec<String>, maximal: Vec<Vec<Vertex>>) -> Result<Self> {
        let n = labels.len() as u32;
        let mut gens = Vec::with_capacity(maximal.len());
        for m in maximal {
            if let Some(&v) = m.iter().find(|&&v| v >= n) {
                return Err(Error::UnknownVertex(v.to_string()));
            }
            gens.push(Simplex::new(m)?);
        }
        Ok(Self::from_generators(labels.into(), None, gens, None))
    }

    /// Complex on vertices `0..n` labelled by their decimal index.
    pub fn from_facets(n: usize, maximal: &[&[Vertex]]) -> Result<Self> {
        let labels = (0..n).map(|i| i.to_string()).collect();
        Self::new(labels, maximal.iter().map(|m| m.to_vec()).collect())
    }

    /// Downward closure of `generators`, keeping faces of dimension at most `max_dim`.
    pub fn from_generators(
        labels: Arc<[String]>,
        coords: Option<Arc<[Vec<Rat>]>>,
        generators: impl IntoIterator<Item = Simplex>,
        max_dim: Option<usize>,
    ) -> Self {
        let mut sets: Vec<FxHashSet<Simplex>> = Vec::new();
        for g in generators {
            let top = match max_dim {
                Some(d) => g.dim().min(d),
                None => g.dim(),
            };
            if sets.len() <= top {
                sets.resize_with(top + 1, FxHashSet::default);
            }
            if g.dim() <= top {
                if sets[top].contains(&g) {
                    continue;
                }
                add_closed(&mut sets, g);
            } else {
                let n = g.vertices().len();
                let k = top + 1;
                for combo in combinations(n, k) {
                    let s = Simplex::from_sorted(combo.iter().map(|&i| g.vertices()[i]).collect());
                    if !sets[top].contains(&s) {
                        add_closed(&mut sets, s);
                    }
                }
            }
        }
        Self::from_sets(labels, coords, sets)
    }

    /// From simplex lists already closed under faces; `by_dim[d]` holds the `d`-simplices.
    pub(crate) fn from_closed_lists(labels: Arc<[String]>, coords: Option<Arc<[Vec<Rat>]>>, by_dim: Vec<Vec<Simplex>>) -> Self {
        Self::from_sets(labels, coords, by_dim.into_iter().map(|v| v.into_iter().collect()).collect())
    }

    fn from_sets(labels: Arc<[String]>, coords: Option<Arc<[Vec<Rat>]>>, sets: Vec<FxHashSet<Simplex>>) -> Self {
        let mut by_dim: Vec<Vec<Simplex>> = sets
            .into_iter()
            .map(|s| {
                let mut v: Vec<Simplex> = s.into_iter().collect();
                v.sort_unstable();
                v
            })
            .collect();
        while by_dim.last().is_some_and(|v| v.is_empty()) {
            by_dim.pop();
        }
        let index = by_dim.iter().map(|v| v.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect()).collect();
        SimplicialComplex { labels, coords, by_dim, index }
    }

    /// The empty complex over the same label table.
    pub fn empty_like(&self) -> Self {
        SimplicialComplex { labels: self.labels.clone(), coords: self.coords.clone(), by_dim: Vec::new(), index: Vec::new() }
    }

    /// Subcomplex generated by `generators`, sharing this complex's label table.
    /// Fails when a generator is not a simplex of `self`.
    pub fn subcomplex(&self, generators: impl IntoIterator<Item = Simplex>) -> Result<Self> {
        let gens: Vec<Simplex> = generators.into_iter().collect();
        if let Some(g) = gens.iter().find(|g| !self.contains(g)) {
            return Err(Error::NotSubcomplex(format!("simplex {} is not in the complex", self.format_simplex(g))));
        }
        Ok(Self::from_generators(self.labels.clone(), self.coords.clone(), gens, None))
    }

    pub fn with_coords(mut self, coords: Vec<Vec<Rat>>) -> Result<Self> {
        if coords.len() != self.labels.len() {
            return Err(Error::Precondition(format!("{} coordinates for {} vertices", coords.len(), self.labels.len())));
        }
        if let Some(k) = coords.first().map(|c| c.len()) {
            if coords.iter().any(|c| c.len() != k) {
                return Err(Error::Precondition("coordinates of differing dimension".into()));
            }
        }
        self.coords = Some(coords.into());
        Ok(self)
    }

    pub fn labels(&self) -> &Arc<[String]> {
        &self.labels
    }

    pub fn label(&self, v: Vertex) -> &str {
        &self.labels[v as usize]
    }

    /// Size of the identifier space (may exceed the vertex count for subcomplexes).
    pub fn id_space(&self) -> usize {
        self.labels.len()
    }

    pub fn label_lookup(&self) -> FxHashMap<&str, Vertex> {
        self.labels.iter().enumerate().map(|(i, l)| (l.as_str(), i as Vertex)).collect()
    }

    pub fn coords(&self) -> Option<&Arc<[Vec<Rat>]>> {
        self.coords.as_ref()
    }

    pub fn coord(&self, v: Vertex) -> Option<&[Rat]> {
        self.coords.as_ref().map(|c| c[v as usize].as_slice())
    }

    pub fn shares_labels_with(&self, other: &SimplicialComplex) -> bool {
        Arc::ptr_eq(&self.labels, &other.labels) || self.labels == other.labels
    }

    /// Dimension of the complex; `None` when empty.
    pub fn dim(&self) -> Option<usize> {
        self.by_dim.len().checked_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.by_dim.is_empty()
    }

    pub fn simplices(&self, d: usize) -> &[Simplex] {
        self.by_dim.get(d).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn all_simplices(&self) -> impl Iterator<Item = &Simplex> {
        self.by_dim.iter().flatten()
    }

    pub fn num_simplices(&self, d: usize) -> usize {
        self.simplices(d).len()
    }

    pub fn total_simplices(&self) -> usize {
        self.by_dim.iter().map(|v| v.len()).sum()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.by_dim.iter().map(|v| v.len()).collect()
    }

    pub fn index_of(&self, s: &Simplex) -> Option<usize> {
        self.index.get(s.dim())?.get(s).copied()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.index_of(s).is_some()
    }

    pub fn contains_vertices(&self, vs: &[Vertex]) -> bool {
        Simplex::new(vs.to_vec()).map(|s| self.contains(&s)).unwrap_or(false)
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.simplices(0).iter().map(|s| s.vertices()[0])
    }

    pub fn num_vertices(&self) -> usize {
        self.num_simplices(0)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.by_dim.iter().enumerate().map(|(d, v)| if d % 2 == 0 { v.len() as i64 } else { -(v.len() as i64) }).sum()
    }

    /// Simplices that are not proper faces of other simplices.
    pub fn facets(&self) -> Vec<Simplex> {
        let mut out = Vec::new();
        for d in 0..self.by_dim.len() {
            let mut covered = vec![false; self.by_dim[d].len()];
            if let Some(up) = self.by_dim.get(d + 1) {
                for s in up {
                    for f in s.faces() {
                        covered[self.index[d][&f]] = true;
                    }
                }
            }
            out.extend(self.by_dim[d].iter().zip(covered).filter(|(_, c)| !c).map(|(s, _)| s.clone()));
        }
        out
    }

    pub fn skeleton(&self, d: usize) -> Self {
        let mut c = self.clone();
        c.by_dim.truncate(d + 1);
        c.index.truncate(d + 1);
        c
    }

    /// Whether every simplex of `self` is a simplex of `other` (identifiers compared directly).
    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        self.all_simplices().all(|s| other.contains(s))
    }

    /// Whether every facet has the top dimension.
    pub fn is_pure(&self) -> bool {
        let Some(top) = self.dim() else { return true };
        self.facets().iter().all(|f| f.dim() == top)
    }

    /// Adjacency lists of the 1-skeleton, indexed by identifier.
    pub fn adjacency(&self) -> Vec<Vec<Vertex>> {
        let mut adj = vec![Vec::new(); self.labels.len()];
        for e in self.simplices(1) {
            let (a, b) = (e.vertices()[0], e.vertices()[1]);
            adj[a as usize].push(b);
            adj[b as usize].push(a);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        adj
    }

    /// Connected components of the vertex set, as a component index per identifier
    /// (`u32::MAX` for identifiers that are not vertices of the complex).
    pub fn components(&self) -> (usize, Vec<u32>) {
        let adj = self.adjacency();
        let mut comp = vec![u32::MAX; self.labels.len()];
        let mut count = 0u32;
        for v in self.vertices() {
            if comp[v as usize] != u32::MAX {
                continue;
            }
            comp[v as usize] = count;
            let mut stack = vec![v];
            while let Some(x) = stack.pop() {
                for &y in &adj[x as usize] {
                    if comp[y as usize] == u32::MAX {
                        comp[y as usize] = count;
                        stack.push(y);
                    }
                }
            }
            count += 1;
        }
        (count as usize, comp)
    }

    /// Number of `(d+1)`-simplices containing each `d`-simplex.
    pub fn coface_counts(&self, d: usize) -> Vec<usize> {
        let mut counts = vec![0; self.num_simplices(d)];
        for s in self.simplices(d + 1) {
            for f in s.faces() {
                counts[self.index[d][&f]] += 1;
            }
        }
        counts
    }

    pub fn format_simplex(&self, s: &Simplex) -> String {
        s.vertices().iter().map(|&v| self.label(v)).collect::<Vec<_>>().join(" ")
    }

    pub fn parse_simplex(&self, lookup: &FxHashMap<&str, Vertex>, text: &str) -> Result<Simplex> {
        let vs = text
            .split_whitespace()
            .map(|t| lookup.get(t).copied().ok_or_else(|| Error::UnknownVertex(t.to_string())))
            .collect::<Result<Vec<_>>>()?;
        Simplex::new(vs)
    }

    /// Relabels onto a compact fresh label table containing only the vertices in use,
    /// preserving identifier order. Returns the old identifier of each new vertex.
    pub fn compacted(&self) -> (SimplicialComplex, Vec<Vertex>) {
        let old: Vec<Vertex> = self.vertices().collect();
        let mut new_of = vec![u32::MAX; self.labels.len()];
        for (i, &v) in old.iter().enumerate() {
            new_of[v as usize] = i as u32;
        }
        let labels: Vec<String> = old.iter().map(|&v| self.labels[v as usize].clone()).collect();
        let coords = self.coords.as_ref().map(|c| old.iter().map(|&v| c[v as usize].clone()).collect::<Vec<_>>().into());
        let gens = self.facets().into_iter().map(|s| Simplex::from_sorted(s.vertices().iter().map(|&v| new_of[v as usize]).collect()));
        (Self::from_generators(labels.into(), coords, gens, None), old)
    }

    fn labels_of_vertices(&self) -> Vec<&str> {
        self.vertices().map(|v| self.label(v)).collect()
    }
}

fn add_closed(sets: &mut [FxHashSet<Simplex>], s: Simplex) {
    let mut stack = vec![s];
    while let Some(s) = stack.pop() {
        let d = s.dim();
        if sets[d].contains(&s) {
            continue;
        }
        if d > 0 {
            for f in s.faces() {
                if !sets[d - 1].contains(&f) {
                    stack.push(f);
                }
            }
        }
        sets[d].insert(s);
    }
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k;
        while i > 0 && idx[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Standard fixtures used across the crate and its tests.
pub mod fixtures {
    use super::*;

    /// The cycle graph `C_n` (a triangulated circle when `n ≥ 3`).
    pub fn cycle(n: usize) -> SimplicialComplex {
        let edges: Vec<Vec<Vertex>> = (0..n).map(|i| vec![i as u32, ((i + 1) % n) as u32]).collect();
        SimplicialComplex::new((0..n).map(|i| i.to_string()).collect(), edges).unwrap()
    }

    pub fn path(n: usize) -> SimplicialComplex {
        let edges: Vec<Vec<Vertex>> = (0..n.saturating_sub(1)).map(|i| vec![i as u32, i as u32 + 1]).collect();
        let mut c = SimplicialComplex::new((0..n).map(|i| i.to_string()).collect(), edges).unwrap();
        if n == 1 {
            c = SimplicialComplex::new(vec!["0".into()], vec![vec![0]]).unwrap();
        }
        c
    }

    /// The full simplex Δ^d.
    pub fn simplex(d: usize) -> SimplicialComplex {
        SimplicialComplex::new((0..=d).map(|i| i.to_string()).collect(), vec![(0..=d as u32).collect()]).unwrap()
    }

    /// Boundary ∂Δ^{d}: all proper faces of the d-simplex.
    pub fn simplex_boundary(d: usize) -> SimplicialComplex {
        let facets: Vec<Vec<Vertex>> = (0..=d as u32).map(|skip| (0..=d as u32).filter(|&v| v != skip).collect()).collect();
        SimplicialComplex::new((0..=d).map(|i| i.to_string()).collect(), facets).unwrap()
    }

    /// Complete graph K_n.
    pub fn complete_graph(n: usize) -> SimplicialComplex {
        let mut edges = Vec::new();
        for i in 0..n as u32 {
            for j in i + 1..n as u32 {
                edges.push(vec![i, j]);
            }
        }
        SimplicialComplex::new((0..n).map(|i| i.to_string()).collect(), edges).unwrap()
    }

    /// Complete bipartite graph K_{p,q}; the first `p` vertices form one side.
    pub fn complete_bipartite(p: usize, q: usize) -> SimplicialComplex {
        let mut edges = Vec::new();
        for i in 0..p as u32 {
            for j in 0..q as u32 {
                edges.push(vec![i, p as u32 + j]);
            }
        }
        SimplicialComplex::new((0..p + q).map(|i| i.to_string()).collect(), edges).unwrap()
    }

    /// Boundary of the (d+1)-dimensional cross-polytope, a d-sphere on 2(d+1) vertices.
    /// Vertex `2i` sits at `+e_i`, vertex `2i+1` at `-e_i`; coordinates are attached.
    pub fn cross_polytope(d: usize) -> SimplicialComplex {
        let n = d + 1;
        let mut facets = Vec::new();
        for signs in 0u32..(1 << n) {
            facets.push((0..n as u32).map(|i| 2 * i + (signs >> i & 1)).collect());
        }
        let labels = (0..n).flat_map(|i| [format!("+{i}"), format!("-{i}")]).collect();
        let coords = (0..2 * n)
            .map(|v| {
                let mut c = vec![crate::rational::int(0); n];
                c[v / 2] = crate::rational::int(if v % 2 == 0 { 1 } else { -1 });
                c
            })
            .collect();
        SimplicialComplex::new(labels, facets).unwrap().with_coords(coords).unwrap()
    }

    /// Antipodal pairing on `cross_polytope(d)`.
    pub fn cross_polytope_antipode(d: usize) -> Vec<Vertex> {
        (0..2 * (d as u32 + 1)).map(|v| v ^ 1).collect()
    }

    /// A 7-vertex triangulated torus.
    pub fn torus7() -> SimplicialComplex {
        let mut tri = Vec::new();
        for i in 0..7u32 {
            tri.push(vec![i, (i + 1) % 7, (i + 3) % 7]);
            tri.push(vec![i, (i + 2) % 7, (i + 3) % 7]);
        }
        SimplicialComplex::new((0..7).map(|i| i.to_string()).collect(), tri).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn closure_and_counts() {
        let t = simplex(2);
        assert_eq!(t.f_vector(), vec![3, 3, 1]);
        assert_eq!(simplex_boundary(2).f_vector(), vec![3, 3]);
        let o = cross_polytope(2);
        assert_eq!(o.f_vector(), vec![6, 12, 8]);
        assert_eq!(o.euler_characteristic(), 2);
        assert_eq!(torus7().euler_characteristic(), 0);
        assert_eq!(torus7().f_vector(), vec![7, 21, 14]);
    }

    #[test]
    fn generators_truncated_to_skeleton() {
        let labels: Arc<[String]> = (0..4).map(|i| i.to_string()).collect::<Vec<_>>().into();
        let c = SimplicialComplex::from_generators(labels, None, vec![Simplex::new(vec![0, 1, 2, 3]).unwrap()], Some(1));
        assert_eq!(c.f_vector(), vec![4, 6]);
    }

    #[test]
    fn facets_and_components() {
        let c = SimplicialComplex::from_facets(5, &[&[0, 1, 2], &[3, 4], &[2, 3]]).unwrap();
        let f = c.facets();
        assert_eq!(f.len(), 3);
        assert_eq!(c.components().0, 1);
        let d = SimplicialComplex::from_facets(4, &[&[0, 1], &[2, 3]]).unwrap();
        assert_eq!(d.components().0, 2);
    }

    #[test]
    fn combinations_lex() {
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(3, 3), vec![vec![0, 1, 2]]);
        assert!(combinations(2, 3).is_empty());
    }
}
