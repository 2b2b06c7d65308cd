use std::collections::VecDeque;

use crate::complex::{product_full_subcomplex, SimplicialComplex, Vertex};
use crate::error::{Error, Result};

/// Graph distance in the 1-skeleton of the staircase square `X²` from each product
/// vertex `(u, w)` (identifier `u * n + w`) to the diagonal. Unreachable identifiers get
/// `u32::MAX`.
pub fn diagonal_distances(x: &SimplicialComplex) -> Vec<u32> {
    let n = x.id_space();
    let adj = x.adjacency();
    let closed: Vec<Vec<Vertex>> = (0..n)
        .map(|u| {
            let mut v = adj[u].clone();
            v.push(u as Vertex);
            v
        })
        .collect();
    let mut dist = vec![u32::MAX; n * n];
    let mut queue = VecDeque::new();
    for v in x.vertices() {
        let d = v as usize * n + v as usize;
        dist[d] = 0;
        queue.push_back(d);
    }
    while let Some(p) = queue.pop_front() {
        let (u, w) = (p / n, p % n);
        for &u2 in &closed[u] {
            for &w2 in &closed[w] {
                let (u2, w2) = (u2 as usize, w2 as usize);
                let comparable = (u2 >= u && w2 >= w) || (u2 <= u && w2 <= w);
                if !comparable || (u2 == u && w2 == w) {
                    continue;
                }
                let q = u2 * n + w2;
                if dist[q] == u32::MAX {
                    dist[q] = dist[p] + 1;
                    queue.push_back(q);
                }
            }
        }
    }
    dist
}

pub(crate) fn complement_from(x: &SimplicialComplex, dist: &[u32], r: usize, max_dim: Option<usize>) -> SimplicialComplex {
    let far = |v: Vertex| dist[v as usize] != u32::MAX && dist[v as usize] as usize >= r;
    product_full_subcomplex(x, x, far, max_dim)
}

/// `X_r`: what is left of `X²` after removing the open star of every vertex closer than
/// `r` to the diagonal, i.e. the full subcomplex on the vertices at distance at least `r`.
/// With `max_dim` only that skeleton is built.
pub fn diagonal_complement(x: &SimplicialComplex, r: usize, max_dim: Option<usize>) -> SimplicialComplex {
    complement_from(x, &diagonal_distances(x), r, max_dim)
}

#[derive(Clone, Debug)]
pub struct FiltrationLevel {
    pub radius: usize,
    pub complex: SimplicialComplex,
}

/// Nested complements `X_{r_1} ⊇ X_{r_2} ⊇ …` inside the staircase square of a window.
#[derive(Clone, Debug)]
pub struct DiagonalFiltration {
    pub base: SimplicialComplex,
    /// Distance to the diagonal per product identifier.
    pub distance: Vec<u32>,
    pub levels: Vec<FiltrationLevel>,
    pub max_dim: Option<usize>,
    /// Non-fatal findings such as empty levels or a thin window margin.
    pub warnings: Vec<String>,
}

impl DiagonalFiltration {
    pub fn n(&self) -> u32 {
        self.base.id_space() as u32
    }

    pub fn radii(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.radius).collect()
    }

    pub fn level(&self, radius: usize) -> Option<&SimplicialComplex> {
        self.levels.iter().find(|l| l.radius == radius).map(|l| &l.complex)
    }

    pub fn swap(&self, v: Vertex) -> Vertex {
        let n = self.n();
        (v % n) * n + v / n
    }

    pub fn pair(&self, v: Vertex) -> (Vertex, Vertex) {
        (v / self.n(), v % self.n())
    }
}

pub fn diagonal_filtration(x: &SimplicialComplex, radii: &[usize], max_dim: Option<usize>) -> Result<DiagonalFiltration> {
    if radii.is_empty() {
        return Err(Error::Precondition("at least one radius is required".into()));
    }
    if radii[0] == 0 {
        return Err(Error::Precondition("radii must be positive".into()));
    }
    if radii.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Precondition("radii must be strictly increasing".into()));
    }
    let distance = diagonal_distances(x);
    let mut warnings = Vec::new();
    let levels: Vec<FiltrationLevel> = radii
        .iter()
        .map(|&r| {
            let complex = complement_from(x, &distance, r, max_dim);
            if complex.is_empty() {
                warnings.push(format!("X_{r} is empty"));
            }
            FiltrationLevel { radius: r, complex }
        })
        .collect();
    Ok(DiagonalFiltration { base: x.clone(), distance, levels, max_dim, warnings })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::fixtures;
    use crate::deleted::{deleted_product, grid_window};
    use crate::complex::Simplex;
    use crate::gf2::betti_numbers;

    #[test]
    fn two_vertex_path() {
        let x = fixtures::path(2);
        let f = diagonal_filtration(&x, &[1], None).unwrap();
        assert_eq!(f.levels[0].complex.f_vector(), vec![2]);
    }

    #[test]
    fn triangle_circle_first_level() {
        let x = fixtures::cycle(3);
        let x1 = diagonal_complement(&x, 1, None);
        let hex = deleted_product(&x).complex;
        // the level also keeps product simplices over overlapping cells, so it is larger
        // than the hexagon while still containing it
        assert!(hex.is_subcomplex_of(&x1));
        assert_ne!(hex, x1);
        assert_eq!(x1.f_vector(), vec![6, 8, 2]);
        assert_eq!(betti_numbers(&x1), vec![1, 1, 0]);
    }

    #[test]
    fn radii_validation() {
        let x = fixtures::path(3);
        assert!(diagonal_filtration(&x, &[1, 1], None).is_err());
        assert!(diagonal_filtration(&x, &[0, 1], None).is_err());
        let f = diagonal_filtration(&x, &[1, 5], None).unwrap();
        assert_eq!(f.warnings, vec!["X_5 is empty".to_string()]);
    }

    #[test]
    fn grid_levels_are_nested_and_symmetric() {
        let x = grid_window(2, 3).unwrap();
        let f = diagonal_filtration(&x, &[1, 2, 3], Some(2)).unwrap();
        for w in f.levels.windows(2) {
            assert!(w[1].complex.is_subcomplex_of(&w[0].complex));
        }
        for l in &f.levels {
            for s in l.complex.all_simplices() {
                let img = Simplex::spanned_by(s.vertices().iter().map(|&v| f.swap(v)));
                assert!(l.complex.contains(&img));
            }
        }
        assert_eq!(betti_numbers(&f.levels[1].complex)[..2], [1, 1]);
    }
}
