use num_traits::{One, Signed, Zero};

use crate::complex::{fixtures, Simplex, SimplicialComplex, Vertex};
use crate::error::{Error, Result};
use crate::rational::{hull_contains_origin, int, rank, ratio, solve_columns, Rat};

/// Whether every codimension-one simplex lies in an even number of top simplices.
pub fn is_mod2_cycle(c: &SimplicialComplex) -> bool {
    match c.dim() {
        None | Some(0) => true,
        Some(m) => c.coface_counts(m - 1).iter().all(|n| n % 2 == 0),
    }
}

/// Pure, and every codimension-one simplex bounds exactly two top simplices.
pub fn is_pseudomanifold(c: &SimplicialComplex) -> bool {
    match c.dim() {
        None => false,
        Some(0) => c.num_vertices() == 2,
        Some(m) => c.is_pure() && c.coface_counts(m - 1).iter().all(|&n| n == 2),
    }
}

fn preimage_parity(source: &SimplicialComplex, map: &[Vertex], target_facet: &Simplex) -> u8 {
    let m = target_facet.dim();
    let mut n = 0u8;
    for s in source.simplices(m) {
        if Simplex::spanned_by(s.vertices().iter().map(|&v| map[v as usize])) == *target_facet {
            n ^= 1;
        }
    }
    n
}

/// Mod-2 degree of a simplicial map from an `m`-cycle to an `m`-pseudomanifold sphere:
/// the parity of top simplices mapped onto a fixed target simplex, cross-checked at a
/// second target simplex.
pub fn deg2(source: &SimplicialComplex, map: &[Vertex], target: &SimplicialComplex) -> Result<u8> {
    let m = source.dim().ok_or_else(|| Error::Precondition("empty source".into()))?;
    if target.dim() != Some(m) || !is_pseudomanifold(target) {
        return Err(Error::Precondition(format!("target is not an {m}-dimensional pseudomanifold")));
    }
    if !is_mod2_cycle(source) {
        return Err(Error::Precondition("source is not a mod-2 cycle".into()));
    }
    for s in source.all_simplices() {
        let img = Simplex::spanned_by(s.vertices().iter().map(|&v| map[v as usize]));
        if !target.contains(&img) {
            return Err(Error::NotSimplicial(format!("{} has no image simplex", source.format_simplex(s))));
        }
    }
    let facets = target.simplices(m);
    let first = preimage_parity(source, map, &facets[0]);
    let second = preimage_parity(source, map, &facets[facets.len() - 1]);
    if first != second {
        return Err(Error::DegreeInconsistent { first, second });
    }
    Ok(first)
}

/// How a certificate maps its cycle to a sphere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SphereMap {
    /// Simplicial map onto the boundary of the `(dim+1)`-cross-polytope (vertex `2i`/`2i+1`
    /// at `±e_i`), one target vertex per source identifier.
    CrossPolytope { dim: usize, map: Vec<Vertex> },
    /// A nonzero vector in `R^{m+1}` per source identifier; the map is the radial
    /// projection of the linear extension.
    Vectors(Vec<Vec<Rat>>),
}

impl SphereMap {
    pub fn sphere_dim(&self) -> Option<usize> {
        match self {
            SphereMap::CrossPolytope { dim, .. } => Some(*dim),
            SphereMap::Vectors(v) => v.iter().find(|x| !x.is_empty()).map(|x| x.len() - 1),
        }
    }

    /// Source vertices where `φ ∘ a ≠ -φ`.
    pub fn equivariance_failures(&self, c: &SimplicialComplex, perm: &[Vertex]) -> Vec<Vertex> {
        c.vertices()
            .filter(|&v| {
                let w = perm[v as usize] as usize;
                match self {
                    SphereMap::CrossPolytope { map, .. } => map[w] != map[v as usize] ^ 1,
                    SphereMap::Vectors(x) => {
                        x[w].len() != x[v as usize].len() || x[w].iter().zip(&x[v as usize]).any(|(a, b)| *a != -b)
                    }
                }
            })
            .collect()
    }

    pub fn degree(&self, c: &SimplicialComplex) -> Result<u8> {
        match self {
            SphereMap::CrossPolytope { dim, map } => deg2(c, map, &fixtures::cross_polytope(*dim)),
            SphereMap::Vectors(x) => {
                let k = self.sphere_dim().ok_or_else(|| Error::Precondition("no vectors".into()))? + 1;
                let mut u = vec![int(0); k];
                u[0] = int(1);
                gauss_deg2(c, x, &u)
            }
        }
    }
}

/// Deterministic perturbations of `u`: first `u` itself, then `u + ε e_i` for shrinking
/// `ε`, then points on a moment curve around `u`.
fn perturbations(u: &[Rat]) -> impl Iterator<Item = Vec<Rat>> + '_ {
    let k = u.len();
    let axis = (1..=6u32).flat_map(move |t| (0..k).map(move |i| (t, i))).map(move |(t, i)| {
        let mut w = u.to_vec();
        w[i] += ratio(1, 3i64.pow(t));
        w
    });
    let curve = (1..=24i64).map(move |t| {
        let eps = ratio(1, 5 * t + 2);
        let mut p = Rat::one();
        u.iter()
            .map(|x| {
                p *= &eps;
                x + &p
            })
            .collect()
    });
    std::iter::once(u.to_vec()).chain(axis).chain(curve)
}

/// `Some(true/false)` for whether `u` lies in the open positive cone of `vs`, `None` when
/// `u` touches the cone's boundary or the cone is degenerate around `u`.
fn cone_hit(vs: &[Vec<Rat>], u: &[Rat]) -> Option<bool> {
    match solve_columns(vs, u) {
        None => {
            let mut with_u = vs.to_vec();
            with_u.push(u.to_vec());
            (rank(&with_u) > rank(vs)).then_some(false)
        }
        Some(Err(())) => Some(false),
        Some(Ok(lambda)) => {
            if lambda.iter().any(|l| l.is_zero()) {
                None
            } else {
                Some(lambda.iter().all(|l| l.is_positive()))
            }
        }
    }
}

/// Parity of top simplices whose vertex vectors positively span a cone containing `u`,
/// the mod-2 degree of the radial map to `S^m`. Retries with perturbed directions until
/// `u` is generic.
pub fn gauss_deg2(c: &SimplicialComplex, vectors: &[Vec<Rat>], u: &[Rat]) -> Result<u8> {
    let m = c.dim().ok_or_else(|| Error::Precondition("empty complex".into()))?;
    if u.len() != m + 1 {
        return Err(Error::DimensionMismatch { expected: m + 1, found: u.len() });
    }
    if m == 0 {
        return Err(Error::Precondition("Gauss degree needs m >= 1".into()));
    }
    let tops = c.simplices(m);
    let mut cones = Vec::with_capacity(tops.len());
    for s in tops {
        let vs: Vec<Vec<Rat>> = s.vertices().iter().map(|&v| vectors[v as usize].clone()).collect();
        if vs.iter().any(|x| x.len() != m + 1) {
            return Err(Error::DimensionMismatch { expected: m + 1, found: vs[0].len() });
        }
        if hull_contains_origin(&vs) {
            return Err(Error::Precondition(format!("{} is sent through the origin", c.format_simplex(s))));
        }
        cones.push(vs);
    }
    let mut tries = 0;
    'outer: for w in perturbations(u) {
        tries += 1;
        let mut parity = 0u8;
        for vs in &cones {
            match cone_hit(vs, &w) {
                None => continue 'outer,
                Some(true) => parity ^= 1,
                Some(false) => {}
            }
        }
        return Ok(parity);
    }
    Err(Error::NonGeneric(tries))
}
