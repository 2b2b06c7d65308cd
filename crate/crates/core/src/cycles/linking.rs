use std::sync::OnceLock;

use rustc_hash::FxHashMap;

use crate::complex::{product_full_subcomplex, Simplex, SimplicialComplex, Vertex};
use crate::deleted::diagonal_distances;
use crate::error::{Error, Result};
use crate::gf2::{pair, solve_bounding_chain, ChainZ2, CochainZ2, Reduction};

/// A `d`-cocycle of `X²` supported on simplices with a diagonal vertex, normalized to
/// pair to 1 with the slice disk `{v} × St(v)` at an interior vertex `v`. Pairing it with
/// a filling of a cycle off the diagonal counts, mod 2, how often the filling crosses
/// the diagonal.
#[derive(Clone, Debug)]
pub struct DiagonalDual {
    pub cocycle: CochainZ2,
    /// Vertex of `X` whose slice disk fixes the normalization.
    pub anchor: Vertex,
    /// The `d`-skeleton of `X²`, where fillings are solved; built on first use.
    square: OnceLock<SimplicialComplex>,
    window: SimplicialComplex,
}

fn has_diagonal_vertex(s: &Simplex, n: u32) -> bool {
    s.vertices().iter().any(|&p| p / n == p % n)
}

/// First vertex whose `d`-star is a disk: the boundary of its star chain avoids it.
fn interior_vertex(x: &SimplicialComplex, d: usize) -> Option<(Vertex, Vec<Simplex>)> {
    x.vertices().find_map(|v| {
        let star: Vec<Simplex> = x.simplices(d).iter().filter(|s| s.contains(v)).cloned().collect();
        let chain = ChainZ2::new(d, star.iter().cloned()).ok()?;
        let bd = chain.boundary();
        (!star.is_empty() && bd.support().iter().all(|f| !f.contains(v))).then_some((v, star))
    })
}

/// Solves for the dual cocycle of degree `d` on the window `x`.
pub fn diagonal_dual_cocycle(x: &SimplicialComplex, d: usize) -> Result<DiagonalDual> {
    if d == 0 {
        return Err(Error::Precondition("the dual cocycle needs degree at least 1".into()));
    }
    let n = x.id_space() as u32;
    let dist = diagonal_distances(x);
    let near = product_full_subcomplex(x, x, |p| dist[p as usize] <= 1, Some(d + 1));
    let (anchor, star) = interior_vertex(x, d)
        .ok_or_else(|| Error::Precondition(format!("the window has no vertex with a {d}-disk star")))?;
    let unknowns: Vec<Simplex> = near.simplices(d).iter().filter(|s| has_diagonal_vertex(s, n)).cloned().collect();
    let position: FxHashMap<&Simplex, u32> = unknowns.iter().enumerate().map(|(i, s)| (s, i as u32)).collect();
    let mut columns: Vec<Vec<u32>> = vec![Vec::new(); unknowns.len()];
    let mut rows = 0u32;
    for t in near.simplices(d + 1).iter().filter(|t| has_diagonal_vertex(t, n)) {
        for f in t.faces() {
            if let Some(&i) = position.get(&f) {
                columns[i as usize].push(rows);
            }
        }
        rows += 1;
    }
    let norm_row = rows;
    for s in &star {
        let slice = Simplex::from_sorted(s.vertices().iter().map(|&w| anchor * n + w).collect());
        let i = position[&slice];
        columns[i as usize].push(norm_row);
    }
    let red = Reduction::new(norm_row as usize + 1, columns, true);
    let (residual, combo) = red.reduce_vector(vec![norm_row]);
    if !residual.is_empty() {
        return Err(Error::Construction("the diagonal admits no dual cocycle on this window".into()));
    }
    let cocycle = CochainZ2::new(d, combo.iter().map(|&i| unknowns[i as usize].clone()))?;
    Ok(DiagonalDual { cocycle, anchor, square: OnceLock::new(), window: x.clone() })
}

impl DiagonalDual {
    /// Linking number mod 2 of a `(d-1)`-cycle of `X²` with the diagonal.
    pub fn linking(&self, f: &ChainZ2) -> Result<u8> {
        if f.dim() + 1 != self.cocycle.dim() {
            return Err(Error::DimensionMismatch { expected: self.cocycle.dim() - 1, found: f.dim() });
        }
        let square = self.square.get_or_init(|| product_full_subcomplex(&self.window, &self.window, |_| true, Some(self.cocycle.dim())));
        let filling = solve_bounding_chain(square, f)?
            .ok_or_else(|| Error::Construction("the cycle does not bound in the window square".into()))?;
        pair(&self.cocycle, &filling)
    }

    /// Linking number of `∂ filling`, skipping the solve when a filling is at hand.
    pub fn linking_of_boundary(&self, filling: &ChainZ2) -> Result<u8> {
        if filling.dim() != self.cocycle.dim() {
            return Err(Error::DimensionMismatch { expected: self.cocycle.dim(), found: filling.dim() });
        }
        pair(&self.cocycle, filling)
    }
}

/// Linking number mod 2 of the cycle `f` in `X²` with the diagonal.
pub fn linking_number_mod2(x: &SimplicialComplex, f: &ChainZ2) -> Result<u8> {
    if !f.is_cycle() {
        return Err(Error::NotACycle(f.boundary().len()));
    }
    diagonal_dual_cocycle(x, f.dim() + 1)?.linking(f)
}
