//! Deleted products, diagonal-complement filtrations and the Van Kampen obstruction.

mod filtration;
mod grid;
mod vankampen;

pub use filtration::{diagonal_complement, diagonal_distances, diagonal_filtration, DiagonalFiltration, FiltrationLevel};
pub(crate) use filtration::complement_from;
pub use grid::grid_window;
pub use vankampen::{vankampen_obstruction, VanKampenResult, VanKampenWitness};

use crate::complex::{for_each_product_facet, Simplex, SimplicialComplex, Vertex};
use crate::equivariant::{check_involution, Involution};

/// `K̃`: the union of the staircase triangulations of `σ × τ` over disjoint simplex
/// pairs, with the factor swap.
#[derive(Clone, Debug)]
pub struct DeletedProduct {
    pub complex: SimplicialComplex,
    pub swap: Involution,
    /// Identifier space of the factor; product vertex `(u, w)` is `u * n + w`.
    pub n: u32,
}

impl DeletedProduct {
    /// The smallest cell `σ × τ` carrying a simplex.
    pub fn source_pair(&self, s: &Simplex) -> (Simplex, Simplex) {
        (
            Simplex::spanned_by(s.vertices().iter().map(|&v| v / self.n)),
            Simplex::spanned_by(s.vertices().iter().map(|&v| v % self.n)),
        )
    }
}

/// Swap of product identifiers over a factor with identifier space `n`.
pub fn swap_perm(n: u32) -> Vec<Vertex> {
    (0..n * n).map(|v| (v % n) * n + v / n).collect()
}

pub fn deleted_product(k: &SimplicialComplex) -> DeletedProduct {
    let n = k.id_space() as u32;
    let simplices: Vec<&Simplex> = k.all_simplices().collect();
    let mut gens = Vec::new();
    for s in &simplices {
        for t in &simplices {
            if s.meets(t) {
                continue;
            }
            // subcomplexes share the identifier table, so product ids are u * n + w
            let a = k.subcomplex([(*s).clone()]).expect("face of k");
            let b = k.subcomplex([(*t).clone()]).expect("face of k");
            for_each_product_facet(&a, &b, |f| gens.push(f));
        }
    }
    let labels = crate::complex::product_labels(k, k);
    let complex = SimplicialComplex::from_generators(labels, None, gens, None);
    let swap = check_involution(&complex, &swap_perm(n)).expect("disjoint pairs are never swap-fixed");
    DeletedProduct { complex, swap, n }
}
