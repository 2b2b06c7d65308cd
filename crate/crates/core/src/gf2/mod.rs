//! Mod-2 chains, cochains and homology.

mod bitmatrix;
mod chain;
mod homology;
pub(crate) mod reduce;
mod solve;

pub use bitmatrix::BitMatrix;
pub use chain::{boundary_columns, boundary_matrix, coboundary, coboundary_columns, cup_product, pair, ChainZ2, CochainZ2};
pub use homology::{
    betti_numbers, component_count, homology, homology_basis, induced_between, induced_map_on_homology, HomologyBasis,
    HomologySummary, InducedMap,
};
pub use reduce::Reduction;
pub use solve::{is_boundary, solve_bounding_chain};
