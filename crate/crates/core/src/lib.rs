//! Combinatorial embedding obstructions: simplicial deleted products, Z2-equivariant
//! mod-2 homology and degree, essential Z2-cycles and their constructions, and the
//! finite-depth pro-homology of diagonal-complement filtrations.

pub mod cli;
pub mod complex;
pub mod cycles;
pub mod deleted;
pub mod equivariant;
pub mod error;
pub mod gf2;
pub mod pro;
pub mod rational;

pub use error::{Error, Result};
