//! Finite truncations of inverse systems of GF(2) spaces, their maps, and the homology
//! systems of diagonal filtrations. Every verdict is stamped with the truncation depth.

mod homology;
mod system;

pub use homology::{pro_homology_of_filtration, ProHomology};
pub use system::{
    is_pro_trivial, maps_equivalent, stable_image, system_map_violations, validate_system, InverseSystemGF2,
    MapEquivalence, ProTriviality, StableImage, SystemMap, Verdict,
};
