//! Top-sets, pivots and antennas, in-forests and chandeliers, hole special
//! vertices, star cutsets, the full-in-star-cutset decomposition and the
//! full-star-cutset filter.

mod cutset;
mod decompose;
mod filter;
mod forest;
mod hole;
mod topset;

pub use cutset::{
    full_in_star_cutsets, full_star_cutsets, star_cutsets, StarCutset, StarCutsetSearch, DEFAULT_STAR_BOUND,
};
pub use decompose::{decompose, DecompositionNode};
pub use filter::{chalopin_filter, is_luxury_chandelier, FilterOutcome};
pub use forest::{chandelier_witness, is_in_forest, is_in_star, is_in_tree, is_oriented_chandelier, ChandelierWitness};
pub use hole::{analyze_hole, HoleAnalysis, HoleOrientation};
pub use topset::{check_dichotomy, check_top_ancestor_dichotomy, top_set, TopSetReport};

pub(crate) use hole::hole_orientation_idx;
