//! Target graphs (loops allowed), trees, and the constructions on them.

mod iso;
mod target;
mod tree;

pub use iso::{
    degree_loop_colors, find_isomorphism, is_isomorphic, refine_colors, DEFAULT_ISO_LIMIT,
};
pub(crate) use iso::IsoSearch;
pub(crate) use target::{check_permutation, cluster_owner};
pub use target::{parse_graph, TargetGraph};
pub use tree::Tree;
