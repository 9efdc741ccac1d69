//! Exact counting of graph homomorphisms (H-colorings) from trees into
//! small looped target graphs, organised around automorphic similarity
//! classes of the target.
//!
//! The main pieces:
//!
//! * [`graph`]: targets with loops, trees, and target constructions
//!   (unions, tensor products, blow-ups, looped dominating vertices).
//! * [`automorphy`]: automorphism orbits, similarity matrices and the
//!   increasing-columns test.
//! * [`homcount`]: the class-based tree walk, a brute-force oracle, path
//!   pair tables, the KC-move difference identity and weighted partition
//!   functions.
//! * [`trees`]: non-isomorphic tree enumeration, canonical codes and KC
//!   moves.
//! * [`extremal`]: minimizer sweeps, Hoffman-London verdicts and
//!   certificates, and the standard target families.

pub mod automorphy;
pub mod error;
pub mod exec;
pub mod extremal;
pub mod graph;
pub mod homcount;
pub mod trees;

pub use error::{Error, Result};
pub use exec::Exec;
pub use graph::{parse_graph, TargetGraph, Tree};
