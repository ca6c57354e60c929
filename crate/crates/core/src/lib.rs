//! Combinatorial disjunctive constraints: junction trees, biclique covers of
//! conflict graphs, and small ideal MIP formulations built from them.

pub mod cdc;
pub mod cli;
pub mod cover;
pub mod error;
pub mod formulate;
pub mod geom;
pub mod jtree;
pub mod oracle;
pub mod random;
pub mod rational;
pub mod sosk;
pub mod transform;

pub use cdc::{ConflictGraph, Index, IndexSet, IndexSetFamily};
pub use cover::{heuristic_cover, verify_cover, Biclique, BicliqueCover};
pub use error::{Error, Result};
pub use formulate::{write_lp, LinearFormulation};
pub use jtree::{admits_junction_tree, is_junction_tree, CandidateTree};
pub use transform::{build_equivalent_family, TransformResult};
