//! Majority dimension of digraphs.
//!
//! The dimension of a digraph is the least number of voters whose pairwise
//! majority relation reproduces it. This crate decides k-inducibility through
//! a CNF encoding solved by an external DIMACS solver, short-circuits the
//! polynomial cases, enumerates unlabeled tournaments, samples profiles from
//! standard cultures and compiles CNF formulas into hardness gadgets together
//! with constant-size witness profiles.

pub mod blocks;
pub mod bounds;
pub mod census;
pub mod cnf;
pub mod cultures;
pub mod dimension;
pub mod encoding;
pub mod error;
pub mod gadgets;
pub mod graph;
pub mod preflib;
pub mod profile;
pub mod solver;
pub mod tournament;
pub mod transforms;

pub use error::{Error, Result};
pub use graph::{Digraph, WeightedDigraph};
pub use profile::{LinearOrder, Profile};
