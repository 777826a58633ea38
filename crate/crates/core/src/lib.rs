//! Delay-constrained relay node placement.
//!
//! Given sensors, candidate relay locations and a sink on the plane, pick
//! as few candidates as possible so that every sensor reaches the sink in
//! at most `delta` hops. Links between two relay-class nodes (relays or the
//! sink) reach `R`; any link touching a sensor reaches only `r`.
//!
//! Solvers:
//! - [`sca::sca_solve`]: level-wise greedy set covering followed by pruning.
//! - [`sptirp::sptirp_solve`]: shortest-path-tree baseline with the same pruning.
//! - [`oracle::oracle_solve`]: exhaustive search for small candidate sets.
//!
//! [`bench`] generates seeded instances and compares the heuristics in batch.

pub mod bench;
pub mod error;
pub mod hops;
pub mod model;
pub mod oracle;
pub mod sca;
pub mod solution;
pub mod sptirp;

pub use error::{BenchError, HopError, ModelError, OracleError, ScaError, SolveError};
pub use hops::{HopTable, SpTree, UNREACHABLE};
pub use model::{
    build_graph, parse_instance, serialize_instance, Instance, NodeId, NodeKind, Point, TopologyGraph, SINK,
};
pub use oracle::{OracleOutcome, OracleResult};
pub use sca::sca_solve;
pub use solution::{Algorithm, Outcome, Solution, SolutionFile};
pub use sptirp::sptirp_solve;
